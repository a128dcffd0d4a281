#include "wpg/error.hpp"

namespace wpg {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHyperbolic: return "NotHyperbolic";
        case ErrorKind::NonPositiveSide: return "NonPositiveSide";
        case ErrorKind::InvalidLength: return "InvalidLength";
        case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
        case ErrorKind::DepthTooSmall: return "DepthTooSmall";
        case ErrorKind::DomainNotConverged: return "DomainNotConverged";
        case ErrorKind::InvalidWord: return "InvalidWord";
        case ErrorKind::NotSimpleCurve: return "NotSimpleCurve";
        case ErrorKind::NotHyperbolicWord: return "NotHyperbolicWord";
        case ErrorKind::HexagonDegenerate: return "HexagonDegenerate";
        case ErrorKind::FieldSingularOnPath: return "FieldSingularOnPath";
        case ErrorKind::SeedPolesOnBoundary: return "SeedPolesOnBoundary";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::BoundTooSmall: return "BoundTooSmall";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::LeftHalfPlane: return "LeftHalfPlane";
        case ErrorKind::FDUnstable: return "FDUnstable";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::SeedNotDecaying: return "SeedNotDecaying";
        case ErrorKind::SingularGram: return "SingularGram";
        case ErrorKind::CollarTooWide: return "CollarTooWide";
        case ErrorKind::BumpNotCompact: return "BumpNotCompact";
        case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorKind::InconsistentConventions: return "InconsistentConventions";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace wpg
