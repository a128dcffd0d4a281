#pragma once

#include <stdexcept>
#include <string>

namespace wpg {

// Every failure mode the library reports. Callers switch on kind() rather than
// parsing messages.
enum class ErrorKind {
    NotHyperbolic,
    NonPositiveSide,
    InvalidLength,
    UnsupportedTopology,
    DepthTooSmall,
    DomainNotConverged,
    InvalidWord,
    NotSimpleCurve,
    NotHyperbolicWord,
    HexagonDegenerate,
    FieldSingularOnPath,
    SeedPolesOnBoundary,
    NotPrimitive,
    BoundTooSmall,
    StepTooLarge,
    LeftHalfPlane,
    FDUnstable,
    NotConverged,
    SeedNotDecaying,
    SingularGram,
    CollarTooWide,
    BumpNotCompact,
    QuadratureNotConverged,
    InconsistentConventions,
    InvalidConfig,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace wpg
