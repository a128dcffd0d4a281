#pragma once

#include <functional>
#include <vector>

#include "wpg/geodesic.hpp"
#include "wpg/metric.hpp"
#include "wpg/moebius.hpp"

namespace wpg {

// Samples of a unit-speed path u(t), t in [0, L], on a uniform grid whose
// interval count is a multiple of 4 (Simpson at h and 2h).
struct UnitSpeedPath {
    std::vector<double> t;
    std::vector<cplx> u;
    std::vector<cplx> v;  // du/dt
    double h = 0.0;
    double drift = 0.0;  // hyperbolic distance of the endpoint from its exact position, 0 if unknown

    double length() const { return t.empty() ? 0.0 : t.back(); }
    UnitSpeedPath reversed() const;
};

// RK4 for u'' + Gamma(u) u'^2 = 0 with Gamma = i / Im u. The requested step is shrunk so that
// T / h is a multiple of 4. Throws StepTooLarge when the Riemannian speed drifts by more than
// 1e-6 and LeftHalfPlane if the path leaves H.
UnitSpeedPath integrate_geodesic_ode(const HMetric& metric, const HalfPlanePoint& u0, cplx v0, double T, double h);

// One period of the closed geodesic, symmetric about the top of the axis: T = length.
UnitSpeedPath closed_geodesic_path(const GeodesicClass& g, double h = 1e-3);

enum class TensorKind { Scalar, QuadDiff, BeltramiLowered };

struct LineIntegral {
    cplx value;
    double error_estimate;  // |S(h) - S(2h)| + drift * L * max|f|
};

// Scalar: f(u) dt. QuadDiff: phi(u) u'^2 dt. BeltramiLowered: g(u) mu(u) conj(u')^2 dt.
LineIntegral tensor_line_integral(const UnitSpeedPath& path, const std::function<cplx(cplx)>& field, TensorKind kind);

}  // namespace wpg
