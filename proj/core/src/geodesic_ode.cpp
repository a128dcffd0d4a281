#include "wpg/geodesic_ode.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"

namespace wpg {

UnitSpeedPath UnitSpeedPath::reversed() const {
    UnitSpeedPath r;
    r.h = h;
    r.drift = drift;
    r.t = t;
    r.u.assign(u.rbegin(), u.rend());
    r.v.reserve(v.size());
    for (auto it = v.rbegin(); it != v.rend(); ++it) r.v.push_back(-*it);
    return r;
}

UnitSpeedPath integrate_geodesic_ode(const HMetric& metric, const HalfPlanePoint& u0, cplx v0, double T, double h) {
    if (!(T > 0.0) || !(h > 0.0)) throw Error(ErrorKind::InvalidLength, "integration length and step must be positive");
    if (std::abs(metric.speed(u0.z(), v0) - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidLength, "initial velocity is not unit speed");
    std::size_t n = static_cast<std::size_t>(std::ceil(T / h));
    n = std::max<std::size_t>(4, (n + 3) / 4 * 4);
    const double dt = T / static_cast<double>(n);

    // State (u, v); acceleration from the Christoffel symbol of the metric.
    auto accel = [&](cplx u, cplx v) { return -metric.christoffel(u) * v * v; };
    UnitSpeedPath p;
    p.h = dt;
    p.t.reserve(n + 1);
    p.u.reserve(n + 1);
    p.v.reserve(n + 1);
    cplx u = u0.z(), v = v0;
    p.t.push_back(0.0);
    p.u.push_back(u);
    p.v.push_back(v);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx k1u = v, k1v = accel(u, v);
        const cplx k2u = v + 0.5 * dt * k1v, k2v = accel(u + 0.5 * dt * k1u, k2u);
        const cplx k3u = v + 0.5 * dt * k2v, k3v = accel(u + 0.5 * dt * k2u, k3u);
        const cplx k4u = v + dt * k3v, k4v = accel(u + dt * k3u, k4u);
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(u.imag() > 0.0)) throw Error(ErrorKind::LeftHalfPlane, "geodesic left the upper half-plane");
        if (std::abs(metric.speed(u, v) - 1.0) > 1e-6)
            throw Error(ErrorKind::StepTooLarge, "speed drift exceeds 1e-6; reduce the step");
        p.t.push_back(static_cast<double>(k + 1) * dt);
        p.u.push_back(u);
        p.v.push_back(v);
    }
    return p;
}

UnitSpeedPath closed_geodesic_path(const GeodesicClass& g, double h) {
    // Centred on the top of the axis, so the path stays as high as possible and long classes
    // do not lose digits near the real line.
    const cplx z0 = g.axis.point_at(-0.5 * g.length);
    const cplx v0 = g.axis.unit_tangent(z0) * z0.imag();
    auto p = integrate_geodesic_ode(HMetric{}, HalfPlanePoint(z0), v0, g.length, h);
    p.drift = hyperbolic_distance(p.u.back(), g.axis.point_at(0.5 * g.length));
    return p;
}

LineIntegral tensor_line_integral(const UnitSpeedPath& path, const std::function<cplx(cplx)>& field, TensorKind kind) {
    const std::size_t n = path.u.size() - 1;
    if (path.u.size() < 5 || n % 4 != 0) throw Error(ErrorKind::InvalidLength, "path needs a multiple of 4 intervals");
    std::vector<cplx> f(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const cplx val = field(path.u[k]);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw Error(ErrorKind::FieldSingularOnPath, "field is not finite on the path");
        const cplx v = path.v[k];
        switch (kind) {
            case TensorKind::Scalar: f[k] = val; break;
            case TensorKind::QuadDiff: f[k] = val * v * v; break;
            case TensorKind::BeltramiLowered:
                f[k] = HMetric::kahler_density(path.u[k]) * val * std::conj(v) * std::conj(v);
                break;
        }
    }
    auto simpson = [&](std::size_t stride) {
        const double h = path.h * static_cast<double>(stride);
        cplx s = f[0] + f[n];
        for (std::size_t k = stride, j = 1; k < n; k += stride, ++j) s += (j % 2 ? 4.0 : 2.0) * f[k];
        return s * (h / 3.0);
    };
    // Simpson converges spectrally on a periodic integrand, so the step comparison only sees
    // rounding; the RK4 trajectory error is bounded through the endpoint drift instead.
    double fmax = 0.0;
    for (const cplx& x : f) fmax = std::max(fmax, std::abs(x));
    const cplx fine = simpson(1), coarse = simpson(2);
    return {fine, std::abs(fine - coarse) + path.drift * path.length() * fmax};
}

}  // namespace wpg
