#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wpg/geodesic.hpp"
#include "wpg/quadrature.hpp"
#include "wpg/theta.hpp"

namespace wpg {

enum class BumpFamily { Smooth, Quintic, Cosine };

const char* to_string(BumpFamily f) noexcept;
BumpFamily bump_family_from_string(const std::string& s);

// Monotone h with h = 0 for r <= lo and h = 1 for r >= hi; h' is supported in [lo, hi].
//   Smooth:  E(t) / (E(t) + E(1 - t)), E(t) = exp(-1/t)
//   Quintic: 6t^5 - 15t^4 + 10t^3
//   Cosine:  (1 - cos(pi t)) / 2
struct BumpProfile {
    BumpFamily family = BumpFamily::Smooth;
    double lo = 0.0, hi = 1.0;

    // Support [r e^-s, r e^s], symmetric in log r.
    static BumpProfile around(BumpFamily family, double r, double log_half_width);
    double h(double r) const;
    double dh(double r) const;
    // Throws BumpNotCompact unless 0 < lo < hi are finite.
    void validate() const;
};

// Conformal chart of the collar of a simple closed geodesic. With u = frame^-1 z the curve's
// axis is the imaginary axis and the curve acts by u -> e^l u; w = exp(2 pi i log u / l) sends
// the cyclic quotient to an annulus, the axis to |w| = r0 = exp(-pi^2 / l) and the points at
// distance width from it to |w| = r1 and r2.
struct CollarChart {
    GeodesicClass curve;
    MoebiusMap frame;
    double length = 0.0;
    double width = 0.0;  // hyperbolic half-width
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;

    cplx annulus_of(cplx z) const;  // z in H, any lift
    cplx point_of(cplx w) const;    // principal lift in H
    cplx point_derivative(cplx w) const;
    // Hyperbolic area density of the chart: dA_hyp = density(|w|) du dv.
    double density(double r) const;
};

// Half the distance from the curve's axis to the nearest other lift among words of length
// <= depth (domain depth by default): the widest collar that embeds.
double max_collar_width(const MarkedSurface& s, const GeodesicClass& g, int depth = -1);

// Throws NotSimpleCurve for a curve that is not marked simple, InvalidConfig for width <= 0
// and CollarTooWide when the collar would overlap itself.
CollarChart collar_chart(const MarkedSurface& s, const GeodesicClass& g, double width);

// Beltrami differential mu(z) dzbar/dz. Harmonic ones are conj(phi) / g with the Kaehler
// density g = 1 / (2 y^2); collar ones are the twist field of the curve,
//   mu_w = -(i / 2) w^2 h'(r) / (r rho),  rho = l / (2 pi),
// in the annulus chart, the derivative at t = 0 of w -> w exp(-i t h(r) / rho). The sign makes
// it the tangent of twist_deform with positive twist. Extended by zero.
class BeltramiDifferential {
public:
    enum class Kind { Harmonic, CollarTwist };

    static BeltramiDifferential harmonic(const QuadraticDifferential& phi);
    static BeltramiDifferential collar_twist(const CollarChart& chart, const BumpProfile& bump,
                                             const MarkedSurface& s, const DirichletDomain& D);

    Kind kind() const { return kind_; }
    cplx operator()(cplx z) const;

    // Harmonic kind only.
    const QuadraticDifferential& source() const;
    // Collar kind only.
    const CollarChart& chart() const;
    const BumpProfile& bump() const;
    // Value in the annulus coordinate; collar kind only.
    cplx annulus_value(cplx w) const;
    // Any kind: the chart representation mu(z(w)) conj(z'(w)) / z'(w).
    cplx in_chart(const CollarChart& c, cplx w) const;

private:
    struct CollarData;
    Kind kind_ = Kind::Harmonic;
    std::shared_ptr<const QuadraticDifferential> phi_;
    std::shared_ptr<const CollarData> collar_;
};

inline BeltramiDifferential harmonic_beltrami(const QuadraticDifferential& phi) {
    return BeltramiDifferential::harmonic(phi);
}
// BumpNotCompact unless the bump support lies strictly inside (r1, r2).
inline BeltramiDifferential collar_twist_beltrami(const CollarChart& chart, const BumpProfile& bump,
                                                  const MarkedSurface& s, const DirichletDomain& D) {
    return BeltramiDifferential::collar_twist(chart, bump, s, D);
}

// Product rule for collar-supported integrands: Gauss in r over the bump support, periodic
// trapezoid in the angle. The reported value doubles both counts; the difference from the
// undoubled rule is the error estimate.
struct AnnulusRule {
    int radial = 64;
    int angular = 256;
};

// int mu phi dA with dA = 2 dx dy. Harmonic mu integrates over the domain (order and order + 4);
// collar mu in its annulus chart. Throws QuadratureNotConverged when refinement moves the
// value by more than tol * max(1, |value|).
QuadratureValue area_pairing(const BeltramiDifferential& mu, const QuadraticDifferential& phi,
                             const DirichletDomain& D, int order = 12, double tol = 1e-8, AnnulusRule rule = {});

// <mu1, mu2> = int mu1 conj(mu2) g dA = int mu1 conj(mu2) dA_hyp.
QuadratureValue wp_inner(const BeltramiDifferential& mu1, const BeltramiDifferential& mu2, const DirichletDomain& D,
                         int order = 12, double tol = 1e-8, AnnulusRule rule = {});

struct HarmonicProjection {
    BeltramiDifferential mu;
    Eigen::VectorXcd coefficients;  // P(mu) = sum_k c_k conj(phi_k) / g
    double condition = 0.0;         // of the Gram matrix
};

// Solves sum_k c_k (conj(phi_k)/g, phi_j) = (mu, phi_j) for all j. SingularGram when the Gram
// condition number exceeds 1e8.
HarmonicProjection harmonic_projection(const BeltramiDifferential& mu, const std::vector<QuadraticDifferential>& basis,
                                       const DirichletDomain& D, int order = 12, AnnulusRule rule = {});

struct FieldGrid {
    double x0 = -1.0, x1 = 1.0, y0 = 0.5, y1 = 2.0;
    int nx = 41, ny = 31;
};

// CSV with header x,y,re_mu,im_mu,re_phi,im_phi on a uniform grid, row-major in y then x.
std::string field_csv(const BeltramiDifferential& mu, const QuadraticDifferential& phi, const FieldGrid& grid);

}  // namespace wpg
