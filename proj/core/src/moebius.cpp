#include "wpg/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"

namespace wpg {

const char* to_string(IsometryClass c) noexcept {
    switch (c) {
        case IsometryClass::Identity: return "identity";
        case IsometryClass::Elliptic: return "elliptic";
        case IsometryClass::Parabolic: return "parabolic";
        case IsometryClass::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw Error(ErrorKind::LeftHalfPlane, "point is not in the upper half-plane");
}

bool approx_equal(const BoundaryPoint& p, const BoundaryPoint& q, double tol) {
    if (p.is_infinite() || q.is_infinite()) return p.is_infinite() && q.is_infinite();
    return std::abs(p.x - q.x) <= tol * std::max(1.0, std::abs(p.x));
}

OrientedGeodesicH::OrientedGeodesicH(BoundaryPoint repelling, BoundaryPoint attracting)
    : rep_(repelling), att_(attracting) {
    if (approx_equal(rep_, att_, 0.0))
        throw Error(ErrorKind::InvalidLength, "geodesic endpoints coincide");
}

MoebiusMap standard_frame(const OrientedGeodesicH& g) {
    const auto& p = g.repelling();
    const auto& q = g.attracting();
    if (q.is_infinite()) return {1.0, p.x, 0.0, 1.0};
    if (p.is_infinite()) return {q.x, -1.0, 1.0, 0.0};
    const double k = q.x > p.x ? 1.0 : -1.0;
    return {k * q.x, p.x, k, 1.0};
}

cplx OrientedGeodesicH::point_at(double s) const {
    return standard_frame(*this).apply(cplx(0.0, std::exp(s)));
}

cplx OrientedGeodesicH::unit_tangent(cplx z) const {
    const MoebiusMap k = standard_frame(*this);
    const cplx w = k.inverse().apply(z);
    const cplx t = k.derivative(w) * cplx(0.0, 1.0);
    return t / std::abs(t);
}

double OrientedGeodesicH::distance_to(cplx z) const {
    const cplx w = standard_frame(*this).inverse().apply(z);
    return std::asinh(std::abs(w.real()) / w.imag());
}

MoebiusMap::MoebiusMap(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det))
        throw Error(ErrorKind::InvalidLength, "Moebius matrix must have positive determinant");
    const double s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
    c_ = c * s;
    d_ = d * s;
    if (a_ < 0.0 || (a_ == 0.0 && b_ < 0.0)) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

MoebiusMap MoebiusMap::exact(double a, double b, double c, double d) {
    if (!(std::abs(a * d - b * c - 1.0) <= 1e-12))
        throw Error(ErrorKind::InvalidLength, "matrix determinant differs from 1");
    if (a < 0.0 || (a == 0.0 && b < 0.0))
        throw Error(ErrorKind::InvalidLength, "matrix is not in canonical sign");
    MoebiusMap m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    return m;
}

MoebiusMap MoebiusMap::dilation(double lambda) {
    const double r = std::sqrt(lambda);
    return {r, 0.0, 0.0, 1.0 / r};
}

cplx MoebiusMap::apply(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

BoundaryPoint MoebiusMap::apply(const BoundaryPoint& p) const {
    if (p.is_infinite()) {
        if (c_ == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::finite(a_ / c_);
    }
    const double den = c_ * p.x + d_;
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite((a_ * p.x + b_) / den);
}

cplx MoebiusMap::derivative(cplx z) const {
    const cplx den = c_ * z + d_;
    return 1.0 / (den * den);
}

MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) {
    MoebiusMap r;
    r.a_ = m1.a_ * m2.a_ + m1.b_ * m2.c_;
    r.b_ = m1.a_ * m2.b_ + m1.b_ * m2.d_;
    r.c_ = m1.c_ * m2.a_ + m1.d_ * m2.c_;
    r.d_ = m1.c_ * m2.b_ + m1.d_ * m2.d_;
    // Rescale to det 1 only while the determinant is computed accurately; for large
    // entries ad - bc cancels and the product of det-1 factors is the better value.
    const double scale = std::abs(r.a_ * r.d_) + std::abs(r.b_ * r.c_);
    const double det = r.a_ * r.d_ - r.b_ * r.c_;
    if (scale < 1e6 && det > 0.0) {
        const double s = 1.0 / std::sqrt(det);
        r.a_ *= s;
        r.b_ *= s;
        r.c_ *= s;
        r.d_ *= s;
    }
    if (r.a_ < 0.0 || (r.a_ == 0.0 && r.b_ < 0.0)) {
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        r.c_ = -r.c_;
        r.d_ = -r.d_;
    }
    return r;
}

bool MoebiusMap::approx_equal(const MoebiusMap& o, double tol) const {
    const double dp = std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                                std::abs(d_ - o.d_)});
    const double dm = std::max({std::abs(a_ + o.a_), std::abs(b_ + o.b_), std::abs(c_ + o.c_),
                                std::abs(d_ + o.d_)});
    return std::min(dp, dm) <= tol;
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) { return m1 * m2; }

MoebiusMap power(const MoebiusMap& m, int n) {
    MoebiusMap base = n < 0 ? m.inverse() : m;
    unsigned k = static_cast<unsigned>(n < 0 ? -n : n);
    MoebiusMap result;
    while (k) {
        if (k & 1u) result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

double commutator_trace(const MoebiusMap& x, const MoebiusMap& y) {
    // Raw SL(2,R) products: the commutator does not depend on the sign of either lift.
    struct M { double a, b, c, d; };
    auto mul = [](M p, M q) {
        return M{p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c,
                 p.c * q.b + p.d * q.d};
    };
    const M X{x.a(), x.b(), x.c(), x.d()}, Y{y.a(), y.b(), y.c(), y.d()};
    const M Xi{x.d(), -x.b(), -x.c(), x.a()}, Yi{y.d(), -y.b(), -y.c(), y.a()};
    const M r = mul(mul(X, Y), mul(Xi, Yi));
    return r.a + r.d;
}

IsometryClass classify(const MoebiusMap& m) {
    const double t = std::abs(m.trace());
    if (t > 2.0 + kTraceTieTol) return IsometryClass::Hyperbolic;
    if (t < 2.0 - kTraceTieTol) return IsometryClass::Elliptic;
    if (m.approx_equal(MoebiusMap::identity(), kTraceTieTol)) return IsometryClass::Identity;
    return IsometryClass::Parabolic;
}

static void require_hyperbolic(const MoebiusMap& m) {
    if (classify(m) != IsometryClass::Hyperbolic)
        throw Error(ErrorKind::NotHyperbolic, "map with trace " + std::to_string(m.trace()));
}

double translation_length(const MoebiusMap& m) {
    require_hyperbolic(m);
    return 2.0 * std::acosh(std::abs(m.trace()) / 2.0);
}

OrientedGeodesicH axis(const MoebiusMap& m) {
    require_hyperbolic(m);
    const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double tr = a + d;
    if (c == 0.0) {
        // z -> (a z + b)/d fixes infinity, attracting when |a| > |d|.
        const auto fin = BoundaryPoint::finite(b / (d - a));
        if (std::abs(a) > std::abs(d)) return {fin, BoundaryPoint::infinity()};
        return {BoundaryPoint::infinity(), fin};
    }
    // Roots of c z^2 + (d - a) z - b = 0, cancellation-free form.
    const double disc = std::sqrt(tr * tr - 4.0);
    const double dm = d - a;
    const double q = -0.5 * (dm + (dm >= 0.0 ? disc : -disc));
    const double r1 = q / c;
    const double r2 = -b / q;
    // The attracting fixed point has |m'(r)| = 1/(c r + d)^2 < 1.
    if (std::abs(c * r1 + d) > std::abs(c * r2 + d))
        return {BoundaryPoint::finite(r2), BoundaryPoint::finite(r1)};
    return {BoundaryPoint::finite(r1), BoundaryPoint::finite(r2)};
}

MoebiusMap translation_along(const OrientedGeodesicH& g, double d) {
    const MoebiusMap k = standard_frame(g);
    return k * MoebiusMap::dilation(std::exp(d)) * k.inverse();
}

MoebiusMap translate_along_axis(const MoebiusMap& m, double d) {
    return translation_along(axis(m), d);
}

double hyperbolic_distance(cplx z, cplx w) {
    return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

}  // namespace wpg
