#pragma once

#include <complex>

namespace wpg {

using cplx = std::complex<double>;

inline constexpr double kTraceTieTol = 1e-10;

// Point of the upper half-plane. Construction rejects y <= 0.
class HalfPlanePoint {
public:
    HalfPlanePoint(double x, double y);
    explicit HalfPlanePoint(cplx z) : HalfPlanePoint(z.real(), z.imag()) {}

    double x() const { return x_; }
    double y() const { return y_; }
    cplx z() const { return {x_, y_}; }

private:
    double x_, y_;
};

// Point of the extended real line bounding H.
struct BoundaryPoint {
    enum class Kind { Finite, Infinity };
    Kind kind = Kind::Finite;
    double x = 0.0;

    static BoundaryPoint finite(double v) { return {Kind::Finite, v}; }
    static BoundaryPoint infinity() { return {Kind::Infinity, 0.0}; }
    bool is_infinite() const { return kind == Kind::Infinity; }
};

bool approx_equal(const BoundaryPoint& p, const BoundaryPoint& q, double tol);

// Geodesic of H oriented from the repelling to the attracting endpoint.
class OrientedGeodesicH {
public:
    OrientedGeodesicH(BoundaryPoint repelling, BoundaryPoint attracting);

    const BoundaryPoint& repelling() const { return rep_; }
    const BoundaryPoint& attracting() const { return att_; }
    OrientedGeodesicH reversed() const { return {att_, rep_}; }

    // Unit-speed (hyperbolic) point at signed arclength s from the base point.
    // The base point is the top of the semicircle, or x + i for a vertical line.
    cplx point_at(double s) const;
    // Unit tangent (Euclidean direction) of the orientation at a point on the geodesic.
    cplx unit_tangent(cplx z) const;
    // Hyperbolic distance of a point from the geodesic.
    double distance_to(cplx z) const;

private:
    BoundaryPoint rep_, att_;
};

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(IsometryClass c) noexcept;

// Element of PSL(2,R) stored as a determinant-one matrix with canonical sign.
class MoebiusMap {
public:
    MoebiusMap() = default;  // identity
    // Entries are rescaled by 1/sqrt(det); det must be positive.
    MoebiusMap(double a, double b, double c, double d);

    static MoebiusMap identity() { return {}; }
    // Stores the entries verbatim (no rescaling) after checking |det - 1| <= 1e-12 and the
    // canonical sign; used where bit-exact round trips matter.
    static MoebiusMap exact(double a, double b, double c, double d);
    static MoebiusMap translation(double t) { return {1.0, t, 0.0, 1.0}; }
    static MoebiusMap dilation(double lambda);  // z -> lambda z

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    double trace() const { return a_ + d_; }

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }
    cplx apply(cplx z) const;
    BoundaryPoint apply(const BoundaryPoint& p) const;
    // Complex derivative of z -> (az+b)/(cz+d).
    cplx derivative(cplx z) const;

    friend MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2);
    bool approx_equal(const MoebiusMap& other, double tol) const;

private:
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
MoebiusMap power(const MoebiusMap& m, int n);

// Trace of the commutator m1 m2 m1^-1 m2^-1 in SL(2,R); sign-independent of the lifts.
double commutator_trace(const MoebiusMap& m1, const MoebiusMap& m2);

IsometryClass classify(const MoebiusMap& m);
double translation_length(const MoebiusMap& m);
OrientedGeodesicH axis(const MoebiusMap& m);
// One-parameter subgroup through m: shares the axis, moves distance d toward
// the attracting end (d > 0) or the repelling end (d < 0).
MoebiusMap translate_along_axis(const MoebiusMap& m, double d);
// Translation along an oriented geodesic by signed distance d.
MoebiusMap translation_along(const OrientedGeodesicH& g, double d);
// Orientation-preserving map sending 0 -> repelling and infinity -> attracting endpoint of g,
// normalized so that i goes to the base point of g.
MoebiusMap standard_frame(const OrientedGeodesicH& g);

double hyperbolic_distance(cplx z, cplx w);

}  // namespace wpg
