#pragma once

#include <functional>
#include <vector>

#include "wpg/domain.hpp"

namespace wpg {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

struct QuadNode {
    cplx z;
    double weight;  // with respect to hyperbolic area
};

// Horocycle piece where the truncated domain stops: Im zeta = height for zeta in
// [x_left, x_right] of a cusp chart.
struct CuspCut {
    MoebiusMap normalizer;
    double x_left, x_right, height;
};

// Product rule over the Dirichlet domain truncated at the cusp height. The domain is cut
// into triangles from the base point: compact ones use geodesic polar coordinates about
// the base; those with an ideal vertex use the cusp chart, where they become vertical
// strips above a geodesic arc, with y graded geometrically up to the truncation height.
class DomainQuadrature {
public:
    explicit DomainQuadrature(const DirichletDomain& D, int order = 12);

    int order() const { return order_; }
    const std::vector<QuadNode>& nodes() const { return nodes_; }
    const std::vector<CuspCut>& cuts() const { return cuts_; }
    // Quadrature area plus the exact tail above the cuts.
    double area() const;

private:
    int order_;
    std::vector<QuadNode> nodes_;
    std::vector<CuspCut> cuts_;
};

struct QuadratureValue {
    cplx value;
    double error_estimate = 0.0;  // |Q(order) - Q(order + 4)|
    double tail_bound = 0.0;      // max |F| on the cuts times their area above the cut
};

// Sum of F over the nodes with the deterministic node order.
cplx integrate(const DomainQuadrature& q, const std::function<cplx(cplx)>& F);
// Bound on the integral of |F| above the cusp cuts, assuming |F| does not grow there.
double cusp_tail_bound(const DomainQuadrature& q, const std::function<cplx(cplx)>& F);

// Integral of F against hyperbolic area at two orders; throws QuadratureNotConverged
// when they differ by more than tol * max(1, |value|).
QuadratureValue integrate_hyperbolic(const DirichletDomain& D, const std::function<cplx(cplx)>& F, int order = 12,
                                     double tol = 1e-8);

}  // namespace wpg
