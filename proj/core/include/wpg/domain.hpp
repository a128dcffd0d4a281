#pragma once

#include <cstddef>
#include <vector>

#include "wpg/moebius.hpp"
#include "wpg/surface.hpp"
#include "wpg/word.hpp"

namespace wpg {

inline constexpr double kCuspTruncation = 10.0;

struct DomainVertex {
    cplx klein;          // Klein-model coordinate centred at the base point
    bool ideal = false;  // on the circle at infinity
    cplx z;              // finite vertex in H (unused when ideal)
    BoundaryPoint boundary;  // ideal vertex in H (unused when finite)
    double angle = 0.0;      // interior angle; 0 at ideal vertices
    int cycle = -1;          // vertex cycle index
};

// Side i runs from vertex i to vertex i+1 (counterclockwise). It lies on the bisector of
// base and element * base, and element maps the partner side onto it.
struct DomainSide {
    GroupWord word;
    MoebiusMap element;
    int partner = -1;
    double length = 0.0;  // infinite when a vertex is ideal
};

// Horocyclic chart at an ideal vertex: normalizer maps the cusp coordinate zeta to H, sends
// infinity to the vertex and conjugates the primitive parabolic to zeta -> zeta + 1. In that
// chart the two sides at the vertex are the vertical lines Re zeta = x_left, x_right.
struct CuspWedge {
    std::size_t vertex = 0;
    MoebiusMap normalizer;
    double x_left = 0.0, x_right = 0.0;
    double width() const { return x_right - x_left; }
};

struct VertexCycle {
    std::vector<std::size_t> vertices;
    MoebiusMap product;  // identity for finite cycles, the primitive parabolic for ideal ones
    double angle_sum = 0.0;
    bool ideal = false;
};

struct DirichletOptions {
    int depth = -1;                  // <= 0 picks default_domain_depth
    bool check_convergence = true;   // rebuild at depth + 2 and compare
    double cusp_height = kCuspTruncation;
};

int default_domain_depth(const MarkedSurface& s);

class DirichletDomain {
public:
    cplx base() const { return base_; }
    int depth() const { return depth_; }
    const std::vector<DomainVertex>& vertices() const { return vertices_; }
    const std::vector<DomainSide>& sides() const { return sides_; }
    const std::vector<VertexCycle>& cycles() const { return cycles_; }
    const std::vector<CuspWedge>& cusps() const { return cusps_; }
    double cusp_height() const { return cusp_height_; }

    // Exact area from the angle sum: (n - 2) pi - sum of interior angles.
    double area() const { return area_; }
    // Area above the truncating horocycles: sum of wedge widths / Y.
    double cusp_tail_area() const;
    // Disk-model Hausdorff distance between the vertex sets at depth and depth + 2
    // (negative when the check was skipped).
    double depth_change() const { return depth_change_; }
    bool converged() const { return depth_change_ >= 0.0 && depth_change_ <= 1e-8; }

    // Closed-domain membership with slack tol in the Klein half-plane tests.
    bool contains(cplx z, double tol = 1e-12) const;
    // Group element g with g z in the domain, found by repeatedly crossing the side whose
    // translate of the base point is closest to z.
    MoebiusMap reduce(cplx z) const;
    // Disk model centred at the base point and its inverse.
    cplx to_disk(cplx z) const;
    cplx from_disk(cplx w) const;

    friend DirichletDomain dirichlet_domain(const MarkedSurface&, const HalfPlanePoint&, DirichletOptions);

private:
    cplx base_;
    int depth_ = 0;
    std::vector<DomainVertex> vertices_;
    std::vector<DomainSide> sides_;
    std::vector<VertexCycle> cycles_;
    std::vector<CuspWedge> cusps_;
    std::vector<cplx> side_points_;  // disk image of element * base, one per side
    double cusp_height_ = kCuspTruncation;
    double area_ = 0.0;
    double depth_change_ = -1.0;
};

// Dirichlet domain {z : d(z, base) <= d(z, g base)} over group elements of word length <= depth.
// Throws DepthTooSmall when the polygon is not closed or its area misses 2 pi |chi| by more
// than 1e-4, and DomainNotConverged when sides fail to pair up.
DirichletDomain dirichlet_domain(const MarkedSurface& s, const HalfPlanePoint& base, DirichletOptions opt = {});

// A generic base point near the crossing of the first two generator axes.
HalfPlanePoint default_base_point(const MarkedSurface& s);

}  // namespace wpg
