#pragma once

#include <vector>

#include "wpg/geodesic.hpp"

namespace wpg {

struct IntersectionPoint {
    cplx point;        // on the axis of the first geodesic, within one period from its base point
    double position;   // arclength from the base point, in [0, length)
    double angle;      // counterclockwise angle from the first geodesic to the second, in (0, pi)
};

// Default search bound: word length 8 for rank-2 groups and 6 for genus two (the
// stability check runs at bound + 2).
int default_intersection_bound(const MarkedSurface& s);

// Transverse intersections of two closed geodesics on the surface, found by
// intersecting axis(g1) with translates of axis(g2) by group elements of word
// length <= bound. Throws BoundTooSmall if the count changes at bound + 2.
std::vector<IntersectionPoint> intersections(const MarkedSurface& s, const GeodesicClass& g1, const GeodesicClass& g2,
                                             int bound = -1);

// Sum of cos(angle) over the intersections: the twist derivative of the length of g2
// along g1 by the cosine formula.
double cosine_sum(const std::vector<IntersectionPoint>& pts);

struct FDResult {
    double value;           // Richardson extrapolation over h and h/2
    double error_estimate;  // |Richardson - D(h/2)| plus a rounding bound of order eps * l / h
    double step;
};

// d l_delta / d tau along the marked simple curve `twist` by centered differences.
// Default step 1e-4 * l_twist. Throws NotSimpleCurve or FDUnstable.
FDResult twist_length_derivative_fd(const MarkedSurface& s, const GroupWord& twist, const GeodesicClass& delta,
                                    double h_fd = -1.0);

}  // namespace wpg
