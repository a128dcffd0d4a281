#pragma once

#include <string>
#include <vector>

#include "wpg/moebius.hpp"
#include "wpg/surface.hpp"
#include "wpg/word.hpp"

namespace wpg {

// Closed geodesic of a marked surface, named by the canonical word of its
// unoriented conjugacy class.
struct GeodesicClass {
    GroupWord word;  // canonical representative
    MoebiusMap matrix;
    double trace = 0.0;
    double length = 0.0;
    OrientedGeodesicH axis{BoundaryPoint::finite(0.0), BoundaryPoint::infinity()};
    bool primitive = true;
    bool simple = false;  // true only for curves marked simple on the surface
};

GeodesicClass geodesic_class(const MarkedSurface& s, const GroupWord& w);
GeodesicClass geodesic_class(const MarkedSurface& s, const std::string& word);

// Oriented representative of a marked simple curve (its stored word, not the canonical one).
GeodesicClass marked_curve_class(const MarkedSurface& s, int curve_index);

struct EnumerateOptions {
    bool include_non_primitive = false;
};

// One class per cyclic word of length <= max_len (modulo rotation and inversion),
// hyperbolic only, sorted by length then word.
std::vector<GeodesicClass> enumerate_classes(const MarkedSurface& s, int max_len,
                                             EnumerateOptions opt = {});

// CSV with header word,trace,length,primitive,simple.
std::string spectrum_csv(const MarkedSurface& s, const std::vector<GeodesicClass>& classes);

MarkedSurface twist_deform(const MarkedSurface& s, const GeodesicClass& curve, double dtau);

}  // namespace wpg

namespace wpg {

// Compares the distinct closed-geodesic lengths of two surfaces, enumerated to
// word length max_len, below a cutoff where both lists have stopped changing:
// the cutoff is a fraction of the first length that appears only when the
// enumeration grows from max_len - 2 to max_len. Requires max_len >= 3.
struct SpectrumComparison {
    double cutoff = 0.0;
    std::vector<double> lengths_a, lengths_b;
    double max_abs_diff = 0.0;
    bool match = false;
};

SpectrumComparison compare_length_spectra(const MarkedSurface& x, const MarkedSurface& y, int max_len,
                                          double tol, double cutoff_fraction = 0.9);

}  // namespace wpg
