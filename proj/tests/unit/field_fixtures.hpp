#pragma once

#include <map>

#include "wpg/theta.hpp"

namespace wpg::testing {

// Field contexts are expensive, so each surface is built once per test binary.
//   0: torus(2, 0)   1: torus(1.2, 0.5)   2: genus two (1.5, 2, 2.5; 0.2, 0, -0.4)
inline const FieldContext& context(int which) {
    static std::map<int, FieldContext> cache;
    auto it = cache.find(which);
    if (it != cache.end()) return it->second;
    MarkedSurface s = which == 0   ? build_punctured_torus(2.0, 0.0)
                      : which == 1 ? build_punctured_torus(1.2, 0.5)
                                   : build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}});
    return cache.emplace(which, make_field_context(s)).first->second;
}

inline const std::vector<QuadraticDifferential>& basis(int which) {
    static std::map<int, std::vector<QuadraticDifferential>> cache;
    auto it = cache.find(which);
    if (it != cache.end()) return it->second;
    return cache.emplace(which, theta_basis(context(which))).first->second;
}

}  // namespace wpg::testing
