#pragma once

#include <array>

namespace wpg {

// Right-angled hexagon with alternate sides (a1, a2, a3). Returns (b1, b2, b3)
// where b_i is the side opposite a_i; the boundary reads a1, b3, a2, b1, a3, b2.
std::array<double, 3> hexagon_alternate_sides(double a1, double a2, double a3);

}  // namespace wpg
