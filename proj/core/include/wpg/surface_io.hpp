#pragma once

#include <string>

#include "wpg/surface.hpp"

namespace wpg {

// {"topology", "fn": {"lengths", "twists"}, "generators": [[a,b,c,d], ...], "marking": [words]}.
// Doubles are written in shortest round-trip form, so reading back is bit-exact.
std::string surface_to_json(const MarkedSurface& s);
MarkedSurface surface_from_json(const std::string& text);

}  // namespace wpg
