#include "wpg/hexagon.hpp"

#include <cmath>

#include "wpg/error.hpp"

namespace wpg {

std::array<double, 3> hexagon_alternate_sides(double a1, double a2, double a3) {
    const std::array<double, 3> a{a1, a2, a3};
    for (double s : a)
        if (!(s > 0.0) || !std::isfinite(s))
            throw Error(ErrorKind::NonPositiveSide, "hexagon sides must be positive and finite");
    std::array<double, 3> b{};
    for (int i = 0; i < 3; ++i) {
        const double ai = a[i], aj = a[(i + 1) % 3], ak = a[(i + 2) % 3];
        const double ch = (std::cosh(aj) * std::cosh(ak) + std::cosh(ai)) / (std::sinh(aj) * std::sinh(ak));
        b[i] = std::acosh(ch);
    }
    return b;
}

}  // namespace wpg
