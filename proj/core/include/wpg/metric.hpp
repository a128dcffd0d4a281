#pragma once

#include "wpg/moebius.hpp"

namespace wpg {

// Hyperbolic metric of H. The Riemannian density gives ds^2 = lambda |dz|^2;
// the Kaehler density g = lambda / 2 satisfies d dbar log g = g.
struct HMetric {
    static double riemannian_density(cplx z) { return 1.0 / (z.imag() * z.imag()); }
    static double kahler_density(cplx z) { return 0.5 / (z.imag() * z.imag()); }
    // Riemannian speed of a tangent vector v at z.
    static double speed(cplx z, cplx v);
    // Christoffel symbol d/dz log g of the holomorphic connection.
    static cplx christoffel(cplx z) { return cplx(0.0, 1.0) / z.imag(); }
};

}  // namespace wpg
