#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "wpg/error.hpp"
#include "wpg/hexagon.hpp"
#include "wpg/metric.hpp"

using namespace wpg;

namespace {

// Independent closure oracle: walk the hexagon with an orthonormal frame,
// advancing along each side and turning left by a right angle. A frame is the
// SL(2,R) matrix taking (i, upward) to the current (point, direction).
struct Mat { double a, b, c, d; };

Mat mul(Mat p, Mat q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

double closure_residual(const std::array<double, 6>& sides) {
    const double h = std::sqrt(0.5);
    const Mat turn{h, h, -h, h};  // rotation about i by +pi/2
    Mat f{1, 0, 0, 1};
    for (double s : sides) {
        f = mul(f, Mat{std::exp(s / 2), 0, 0, std::exp(-s / 2)});
        f = mul(f, turn);
    }
    const double plus = std::max({std::abs(f.a - 1), std::abs(f.b), std::abs(f.c), std::abs(f.d - 1)});
    const double minus = std::max({std::abs(f.a + 1), std::abs(f.b), std::abs(f.c), std::abs(f.d + 1)});
    return std::min(plus, minus);
}

double hexagon_residual(double a1, double a2, double a3) {
    const auto b = hexagon_alternate_sides(a1, a2, a3);
    return closure_residual({a1, b[2], a2, b[0], a3, b[1]});
}

}  // namespace

TEST(Hexagon, SymmetricSidesGiveEqualOpposites) {
    const auto b = hexagon_alternate_sides(0.8, 0.8, 0.8);
    EXPECT_DOUBLE_EQ(b[0], b[1]);
    EXPECT_DOUBLE_EQ(b[1], b[2]);
}

TEST(Hexagon, UnitSidesMatchRelation) {
    const auto b = hexagon_alternate_sides(1, 1, 1);
    const double c = std::cosh(1.0), s = std::sinh(1.0);
    EXPECT_NEAR(std::cosh(b[0]) * s * s, c * c + c, 1e-12);
    EXPECT_LT(hexagon_residual(1, 1, 1), 1e-10);
}

TEST(Hexagon, RelationResidualAllIndexChoices) {
    const double a[3] = {0.75, 1.0, 1.25};
    const auto b = hexagon_alternate_sides(a[0], a[1], a[2]);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double lhs = std::cosh(b[i]) * std::sinh(a[j]) * std::sinh(a[k]);
        const double rhs = std::cosh(a[j]) * std::cosh(a[k]) + std::cosh(a[i]);
        EXPECT_LT(std::abs(lhs - rhs) / rhs, 1e-10);
    }
}

TEST(Hexagon, ClosesForVariedSides) {
    for (double a1 : {0.3, 0.75, 1.5})
        for (double a2 : {0.5, 1.0})
            for (double a3 : {0.4, 1.25}) EXPECT_LT(hexagon_residual(a1, a2, a3), 1e-10);
}

TEST(Hexagon, DegeneratesAsSideShrinks) {
    const auto big = hexagon_alternate_sides(1e-4, 1.0, 1.0);
    const auto small = hexagon_alternate_sides(1e-3, 1.0, 1.0);
    EXPECT_GT(big[1], small[1]);
    EXPECT_GT(big[2], small[2]);
    EXPECT_LT(hexagon_residual(1e-3, 1.0, 1.0), 1e-10);
}

TEST(Hexagon, RejectsNonPositive) {
    try {
        hexagon_alternate_sides(0.0, 1.0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonPositiveSide);
    }
}

TEST(Metric, CurvatureMinusOne) {
    // K = -(1/lambda) Laplacian(log sqrt(lambda)), via central differences.
    const double h = 1e-4;
    for (cplx z : {cplx(0.1, 0.5), cplx(-1.0, 1.0), cplx(2.0, 3.0)}) {
        auto f = [](cplx w) { return 0.5 * std::log(HMetric::riemannian_density(w)); };
        const double lap = (f(z + h) + f(z - h) + f(z + cplx(0, h)) + f(z - cplx(0, h)) - 4.0 * f(z)) / (h * h);
        EXPECT_NEAR(-lap / HMetric::riemannian_density(z), -1.0, 1e-6);
        // Exact form: log lambda = -2 log y, so Laplacian(log sqrt(lambda)) = 1/y^2.
        const double exact = 1.0 / (z.imag() * z.imag());
        EXPECT_NEAR(-exact / HMetric::riemannian_density(z), -1.0, 1e-10);
        // d dbar log g = (1/4) Laplacian(log g) = 1/(2 y^2) = g.
        EXPECT_NEAR(0.25 * 2.0 * exact, HMetric::kahler_density(z), 1e-10);
    }
}
