#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wpg/error.hpp"
#include "wpg/moebius.hpp"

using namespace wpg;

namespace {

MoebiusMap random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.2) return {a, b, c, d};
    }
}

MoebiusMap hyperbolic_sample() { return {2.0, 1.0, 1.0, 1.0}; }

}  // namespace

TEST(Moebius, ComposeIdentityAndInverse) {
    const MoebiusMap m = hyperbolic_sample();
    EXPECT_TRUE(compose(MoebiusMap::identity(), m).approx_equal(m, 0.0));
    EXPECT_TRUE(compose(m, m.inverse()).approx_equal(MoebiusMap::identity(), 1e-15));
}

TEST(Moebius, ComposeMatchesMatrixProduct) {
    const MoebiusMap p = compose(MoebiusMap(2, 1, 1, 1), MoebiusMap(1, 1, 0, 1));
    EXPECT_DOUBLE_EQ(p.a(), 2.0);
    EXPECT_DOUBLE_EQ(p.b(), 3.0);
    EXPECT_DOUBLE_EQ(p.c(), 1.0);
    EXPECT_DOUBLE_EQ(p.d(), 2.0);
}

TEST(Moebius, CanonicalSign) {
    const MoebiusMap m(-2, -1, -1, -1);
    EXPECT_GT(m.a(), 0.0);
    const MoebiusMap r(0, -1, 1, 0);
    EXPECT_EQ(r.a(), 0.0);
    EXPECT_GT(r.b(), 0.0);
}

TEST(Moebius, DeterminantSurvivesLongChains) {
    std::mt19937_64 rng(7);
    MoebiusMap acc;
    // Alternate each factor with a near inverse so entries stay bounded.
    for (int i = 0; i < 5000; ++i) {
        const MoebiusMap g = random_map(rng);
        acc = compose(acc, g);
        acc = compose(acc, MoebiusMap(g.d(), -g.b(), -g.c(), g.a() + 1e-3));
    }
    EXPECT_LT(std::abs(acc.det() - 1.0), 1e-9);
}

TEST(Moebius, TraceConjugationInvariance) {
    std::mt19937_64 rng(11);
    const MoebiusMap m = hyperbolic_sample();
    for (int i = 0; i < 50; ++i) {
        const MoebiusMap g = random_map(rng);
        EXPECT_NEAR(std::abs((g * m * g.inverse()).trace()), std::abs(m.trace()), 1e-10);
    }
}

TEST(Moebius, Classify) {
    EXPECT_EQ(classify(MoebiusMap(1.5, 1, 1.25, 1.5)), IsometryClass::Hyperbolic);  // tr 3
    EXPECT_EQ(classify(MoebiusMap(1, 1, 0, 1)), IsometryClass::Parabolic);
    EXPECT_EQ(classify(MoebiusMap(0.5, -1, 0.75, 0.5)), IsometryClass::Elliptic);  // tr 1
    EXPECT_EQ(classify(MoebiusMap()), IsometryClass::Identity);
}

TEST(Moebius, TranslationLength) {
    EXPECT_NEAR(translation_length(MoebiusMap(std::exp(1.0), 0, 0, std::exp(-1.0))), 2.0, 1e-15);
    // High-precision oracle: 2 acosh(1.5) evaluated with mpmath at 30 digits.
    EXPECT_NEAR(translation_length(hyperbolic_sample()), 1.92484730023841378999103565, 1e-14);
    try {
        translation_length(MoebiusMap());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHyperbolic);
    }
}

TEST(Moebius, PowerLaw) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const MoebiusMap g = random_map(rng);
        const MoebiusMap m = g * MoebiusMap::dilation(1.7 + 0.1 * trial) * g.inverse();
        const double l = translation_length(m);
        for (int n = 1; n <= 8; ++n)
            EXPECT_NEAR(translation_length(power(m, n)), n * l, 1e-9 * std::max(1.0, n * l));
    }
}

TEST(Moebius, AxisOfDiagonal) {
    const auto ax = axis(MoebiusMap::dilation(3.0));
    EXPECT_FALSE(ax.repelling().is_infinite());
    EXPECT_EQ(ax.repelling().x, 0.0);
    EXPECT_TRUE(ax.attracting().is_infinite());
    const auto rev = axis(MoebiusMap::dilation(1.0 / 3.0));
    EXPECT_TRUE(rev.repelling().is_infinite());
}

TEST(Moebius, AxisOfConjugate) {
    // T diag(e, 1/e) T^-1 with T = [[1,1],[0,1]] fixes 1 (repelling) and infinity.
    const MoebiusMap t(1, 1, 0, 1);
    const MoebiusMap m = t * MoebiusMap(std::exp(1.0), 0, 0, std::exp(-1.0)) * t.inverse();
    const auto ax = axis(m);
    EXPECT_NEAR(ax.repelling().x, 1.0, 1e-14);
    EXPECT_TRUE(ax.attracting().is_infinite());
    // Generic case: roots of c z^2 + (d-a) z - b = 0.
    const MoebiusMap h = hyperbolic_sample();
    const auto hx = axis(h);
    for (double r : {hx.repelling().x, hx.attracting().x})
        EXPECT_NEAR(h.c() * r * r + (h.d() - h.a()) * r - h.b(), 0.0, 1e-14);
    EXPECT_LT(std::abs(h.derivative(hx.attracting().x)), 1.0);
    EXPECT_THROW(axis(MoebiusMap(1, 1, 0, 1)), Error);
}

TEST(Moebius, AxisIsInvariant) {
    const MoebiusMap h = hyperbolic_sample();
    const auto ax = axis(h);
    for (double s : {-1.0, 0.0, 0.7}) {
        const cplx z = ax.point_at(s);
        EXPECT_NEAR(ax.distance_to(h.apply(z)), 0.0, 1e-12);
        EXPECT_NEAR(hyperbolic_distance(z, h.apply(z)), translation_length(h), 1e-12);
    }
}

TEST(Moebius, TranslateAlongAxis) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const MoebiusMap g = random_map(rng);
        const MoebiusMap m = g * MoebiusMap::dilation(4.0 + trial) * g.inverse();
        const double l = translation_length(m);
        EXPECT_TRUE(translate_along_axis(m, 0.0).approx_equal(MoebiusMap(), 1e-12));
        EXPECT_TRUE(translate_along_axis(m, l).approx_equal(m, 1e-10));
        const MoebiusMap half = translate_along_axis(m, l / 2);
        EXPECT_TRUE((half * half).approx_equal(m, 1e-10));
        EXPECT_NEAR(translation_length(translate_along_axis(m, -0.3)), 0.3, 1e-10);
        // Negative distance moves toward the repelling end.
        EXPECT_TRUE(translate_along_axis(m, -0.3).approx_equal(translate_along_axis(m, 0.3).inverse(), 1e-12));
        const MoebiusMap ab = translate_along_axis(m, 0.4) * translate_along_axis(m, -1.1);
        EXPECT_TRUE(ab.approx_equal(translate_along_axis(m, -0.7), 1e-10));
    }
}

TEST(Moebius, HalfPlanePointRejectsLowerHalf) {
    EXPECT_THROW(HalfPlanePoint(0.0, 0.0), Error);
    EXPECT_THROW(HalfPlanePoint(1.0, -1.0), Error);
    EXPECT_NO_THROW(HalfPlanePoint(1.0, 1e-300));
}
