#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "field_fixtures.hpp"
#include "wpg/error.hpp"

using namespace wpg;
using wpg::testing::context;

namespace {

MoebiusMap generator(const MarkedSurface& s, int k) {
    const MoebiusMap& g = s.generators()[static_cast<std::size_t>(k / 2)];
    return (k & 1) ? g.inverse() : g;
}

}  // namespace

TEST(FormSpace, DimensionMatchesTopology) {
    EXPECT_EQ(context(0).space->dimension(), 1);
    EXPECT_EQ(context(0).space->chart(), FormSpace::Chart::Cusp);
    EXPECT_EQ(context(2).space->dimension(), 3);
    EXPECT_EQ(context(2).space->chart(), FormSpace::Chart::Disk);
    for (int w : {0, 1, 2}) EXPECT_LT(context(w).space->null_space_gap(), 1e-6) << w;
}

TEST(FormSpace, BasisIsAutomorphic) {
    for (int w : {0, 1, 2}) {
        const auto& ctx = context(w);
        for (cplx z : theta_probes(ctx.domain)) {
            const Eigen::VectorXcd f = ctx.space->evaluate(z);
            for (int k = 0; k < 2 * ctx.surface.rank(); ++k) {
                const MoebiusMap A = generator(ctx.surface, k);
                const cplx d = A.derivative(z);
                const Eigen::VectorXcd g = ctx.space->evaluate(A.apply(z)) * d * d;
                EXPECT_LT((g - f).norm(), 1e-6 * f.norm()) << w << " " << z;
            }
        }
    }
}

// The reduction is piecewise, so holomorphy across domain sides is a real test: the Cauchy
// integral over a circle that leaves the domain must reproduce the value at its centre.
TEST(FormSpace, CauchyIntegralReproducesValue) {
    for (int w : {0, 2}) {
        const auto& ctx = context(w);
        for (const auto& v : ctx.domain.vertices()) {
            if (v.z.imag() <= 0.0 || !std::isfinite(v.z.imag())) continue;
            const cplx z0 = v.z;
            const double r = 0.3 * z0.imag();
            const int n = 256;
            Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(ctx.space->dimension());
            for (int j = 0; j < n; ++j) sum += ctx.space->evaluate(z0 + std::polar(r, 2.0 * M_PI * j / n));
            sum /= double(n);
            const Eigen::VectorXcd f0 = ctx.space->evaluate(z0);
            EXPECT_LT((sum - f0).norm(), 1e-9 * f0.norm()) << w << " " << z0;
        }
    }
}

TEST(FormSpace, ReductionFactorIsConsistent) {
    const auto& ctx = context(2);
    const cplx z = generator(ctx.surface, 0).apply(generator(ctx.surface, 3).apply(ctx.domain.base() + cplx(0.1, 0.05)));
    const auto r = ctx.space->reduce(z);
    EXPECT_TRUE(ctx.domain.contains(r.z, 1e-9));
    const Eigen::VectorXcd a = ctx.space->evaluate(z);
    const Eigen::VectorXcd b = ctx.space->evaluate(r.z) * r.factor;
    EXPECT_LT((a - b).norm(), 1e-10 * a.norm());
}

TEST(Seed, Validation) {
    EXPECT_NO_THROW(Seed::pole(cplx(0.0, -2.0)).validate());
    try {
        Seed::pole(cplx(0.5, 0.0)).validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SeedPolesOnBoundary);
    }
    try {
        Seed::pole(cplx(0.0, 1.0)).validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
    EXPECT_TRUE(Seed{}.is_zero());
    EXPECT_TRUE(Seed::pole(cplx(0, -1), 0.0).is_zero());
}

TEST(Theta, ZeroSeedGivesZero) {
    const auto& ctx = context(0);
    const auto theta = theta_series(ctx, Seed{});
    for (cplx z : theta_probes(ctx.domain)) EXPECT_EQ(theta(z), cplx(0.0));
    EXPECT_EQ(theta.coefficients().norm(), 0.0);
}

// The boundary of the word ball makes the defect oscillate between consecutive even R, so the
// general claim is a decrease over two steps; the seed (z + i)^-4 on torus(2, 0) decreases at
// every step.
TEST(Theta, RawDefectDecreasesWithTruncation) {
    const auto& torus = context(0);
    double prev = 1e300;
    for (int R = 4; R <= 10; R += 2) {
        const double d = raw_automorphy_defect(torus.surface, torus.domain, Seed::pole(cplx(0.0, -1.0)), R);
        EXPECT_LT(d, prev) << "R=" << R;
        prev = d;
    }
    for (int w : {0, 2}) {
        const auto& ctx = context(w);
        const Seed seed = Seed::pole(cplx(0.0, -2.0));
        const double d4 = raw_automorphy_defect(ctx.surface, ctx.domain, seed, 4);
        const int hi = std::min(8, max_theta_truncation(ctx.surface));
        const double dhi = raw_automorphy_defect(ctx.surface, ctx.domain, seed, hi);
        EXPECT_LT(dhi, 0.2 * d4) << w;
    }
}

// Theta(i) on torus(2, 0) for the seed (z + i)^-4. The raw truncations alternate around the
// projected value with shrinking amplitude (R = 11 below, R = 12 above); the projected value
// does not depend on R at all.
TEST(Theta, ValueAtIBracketedByTruncations) {
    const auto& ctx = context(0);
    const Seed seed = Seed::pole(cplx(0.0, -1.0));
    const std::vector<cplx> at{cplx(0.0, 1.0)};
    const cplx v = theta_series(ctx, seed, 10)(at[0]);
    EXPECT_EQ(v, theta_series(ctx, seed, 12)(at[0]));
    EXPECT_NEAR(v.real(), 0.125238781443, 1e-10);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    const cplx r9 = raw_theta_series(ctx.surface, ctx.domain, seed, 9, at)[0];
    const cplx r10 = raw_theta_series(ctx.surface, ctx.domain, seed, 10, at)[0];
    const cplx r11 = raw_theta_series(ctx.surface, ctx.domain, seed, 11, at)[0];
    const cplx r12 = raw_theta_series(ctx.surface, ctx.domain, seed, 12, at)[0];
    EXPECT_LT(r9.real(), v.real());
    EXPECT_LT(r11.real(), v.real());
    EXPECT_GT(r10.real(), v.real());
    EXPECT_GT(r12.real(), v.real());
    EXPECT_LT(std::abs(r12 - r11), std::abs(r10 - r9));
    EXPECT_LT(std::abs(r12 - v), 1e-4 * std::abs(v));
}

TEST(Theta, ProjectionMatchesRawSeries) {
    for (int w : {0, 1, 2}) {
        const auto& ctx = context(w);
        const Seed seed{{{1.0, cplx(0.3, -1.5)}, {cplx(0.0, 2.0), cplx(-1.0, -2.5)}}};
        const int R = default_theta_truncation(ctx.surface);
        const auto theta = theta_series(ctx, seed, R);
        const auto probes = theta_probes(ctx.domain);
        const auto raw = raw_theta_series(ctx.surface, ctx.domain, seed, R, probes);
        double scale = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            scale = std::max(scale, std::abs(raw[i]));
            diff = std::max(diff, std::abs(theta(probes[i]) - raw[i]));
        }
        EXPECT_LT(diff, std::max(1e-6 * scale, 10.0 * theta.raw_increment())) << w;
        EXPECT_LE(theta.truncation_error(), std::max(1e-6 * scale, 10.0 * theta.raw_increment())) << w;
    }
}

TEST(Theta, LinearInSeed) {
    const auto& ctx = context(2);
    const Seed a = Seed::pole(cplx(0.0, -2.0)), b = Seed::pole(cplx(1.0, -2.0));
    const Seed ab{{{cplx(2.0, 0.0), cplx(0.0, -2.0)}, {cplx(0.0, -1.0), cplx(1.0, -2.0)}}};
    const auto ta = theta_series(ctx, a), tb = theta_series(ctx, b), tab = theta_series(ctx, ab);
    const auto sum = cplx(2.0, 0.0) * ta + cplx(0.0, -1.0) * tb;
    EXPECT_LT((sum.coefficients() - tab.coefficients()).norm(), 1e-10 * tab.coefficients().norm());
}

TEST(Theta, BasisIsWellConditioned) {
    const auto& ctx = context(2);
    const auto basis = theta_basis(ctx);
    ASSERT_EQ(basis.size(), 3u);
    Eigen::MatrixXcd C(3, 3);
    for (int k = 0; k < 3; ++k) C.col(k) = basis[static_cast<std::size_t>(k)].coefficients();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
    EXPECT_LT(svd.singularValues()(0) / svd.singularValues()(2), 1e6);
}

TEST(Theta, GramIsHermitianPositive) {
    for (int w : {0, 2}) {
        const auto& G = context(w).gram;
        EXPECT_LT((G - G.adjoint()).norm(), 1e-12 * G.norm());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
        EXPECT_LT(context(w).gram_error, 1e-8 * G.norm());
    }
}
