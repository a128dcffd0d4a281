#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"
#include "wpg/quadrature.hpp"

using namespace wpg;

namespace {

std::vector<MarkedSurface> quad_surfaces() {
    return {build_punctured_torus(2.0, 0.0), build_punctured_torus(1.0, -0.4),
            build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}})};
}

// Orbit of p under group elements of word length <= depth, duplicates removed.
std::vector<cplx> orbit(const MarkedSurface& s, cplx p, int depth) {
    std::vector<cplx> out{p};
    std::vector<std::pair<MoebiusMap, int>> layer{{MoebiusMap::identity(), -1}};
    for (int n = 1; n <= depth; ++n) {
        std::vector<std::pair<MoebiusMap, int>> next;
        for (const auto& [m, last] : layer)
            for (int c = 0; c < 2 * s.rank(); ++c) {
                if (last >= 0 && c == (last ^ 1)) continue;
                const MoebiusMap& g = s.generators()[static_cast<std::size_t>(c / 2)];
                next.push_back({m * ((c & 1) ? g.inverse() : g), c});
                out.push_back(next.back().first.apply(p));
            }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    std::vector<cplx> uniq;
    for (cplx z : out)
        if (uniq.empty() || std::abs(z - uniq.back()) > 1e-9) uniq.push_back(z);
    return uniq;
}

}  // namespace

TEST(Quadrature, GaussRuleIntegratesPolynomials) {
    const auto& g = gauss_legendre(7);
    for (int k = 0; k <= 13; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], k);
        EXPECT_NEAR(s, (k % 2) ? 0.0 : 2.0 / (k + 1), 1e-14) << k;
    }
    EXPECT_THROW(gauss_legendre(0), Error);
}

TEST(Quadrature, AreaMatchesGaussBonnet) {
    for (const auto& s : quad_surfaces()) {
        const auto D = dirichlet_domain(s, default_base_point(s));
        for (int order : {8, 12}) {
            const DomainQuadrature q(D, order);
            EXPECT_NEAR(q.area(), 2.0 * M_PI * std::abs(s.euler_characteristic()), 1e-10) << order;
        }
    }
}

TEST(Quadrature, NodesLieInDomain) {
    for (const auto& s : quad_surfaces()) {
        const auto D = dirichlet_domain(s, default_base_point(s));
        const DomainQuadrature q(D, 6);
        for (const auto& nd : q.nodes()) {
            EXPECT_GT(nd.weight, 0.0);
            EXPECT_TRUE(D.contains(nd.z, 1e-9)) << nd.z;
        }
    }
}

// Unfolding: the orbit sum of a radial bump integrates over the domain to the integral of the
// bump over H, which for exp(-k (cosh r - 1)) is 2 pi / k.
TEST(Quadrature, UnfoldedBumpIntegral) {
    const double k = 6.0;
    for (const auto& s : quad_surfaces()) {
        const auto D = dirichlet_domain(s, default_base_point(s));
        const cplx p = D.from_disk(cplx(0.2, -0.15));
        auto pts = orbit(s, p, s.rank() == 2 ? 6 : 4);
        pts.erase(std::remove_if(pts.begin(), pts.end(), [&](cplx z) { return hyperbolic_distance(z, D.base()) > 9.0; }),
                  pts.end());
        auto F = [&](cplx z) {
            double sum = 0.0;
            for (cplx w : pts) {
                const double ch = 1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag());
                if (ch < 12.0) sum += std::exp(-k * (ch - 1.0));
            }
            return cplx(sum, 0.0);
        };
        const auto r = integrate_hyperbolic(D, F, 12, 1e-7);
        EXPECT_NEAR(r.value.real(), 2.0 * M_PI / k, 1e-7);
        EXPECT_LT(r.tail_bound, 1e-12);
    }
}

TEST(Quadrature, TailBoundOfConstantIsCuspArea) {
    const auto s = build_punctured_torus(2.0, 0.7);
    const auto D = dirichlet_domain(s, default_base_point(s));
    const auto r = integrate_hyperbolic(D, [](cplx) { return cplx(1.0, 0.0); });
    EXPECT_NEAR(r.tail_bound, D.cusp_tail_area(), 1e-14);
    EXPECT_NEAR(D.cusp_tail_area(), 0.1, 1e-12);
    EXPECT_NEAR(r.value.real() + r.tail_bound, 2.0 * M_PI, 1e-10);
}

TEST(Quadrature, RefinementFailureThrows) {
    const auto s = build_genus2({Topology::GenusTwo, {1.5, 1.5, 1.5}, {0, 0, 0}});
    const auto D = dirichlet_domain(s, default_base_point(s));
    auto F = [&](cplx z) { return std::exp(cplx(0.0, 40.0) * D.to_disk(z).real()); };
    try {
        integrate_hyperbolic(D, F, 2, 1e-12);
        FAIL() << "expected QuadratureNotConverged";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::QuadratureNotConverged);
    }
}
