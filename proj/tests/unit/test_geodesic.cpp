#include <gtest/gtest.h>

#include <cmath>

#include "wpg/error.hpp"
#include "wpg/geodesic_ode.hpp"
#include "wpg/intersections.hpp"

using namespace wpg;

namespace {

std::vector<MarkedSurface> fd_grid_surfaces() {
    return {build_punctured_torus(2.0, 0.0), build_punctured_torus(2.0, 0.3), build_punctured_torus(1.2, -0.5),
            build_genus2({Topology::GenusTwo, {1.5, 1.5, 1.5}, {0, 0, 0}}),
            build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}})};
}

// (twist curve, measured word) triples per topology.
std::vector<std::pair<std::string, std::string>> fd_pairs(const MarkedSurface& s) {
    if (s.topology() == Topology::PuncturedTorus) return {{"A", "B"}, {"B", "A"}, {"A", "A.B^-1"}};
    return {{"B1^-1.A2", "B2"}, {"A2^-1", "B2"}, {"B1", "A1.B2"}};
}

}  // namespace

TEST(GeodesicOde, VerticalLine) {
    const auto p = integrate_geodesic_ode(HMetric{}, HalfPlanePoint(0, 1), cplx(0, 1), 5.0, 1e-3);
    for (std::size_t k = 0; k < p.u.size(); k += 97) EXPECT_LT(std::abs(p.u[k] - cplx(0, std::exp(p.t[k]))), 1e-9 * std::exp(p.t[k]));
}

TEST(GeodesicOde, Semicircle) {
    const auto p = integrate_geodesic_ode(HMetric{}, HalfPlanePoint(0, 1), cplx(1, 0), 6.0, 1e-3);
    for (const auto& u : p.u) EXPECT_NEAR(std::abs(u), 1.0, 1e-8);
    for (std::size_t k = 0; k < p.u.size(); ++k) EXPECT_NEAR(HMetric::speed(p.u[k], p.v[k]), 1.0, 1e-8);
}

TEST(GeodesicOde, Errors) {
    EXPECT_THROW(integrate_geodesic_ode(HMetric{}, HalfPlanePoint(0, 1), cplx(2, 0), 1.0, 1e-3), Error);
    try {
        integrate_geodesic_ode(HMetric{}, HalfPlanePoint(0, 1), cplx(1, 0), 10.0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StepTooLarge);
    }
}

TEST(GeodesicOde, ClosureForShortClasses) {
    for (const auto& s : {build_punctured_torus(2.0, 0.3), build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}})}) {
        const auto classes = enumerate_classes(s, s.rank() == 2 ? 4 : 2);
        for (const auto& g : classes) {
            const auto p = closed_geodesic_path(g, 1e-3);
            EXPECT_LT(std::abs(p.u.back() - g.matrix.apply(p.u.front())), 1e-7 * std::abs(p.u.front())) << s.format(g.word);
            const auto len = tensor_line_integral(p, [](cplx) { return cplx(1.0); }, TensorKind::Scalar);
            EXPECT_NEAR(len.value.real(), 2.0 * std::acosh(std::abs(g.trace) / 2.0), 1e-7);
            EXPECT_NEAR(hyperbolic_distance(p.u.front(), p.u.back()), g.length, 1e-7);
        }
    }
}

TEST(LineIntegral, AnalyticCases) {
    const auto p = integrate_geodesic_ode(HMetric{}, HalfPlanePoint(0, 1), cplx(0, 1), 3.0, 1e-3);
    EXPECT_NEAR(tensor_line_integral(p, [](cplx) { return cplx(1.0); }, TensorKind::Scalar).value.real(), 3.0, 1e-12);
    const auto q = tensor_line_integral(p, [](cplx z) { return 1.0 / (z * z); }, TensorKind::QuadDiff);
    EXPECT_NEAR(q.value.real(), 3.0, 1e-8);
    EXPECT_NEAR(q.value.imag(), 0.0, 1e-8);
}

TEST(LineIntegral, HarmonicBeltramiIsConjugate) {
    const auto g = geodesic_class(build_punctured_torus(2.0, 0.3), "A.B");
    const auto p = closed_geodesic_path(g, 1e-3);
    auto phi = [](cplx z) { return 1.0 / std::pow(z + cplx(0, 2), 4); };
    auto mu = [&](cplx z) { return std::conj(phi(z)) / HMetric::kahler_density(z); };
    const auto a = tensor_line_integral(p, phi, TensorKind::QuadDiff);
    const auto b = tensor_line_integral(p, mu, TensorKind::BeltramiLowered);
    EXPECT_LT(std::abs(b.value - std::conj(a.value)), 1e-9);
    // Halving h changes smooth-field integrals by less than 1e-8, and reversal leaves them unchanged.
    const auto p2 = closed_geodesic_path(g, 5e-4);
    EXPECT_LT(std::abs(tensor_line_integral(p2, phi, TensorKind::QuadDiff).value - a.value), 1e-8);
    EXPECT_LT(a.error_estimate, 1e-8);
    // The estimate covers the trajectory error, which Simpson's step comparison cannot see.
    EXPECT_GT(p.drift, 0.0);
    EXPECT_LT(p2.drift, p.drift / 8.0);
    EXPECT_LT(std::abs(tensor_line_integral(p2, phi, TensorKind::QuadDiff).value - a.value), a.error_estimate);
    EXPECT_LT(std::abs(tensor_line_integral(p.reversed(), phi, TensorKind::QuadDiff).value - a.value), 1e-10);
}

TEST(Intersections, SimpleCurveHasNone) {
    const auto s = build_punctured_torus(2.0, 0.3);
    const auto a = geodesic_class(s, "A");
    EXPECT_TRUE(intersections(s, a, a).empty());
}

TEST(Intersections, TorusCurvesMeetOnce) {
    const auto s = build_punctured_torus(2.0, 0.0);
    const auto pts = intersections(s, geodesic_class(s, "A"), geodesic_class(s, "B"));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_NEAR(pts[0].angle, M_PI / 2, 1e-10);
    EXPECT_LT(std::abs(pts[0].point - cplx(0, 1)), 1e-10);
    // (1,0) and (1,1) curves also meet once; A meets A.B^-1 once.
    EXPECT_EQ(intersections(s, geodesic_class(s, "A"), geodesic_class(s, "A.B")).size(), 1u);
    EXPECT_EQ(intersections(s, geodesic_class(s, "A.B"), geodesic_class(s, "A.B^-1")).size(), 2u);
}

TEST(FiniteDifference, TrivialCases) {
    const auto s = build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}});
    const auto words = s.fn_curve_words();
    // Twisting along a curve fixes its own length and the disjoint FN curves.
    for (const auto& w : words)
        for (const auto& d : words) EXPECT_NEAR(twist_length_derivative_fd(s, w, geodesic_class(s, d)).value, 0.0, 1e-10);
    EXPECT_THROW(twist_length_derivative_fd(s, s.parse("A1"), geodesic_class(s, "B1")), Error);
}

TEST(FiniteDifference, TorusAnalytic) {
    for (double tau : {0.0, 0.3, -0.8}) {
        const auto s = build_punctured_torus(2.0, tau);
        const double cm = std::sqrt(1.0 + 1.0 / std::pow(std::sinh(1.0), 2));
        const double lb = geodesic_class(s, "B").length;
        const double exact = cm * std::sinh(tau / 2) / std::sinh(lb / 2);
        EXPECT_NEAR(twist_length_derivative_fd(s, s.parse("A"), geodesic_class(s, "B")).value, exact, 1e-9);
        EXPECT_NEAR(twist_length_derivative_fd(s, s.parse("B"), geodesic_class(s, "A")).value, -exact, 1e-9);
    }
}

TEST(FiniteDifference, MatchesCosineFormulaOnGrid) {
    for (const auto& s : fd_grid_surfaces())
        for (const auto& [tw, meas] : fd_pairs(s)) {
            const auto twist = s.parse(tw);
            const auto c_twist = geodesic_class(s, twist);
            const auto c_meas = geodesic_class(s, meas);
            const double fd = twist_length_derivative_fd(s, twist, c_meas).value;
            const double cs = cosine_sum(intersections(s, c_twist, c_meas));
            EXPECT_LT(std::abs(fd - cs), 1e-5) << tw << " / " << meas << " fd " << fd << " cos " << cs;
        }
}
