#include <gtest/gtest.h>

#include <cmath>

#include "field_fixtures.hpp"
#include "wpg/beltrami.hpp"
#include "wpg/error.hpp"
#include "wpg/geodesic_ode.hpp"

using namespace wpg;
using wpg::testing::basis;
using wpg::testing::context;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Io;
}

CollarChart chart_for(int which, int curve) {
    const auto& s = context(which).surface;
    const auto g = marked_curve_class(s, curve);
    return collar_chart(s, g, 0.6 * max_collar_width(s, g));
}

BumpProfile centred(const CollarChart& c, BumpFamily f, double frac = 0.5) {
    return BumpProfile::around(f, c.r0, frac * std::log(c.r2 / c.r0));
}

BeltramiDifferential collar_mu(int which, int curve, BumpFamily f = BumpFamily::Smooth, double frac = 0.5) {
    const auto c = chart_for(which, curve);
    return collar_twist_beltrami(c, centred(c, f, frac), context(which).surface, context(which).domain);
}

// i J with J the integral of phi(u) u'^2 along the unit-speed geodesic.
cplx line_side(int which, int curve, const QuadraticDifferential& phi) {
    const auto path = closed_geodesic_path(marked_curve_class(context(which).surface, curve), 1e-3);
    return cplx(0.0, 1.0) * tensor_line_integral(path, [&](cplx z) { return phi(z); }, TensorKind::QuadDiff).value;
}

}  // namespace

TEST(Bump, FamiliesAreMonotoneSteps) {
    for (auto f : {BumpFamily::Smooth, BumpFamily::Quintic, BumpFamily::Cosine}) {
        const BumpProfile b{f, 0.2, 0.5};
        EXPECT_EQ(b.h(0.2), 0.0);
        EXPECT_EQ(b.h(0.5), 1.0);
        EXPECT_EQ(b.dh(0.1), 0.0);
        EXPECT_EQ(b.dh(0.6), 0.0);
        double prev = 0.0, integral = 0.0;
        const int n = 2000;
        for (int i = 1; i <= n; ++i) {
            const double r = 0.2 + 0.3 * i / n;
            EXPECT_GE(b.h(r), prev - 1e-15);
            EXPECT_GE(b.dh(r), 0.0);
            prev = b.h(r);
            integral += b.dh(r - 0.15 / n) * 0.3 / n;
        }
        EXPECT_NEAR(integral, 1.0, 1e-5) << to_string(f);
        EXPECT_EQ(bump_family_from_string(to_string(f)), f);
    }
    EXPECT_EQ(kind_of([] { BumpProfile{BumpFamily::Smooth, 0.5, 0.5}.validate(); }), ErrorKind::BumpNotCompact);
    EXPECT_EQ(kind_of([] { bump_family_from_string("tent"); }), ErrorKind::InvalidConfig);
}

TEST(Collar, CoreRadiusAndAxis) {
    const auto c = chart_for(0, 0);
    EXPECT_NEAR(c.length, 2.0, 1e-12);
    EXPECT_NEAR(c.r0, std::exp(-M_PI * M_PI / 2.0), 1e-15);
    EXPECT_NEAR(c.r0, 0.0072, 5e-5);
    EXPECT_LT(c.r1, c.r0);
    EXPECT_GT(c.r2, c.r0);
    for (double t : {0.3, 1.0, 2.7}) {
        const cplx z = c.frame.apply(cplx(0.0, t));
        EXPECT_NEAR(std::abs(c.annulus_of(z)), c.r0, 1e-10);
    }
}

TEST(Collar, ChartIsConformalAndInvertible) {
    for (int w : {0, 2}) {
        const auto c = chart_for(w, 0);
        for (double th : {0.2, 1.1, 2.5, 4.0}) {
            const cplx w0 = std::polar(std::sqrt(c.r0 * c.r2), th);
            const cplx z = c.point_of(w0);
            EXPECT_LT(std::abs(c.annulus_of(z) - w0), 1e-12 * std::abs(w0));
            const double h = 1e-5 * z.imag();
            const cplx dx = (c.annulus_of(z + h) - c.annulus_of(z - h)) / (2.0 * h);
            const cplx dy = (c.annulus_of(z + cplx(0, h)) - c.annulus_of(z - cplx(0, h))) / cplx(0.0, 2.0 * h);
            EXPECT_LT(std::abs(dx - dy), 1e-8 * std::abs(dx));
            EXPECT_LT(std::abs(c.point_derivative(w0) * dx - 1.0), 1e-8);
        }
        // The boundary circles sit at the requested distance from the axis.
        const cplx z1 = c.frame.inverse().apply(c.point_of(cplx(c.r1, 0.0)));
        EXPECT_NEAR(std::acosh(std::abs(z1) / z1.imag()), c.width, 1e-10);
    }
}

TEST(Collar, Errors) {
    const auto& s = context(0).surface;
    const auto a = marked_curve_class(s, 0);
    const double wmax = max_collar_width(s, a);
    EXPECT_GT(wmax, 0.0);
    EXPECT_EQ(kind_of([&] { collar_chart(s, a, 1.01 * wmax); }), ErrorKind::CollarTooWide);
    EXPECT_EQ(kind_of([&] { collar_chart(s, a, 0.0); }), ErrorKind::InvalidConfig);
    EXPECT_EQ(kind_of([&] { collar_chart(s, geodesic_class(s, "A.A.B.B"), 0.1); }), ErrorKind::NotSimpleCurve);
    const auto c = chart_for(0, 0);
    EXPECT_EQ(kind_of([&] { collar_twist_beltrami(c, {BumpFamily::Smooth, 0.5 * c.r1, c.r0}, s, context(0).domain); }),
              ErrorKind::BumpNotCompact);
}

TEST(Harmonic, DefiningIdentityAndAutomorphy) {
    for (int w : {0, 2}) {
        const auto& ctx = context(w);
        const auto& phi = basis(w)[0];
        const auto mu = harmonic_beltrami(phi);
        for (cplx z : theta_probes(ctx.domain)) {
            const double g = 1.0 / (2.0 * z.imag() * z.imag());
            EXPECT_LT(std::abs(g * mu(z) - std::conj(phi(z))), 1e-12 * std::abs(phi(z)));
            for (const auto& A : ctx.surface.generators()) {
                const cplx d = A.derivative(z);
                EXPECT_LT(std::abs(mu(A.apply(z)) * std::conj(d) / d - mu(z)), 1e-6 * std::abs(mu(z)));
            }
        }
        const auto zero = harmonic_beltrami(QuadraticDifferential::zero(ctx.space));
        EXPECT_EQ(zero(ctx.domain.base()), cplx(0.0));
    }
}

TEST(CollarTwist, SupportAndCoreValue) {
    const auto c = chart_for(0, 0);
    const auto bump = centred(c, BumpFamily::Quintic, 0.3);
    const auto mu = collar_twist_beltrami(c, bump, context(0).surface, context(0).domain);
    const double rho = c.length / (2.0 * M_PI);
    for (double th : {0.0, 0.7, 3.0}) {
        EXPECT_EQ(mu.annulus_value(std::polar(0.99 * bump.lo, th)), cplx(0.0));
        EXPECT_EQ(mu.annulus_value(std::polar(1.01 * bump.hi, th)), cplx(0.0));
        const cplx expect = cplx(0.0, -0.5) * c.r0 * std::polar(1.0, 2.0 * th) * bump.dh(c.r0) / rho;
        EXPECT_LT(std::abs(mu.annulus_value(std::polar(c.r0, th)) - expect), 1e-14 * std::abs(expect));
        // The surface evaluator agrees with the chart value, including on a translated lift.
        const cplx w0 = std::polar(c.r0 * std::exp(0.1 * std::log(bump.hi / c.r0)), th);
        const cplx z = c.point_of(w0);
        EXPECT_LT(std::abs(mu.in_chart(c, w0) - mu.annulus_value(w0)), 1e-15);
        const cplx dz = c.point_derivative(w0);
        EXPECT_LT(std::abs(mu(z) * std::conj(dz) / dz - mu.annulus_value(w0)), 1e-9 * std::abs(mu.annulus_value(w0)));
        const auto& B = context(0).surface.generators()[1];
        const cplx d = B.derivative(z);
        EXPECT_LT(std::abs(mu(B.apply(z)) * std::conj(d) / d - mu(z)), 1e-9 * std::abs(mu(z)));
    }
    // Far from the curve the field vanishes.
    EXPECT_EQ(mu(c.point_of(cplx(0.999 * c.r1, 0.0))), cplx(0.0));
}

// The collar pairing equals i times the geodesic integral of phi for every bump, because the
// integrand is exact (Stokes).
TEST(CollarTwist, PairingIsIndependentOfBump) {
    for (int w : {0, 2}) {
        for (int curve : {0, 1}) {
            const auto& phi = basis(w)[w == 2 ? 1 : 0];
            const cplx ref = line_side(w, curve, phi);
            std::vector<cplx> vals;
            for (auto f : {BumpFamily::Smooth, BumpFamily::Quintic, BumpFamily::Cosine}) {
                const auto p = area_pairing(collar_mu(w, curve, f), phi, context(w).domain);
                EXPECT_LT(std::abs(p.value - ref), 1e-6 * std::abs(ref)) << w << curve << to_string(f);
                vals.push_back(p.value);
            }
            EXPECT_LT(std::abs(vals[0] - vals[1]), 1e-8 * std::abs(ref));
            EXPECT_LT(std::abs(vals[0] - vals[2]), 1e-8 * std::abs(ref));
        }
    }
}

TEST(CollarTwist, ShrinkingSupportKeepsThePairing) {
    const auto& phi = basis(0)[0];
    const cplx ref = line_side(0, 0, phi);
    for (double frac : {0.4, 0.2, 0.1, 0.05}) {
        const auto p = area_pairing(collar_mu(0, 0, BumpFamily::Smooth, frac), phi, context(0).domain, 12, 1e-8,
                                    AnnulusRule{128, 256});
        EXPECT_LT(std::abs(p.value - ref), 1e-7 * std::abs(ref)) << frac;
    }
}

TEST(AreaPairing, PositiveAndLinear) {
    const auto& ctx = context(2);
    const auto& b = basis(2);
    for (const auto& phi : b) {
        const auto p = area_pairing(harmonic_beltrami(phi), phi, ctx.domain);
        EXPECT_GT(p.value.real(), 0.0);
        EXPECT_LT(std::abs(p.value.imag()), 1e-10 * p.value.real());
    }
    const auto mu = harmonic_beltrami(b[0]);
    const cplx a(0.3, -1.2), c(2.0, 0.5);
    const auto lhs = area_pairing(mu, a * b[1] + c * b[2], ctx.domain).value;
    const auto rhs = a * area_pairing(mu, b[1], ctx.domain).value + c * area_pairing(mu, b[2], ctx.domain).value;
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(lhs));
    const auto cm = collar_mu(2, 0);
    const auto lc = area_pairing(cm, a * b[1] + c * b[2], ctx.domain).value;
    const auto rc = a * area_pairing(cm, b[1], ctx.domain).value + c * area_pairing(cm, b[2], ctx.domain).value;
    EXPECT_LT(std::abs(lc - rc), 1e-10 * std::abs(lc));
}

TEST(WpInner, HermitianPositive) {
    const auto& ctx = context(2);
    const auto& b = basis(2);
    const auto m1 = harmonic_beltrami(b[0]), m2 = harmonic_beltrami(cplx(0.0, 1.0) * b[1] + b[2]);
    const auto c1 = collar_mu(2, 0);
    const auto p11 = wp_inner(m1, m1, ctx.domain).value;
    EXPECT_GT(p11.real(), 0.0);
    EXPECT_LT(std::abs(p11.imag()), 1e-12 * p11.real());
    const auto pc = wp_inner(c1, c1, ctx.domain).value;
    EXPECT_GT(pc.real(), 0.0);
    const auto a = wp_inner(m1, m2, ctx.domain).value, bb = wp_inner(m2, m1, ctx.domain).value;
    EXPECT_LT(std::abs(a - std::conj(bb)), 1e-10 * std::abs(a));
    const auto x = wp_inner(c1, m2, ctx.domain).value, y = wp_inner(m2, c1, ctx.domain).value;
    EXPECT_LT(std::abs(x - std::conj(y)), 1e-10 * std::abs(x));
}

// For harmonic mu_j = conj(phi_j) / g the inner product is the duality pairing with phi_2,
// computed by a different integrand.
TEST(WpInner, MatchesAreaPairingForHarmonic) {
    for (int w : {0, 2}) {
        const auto& ctx = context(w);
        const auto& b = basis(w);
        const auto phi2 = b.size() > 1 ? cplx(0.5, 0.5) * b[1] : cplx(0.5, 0.5) * b[0];
        const auto m1 = harmonic_beltrami(b[0]), m2 = harmonic_beltrami(phi2);
        const auto lhs = wp_inner(m1, m2, ctx.domain);
        const auto rhs = area_pairing(m1, phi2, ctx.domain);
        EXPECT_LT(std::abs(lhs.value - rhs.value), 1e-8 * std::abs(lhs.value)) << w;
    }
}

TEST(Projection, FixedPointAndIdempotence) {
    const auto& ctx = context(2);
    const auto& b = basis(2);
    const cplx c0(1.0, -0.5), c2(0.25, 2.0);
    const auto mu = harmonic_beltrami(c0 * b[0] + c2 * b[2]);
    const auto P = harmonic_projection(mu, b, ctx.domain);
    // mu = conj(c0 phi0 + c2 phi2) / g, so the coefficients of conj(phi_k) / g are conjugated.
    EXPECT_LT(std::abs(P.coefficients(0) - std::conj(c0)), 1e-8);
    EXPECT_LT(std::abs(P.coefficients(1)), 1e-8);
    EXPECT_LT(std::abs(P.coefficients(2) - std::conj(c2)), 1e-8);
    EXPECT_LT(P.condition, 1e8);
    const auto PP = harmonic_projection(P.mu, b, ctx.domain);
    EXPECT_LT((PP.coefficients - P.coefficients).norm(), 1e-8 * P.coefficients.norm());
}

TEST(Projection, PreservesCollarPairings) {
    for (int w : {0, 2}) {
        const auto& ctx = context(w);
        const auto mu = collar_mu(w, 0);
        const auto P = harmonic_projection(mu, basis(w), ctx.domain);
        EXPECT_EQ(P.mu.kind(), BeltramiDifferential::Kind::Harmonic);
        for (const auto& phi : basis(w)) {
            const cplx a = area_pairing(mu, phi, ctx.domain).value;
            const cplx p = area_pairing(P.mu, phi, ctx.domain).value;
            EXPECT_LT(std::abs(a - p), 1e-6 * std::abs(a)) << w;
        }
    }
}

TEST(Projection, SingularGramIsReported) {
    const auto& b = basis(2);
    const std::vector<QuadraticDifferential> dup{b[0], b[1], cplx(2.0, 0.0) * b[0]};
    EXPECT_EQ(kind_of([&] { harmonic_projection(harmonic_beltrami(b[2]), dup, context(2).domain); }),
              ErrorKind::SingularGram);
}

TEST(FieldCsv, HeaderAndShape) {
    const auto& phi = basis(0)[0];
    const FieldGrid g{-0.5, 0.5, 0.8, 1.6, 5, 3};
    const std::string csv = field_csv(harmonic_beltrami(phi), phi, g);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,re_mu,im_mu,re_phi,im_phi");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 5 * 3);
    EXPECT_EQ(csv, field_csv(harmonic_beltrami(phi), phi, g));
}
