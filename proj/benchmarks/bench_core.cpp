#include <benchmark/benchmark.h>

#include "wpg/geodesic_ode.hpp"
#include "wpg/verification.hpp"

using namespace wpg;

namespace {

const MarkedSurface& torus() {
    static const MarkedSurface s = build_punctured_torus(2.0, 0.3);
    return s;
}

const MarkedSurface& genus2() {
    static const MarkedSurface s = build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0, -0.4}});
    return s;
}

const FieldContext& torus_context() {
    static const FieldContext ctx = make_field_context(torus());
    return ctx;
}

}  // namespace

static void BM_EnumerateClasses(benchmark::State& state) {
    const auto& s = state.range(0) == 0 ? torus() : genus2();
    const int depth = static_cast<int>(state.range(1));
    std::size_t n = 0;
    for (auto _ : state) n = enumerate_classes(s, depth).size();
    state.counters["classes"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateClasses)->Args({0, 6})->Args({0, 8})->Args({1, 4})->Args({1, 6})->Unit(benchmark::kMillisecond);

static void BM_DirichletDomain(benchmark::State& state) {
    const auto& s = state.range(0) == 0 ? torus() : genus2();
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_domain(s, default_base_point(s)).area());
}
BENCHMARK(BM_DirichletDomain)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ClosedGeodesicPath(benchmark::State& state) {
    const auto g = geodesic_class(torus(), "A.B");
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(closed_geodesic_path(g, h).u.back());
}
BENCHMARK(BM_ClosedGeodesicPath)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

static void BM_TwistLengthDerivative(benchmark::State& state) {
    const auto& s = torus();
    const auto g = geodesic_class(s, "A.B");
    for (auto _ : state) benchmark::DoNotOptimize(twist_length_derivative_fd(s, s.simple_curves()[0].word, g).value);
}
BENCHMARK(BM_TwistLengthDerivative)->Unit(benchmark::kMicrosecond);

static void BM_ThetaSeries(benchmark::State& state) {
    const auto& ctx = torus_context();
    const int R = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(theta_series(ctx, Seed::pole(cplx(0.0, -1.0)), R).coefficients());
}
BENCHMARK(BM_ThetaSeries)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_CollarPairing(benchmark::State& state) {
    const auto& ctx = torus_context();
    const auto g = marked_curve_class(torus(), 0);
    const auto chart = collar_chart(torus(), g, 0.6 * max_collar_width(torus(), g));
    const auto mu = collar_twist_beltrami(chart, BumpProfile::around(BumpFamily::Smooth, chart.r0, 0.5 * std::log(chart.r2 / chart.r0)),
                                          torus(), ctx.domain);
    const auto phi = theta_series(ctx, Seed::pole(cplx(0.0, -1.0)));
    for (auto _ : state) benchmark::DoNotOptimize(area_pairing(mu, phi, ctx.domain).value);
}
BENCHMARK(BM_CollarPairing)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
