// wpg: batch front end for surfaces, spectra, verification reports and plot data.
// Exit status: 0 success, 1 failed check or numerical failure, 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "wpg/error.hpp"
#include "wpg/io.hpp"
#include "wpg/surface_io.hpp"
#include "wpg/verification.hpp"

namespace fs = std::filesystem;
using namespace wpg;
using wpg::cli::ExperimentConfig;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kConfigError = 2;

struct Flags {
    std::string config, out, which;
    std::optional<int> depth, theta_R, quad_order;
    std::optional<double> fd_step, tol;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON experiment config");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--which", f.which, "twist-pairing, length-variation, antisymmetry, symplectic, audit or all");
    sub->add_option("--depth", f.depth, "word-length bound for enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--theta-R", f.theta_R, "theta series truncation")->check(CLI::Range(4, 64));
    sub->add_option("--quad-order", f.quad_order, "quadrature order")->check(CLI::Range(2, 64));
    sub->add_option("--fd-step", f.fd_step, "finite-difference step")->check(CLI::PositiveNumber);
    sub->add_option("--tol", f.tol, "override every pass tolerance")->check(CLI::PositiveNumber);
}

ExperimentConfig load_config(const Flags& f) {
    ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : cli::parse_config(read_file(f.config));
    if (!f.out.empty()) c.out = f.out;
    if (!f.which.empty()) {
        check_families_from_string(f.which);
        c.which = f.which;
    }
    if (f.depth) c.depth = *f.depth;
    if (f.theta_R) c.verify.theta_R = *f.theta_R;
    if (f.quad_order) c.verify.quad_order = *f.quad_order;
    if (f.fd_step) c.verify.fd_step = *f.fd_step;
    if (f.tol) c.tol = *f.tol;
    if (c.tol) cli::override_tolerances(c.verify.tol, *c.tol);
    return c;
}

std::string out_path(const ExperimentConfig& c, const std::string& name) {
    fs::create_directories(c.out);
    return (fs::path(c.out) / name).string();
}

// A built surface: surface_file from the config, else <out>/surface.json.
MarkedSurface load_surface(const ExperimentConfig& c) {
    const std::string path = c.surface_file ? *c.surface_file : (fs::path(c.out) / "surface.json").string();
    if (!fs::exists(path)) throw Error(ErrorKind::InvalidConfig, "no built surface at " + path + " (run build first)");
    return surface_from_json(read_file(path));
}

int cmd_build(const ExperimentConfig& c) {
    if (!c.surface) throw Error(ErrorKind::InvalidConfig, "build needs a surface in the config");
    const MarkedSurface s = build_surface(*c.surface);
    const std::string path = out_path(c, "surface.json");
    write_file_atomic(path, surface_to_json(s));
    std::printf("surface %s\n", surface_label(s).c_str());
    const auto& fn = s.fn();
    for (std::size_t i = 0; i < fn.lengths.size(); ++i)
        std::printf("fn[%zu] length %.17g twist %.17g\n", i, fn.lengths[i], fn.twists[i]);
    for (int k = 0; k < s.rank(); ++k)
        std::printf("generator %s trace %.17g\n", s.generator_names()[static_cast<std::size_t>(k)].c_str(),
                    s.generators()[static_cast<std::size_t>(k)].trace());
    if (s.topology() == Topology::PuncturedTorus)
        std::printf("tr_commutator %.17g\n", commutator_trace(s.generators()[0], s.generators()[1]));
    else
        std::printf("relator_defect %.3e\n", s.relator_defect());
    std::printf("wrote %s\n", path.c_str());
    return kPass;
}

int cmd_spectrum(const ExperimentConfig& c) {
    const MarkedSurface s = load_surface(c);
    const auto classes = enumerate_classes(s, c.depth);
    const std::string path = out_path(c, "spectrum.csv");
    write_file_atomic(path, spectrum_csv(s, classes));
    std::printf("%zu classes up to word length %d\nwrote %s\n", classes.size(), c.depth, path.c_str());
    return kPass;
}

int cmd_verify(const ExperimentConfig& c) {
    std::vector<MarkedSurface> suite;
    if (c.suite.empty())
        suite = default_suite();
    else
        for (const auto& fn : c.suite) suite.push_back(build_surface(fn));
    const auto run = run_suite(suite, check_families_from_string(c.which), c.verify);
    const std::string path = out_path(c, "report.json");
    write_file_atomic(path, reports_to_json(run.reports));
    int failed = 0;
    for (const auto& r : run.reports) {
        std::printf("%s %s\n", r.pass ? "PASS" : "FAIL", r.check_id.c_str());
        if (!r.pass) {
            ++failed;
            std::fprintf(stderr, "failed check: %s (abs_err %.3e, rel_err %.3e, tol %.3e)\n", r.check_id.c_str(),
                         r.abs_err, r.rel_err, r.tol);
        }
    }
    std::printf("%zu checks, %d failed\n", run.reports.size(), failed);
    if (run.conventions.audited) std::printf("audited c1 %.9f sigma %+d\n", run.conventions.c1, run.conventions.sigma);
    std::printf("wrote %s\n", path.c_str());
    return failed ? kCheckFailure : kPass;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Lengths of the probe curves and the shortest distinct lengths of the spectrum over one full
// twist period. The spectrum columns are periodic; the marked-curve columns are not, because a
// full twist changes the marking.
std::string length_vs_twist_csv(const MarkedSurface& s, const ExperimentConfig& c) {
    const auto& curves = s.simple_curves();
    if (c.plot.twist_curve >= static_cast<int>(curves.size()))
        throw Error(ErrorKind::InvalidConfig, "plot.twist_curve out of range");
    const GroupWord& tw = curves[static_cast<std::size_t>(c.plot.twist_curve)].word;
    const double period = geodesic_class(s, tw).length;
    const auto probes = probe_curves(s);
    std::ostringstream out;
    out << "tau";
    for (const auto& g : probes) out << ",len_" << s.format(g.word);
    for (int k = 0; k < c.plot.spectrum_count; ++k) out << ",spectrum_" << k + 1;
    out << "\n";
    for (int i = 0; i <= c.plot.samples; ++i) {
        const double tau = period * i / c.plot.samples;
        const MarkedSurface t = twist_deform(s, tw, tau);
        out << fmt(tau);
        for (const auto& g : probes) out << "," << fmt(geodesic_class(t, g.word).length);
        std::vector<double> lengths;
        for (const auto& g : enumerate_classes(t, c.depth)) lengths.push_back(g.length);
        std::sort(lengths.begin(), lengths.end());
        std::vector<double> distinct;
        for (double l : lengths)
            if (distinct.empty() || l - distinct.back() > 1e-9 * l) distinct.push_back(l);
        for (int k = 0; k < c.plot.spectrum_count; ++k)
            out << "," << (k < static_cast<int>(distinct.size()) ? fmt(distinct[static_cast<std::size_t>(k)]) : "");
        out << "\n";
    }
    return out.str();
}

// Raw truncated theta series against the projected series at the probe points.
std::string theta_convergence_csv(const FieldContext& ctx, const ExperimentConfig& c) {
    const int top = c.plot.theta_max_R > 0 ? c.plot.theta_max_R : default_theta_truncation(ctx.surface);
    const auto theta = theta_series(ctx, c.verify.seed, c.verify.theta_R);
    const auto probes = theta_probes(ctx.domain);
    std::vector<cplx> exact;
    double scale = 0.0;
    for (cplx z : probes) {
        exact.push_back(theta(z));
        scale = std::max(scale, std::abs(exact.back()));
    }
    std::ostringstream out;
    out << "R,re_raw,im_raw,re_projected,im_projected,max_error\n";
    for (int R = 4; R <= top; ++R) {
        const auto raw = raw_theta_series(ctx.surface, ctx.domain, c.verify.seed, R, probes);
        double err = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) err = std::max(err, std::abs(raw[i] - exact[i]) / scale);
        out << R << "," << fmt(raw[0].real()) << "," << fmt(raw[0].imag()) << "," << fmt(exact[0].real()) << ","
            << fmt(exact[0].imag()) << "," << fmt(err) << "\n";
    }
    return out.str();
}

FieldGrid default_grid(const DirichletDomain& D) {
    double x0 = 1e300, x1 = -1e300, ymax = 0.0;
    for (const auto& v : D.vertices()) {
        if (v.ideal) continue;
        x0 = std::min(x0, v.z.real());
        x1 = std::max(x1, v.z.real());
        ymax = std::max(ymax, v.z.imag());
    }
    return {x0, x1, 0.05 * ymax, 1.5 * ymax, 41, 31};
}

// Every table is computed before any is written, so a failure leaves no partial set.
int cmd_plotdata(const ExperimentConfig& c) {
    const MarkedSurface s = load_surface(c);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("length_vs_twist.csv", length_vs_twist_csv(s, c));

    const FieldContext ctx = make_field_context(s, FieldOptions{c.verify.quad_order, {}});
    files.emplace_back("theta_convergence.csv", theta_convergence_csv(ctx, c));

    const auto g = marked_curve_class(s, c.plot.twist_curve);
    const auto chart = collar_chart(s, g, c.verify.collar_fraction * max_collar_width(s, g));
    const auto bump = BumpProfile::around(c.verify.bumps.front(), chart.r0,
                                          c.verify.bump_fraction * std::log(chart.r2 / chart.r0));
    const auto mu = collar_twist_beltrami(chart, bump, s, ctx.domain);
    const auto phi = theta_series(ctx, c.verify.seed, c.verify.theta_R);
    files.emplace_back("collar_field.csv", field_csv(mu, phi, c.plot.grid_set ? c.plot.grid : default_grid(ctx.domain)));

    for (const auto& [name, contents] : files) {
        const std::string path = out_path(c, name);
        write_file_atomic(path, contents);
        std::printf("wrote %s\n", path.c_str());
    }
    return kPass;
}

bool is_config_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::Io:
        case ErrorKind::UnsupportedTopology:
        case ErrorKind::InvalidLength:
        case ErrorKind::SeedPolesOnBoundary:
            return true;
        default:
            return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil-Petersson and Fenchel-Nielsen experiments on hyperbolic surfaces"};
    app.require_subcommand(1);
    Flags flags;
    auto* build = app.add_subcommand("build", "build a marked surface and write surface.json");
    auto* spectrum = app.add_subcommand("spectrum", "write the length spectrum of the built surface");
    auto* verify = app.add_subcommand("verify", "run verification checks and write report.json");
    auto* plot = app.add_subcommand("plotdata", "write plot-ready CSV files for the built surface");
    for (auto* sub : {build, spectrum, verify, plot}) add_flags(sub, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    try {
        const ExperimentConfig c = load_config(flags);
        if (*build) return cmd_build(c);
        if (*spectrum) return cmd_spectrum(c);
        if (*verify) return cmd_verify(c);
        return cmd_plotdata(c);
    } catch (const Error& e) {
        std::fprintf(stderr, "wpg: %s\n", e.what());
        return is_config_error(e.kind()) ? kConfigError : kCheckFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wpg: %s\n", e.what());
        return kCheckFailure;
    }
}
