#include "wpg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "wpg/error.hpp"
#include "wpg/geodesic_ode.hpp"

namespace wpg {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string join(const std::vector<double>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + fmt_g(v[i]);
    return out;
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson value_json(cplx v, bool complex_values) {
    if (!complex_values) return number_or_null(v.real());
    return ojson::array({number_or_null(v.real()), number_or_null(v.imag())});
}

std::vector<std::string> bump_names(const std::vector<BumpFamily>& b) {
    std::vector<std::string> out;
    for (auto f : b) out.emplace_back(to_string(f));
    return out;
}

BumpProfile centred_bump(const CollarChart& c, BumpFamily f, double fraction) {
    return BumpProfile::around(f, c.r0, fraction * std::log(c.r2 / c.r0));
}

CollarChart chart_of(const VerificationSurface& vs, const GeodesicClass& g) {
    const auto& s = vs.surface();
    return collar_chart(s, g, vs.options().collar_fraction * max_collar_width(s, g));
}

void common_params(CheckReport& r, const VerificationSurface& vs) {
    const auto& o = vs.options();
    r.set("surface", vs.label());
    r.set("quad_order", o.quad_order);
    r.set("theta_R", o.theta_R < 0 ? default_theta_truncation(vs.surface()) : o.theta_R);
    r.set("ode_step", o.ode_step);
}

double rel(double abs_err, double scale) { return scale > 0.0 ? abs_err / scale : (abs_err > 0.0 ? INFINITY : 0.0); }

// i/2 times the geodesic integral of phi(u) u'^2 dt.
LineIntegral half_i_line_integral(const GeodesicClass& g, const QuadraticDifferential& phi, double h) {
    const auto path = closed_geodesic_path(g, h);
    auto J = tensor_line_integral(path, [&](cplx z) { return phi(z); }, TensorKind::QuadDiff);
    return {cplx(0.0, 0.5) * J.value, 0.5 * J.error_estimate};
}

GeodesicClass reversed_class(const GeodesicClass& g) {
    GeodesicClass r = g;
    r.word = g.word.inverse();
    r.matrix = g.matrix.inverse();
    r.axis = g.axis.reversed();
    return r;
}

struct Fit {
    double c1 = 0.0;
    double weight = 0.0;  // sum of squared abscissae
    double residual = 0.0;
    double error = 0.0;  // propagated from the pair estimates
};

}  // namespace

void CheckReport::set(const std::string& key, ParamValue v) {
    for (auto& [k, val] : params)
        if (k == key) {
            val = std::move(v);
            return;
        }
    params.emplace_back(key, std::move(v));
}

static ojson report_object(const CheckReport& r) {
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params)
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, double>)
                    params[k] = number_or_null(x);
                else
                    params[k] = x;
            },
            v);
    params["estimates"] = {{"lhs", number_or_null(r.lhs_error)}, {"rhs", number_or_null(r.rhs_error)}};
    ojson j;
    j["check_id"] = r.check_id;
    j["params"] = params;
    j["lhs"] = value_json(r.lhs, r.complex_values);
    j["rhs"] = value_json(r.rhs, r.complex_values);
    j["abs_err"] = number_or_null(r.abs_err);
    j["rel_err"] = number_or_null(r.rel_err);
    j["tol"] = number_or_null(r.tol);
    j["pass"] = r.pass;
    j["notes"] = r.notes;
    return j;
}

std::string report_to_json(const CheckReport& r) { return report_object(r).dump(2) + "\n"; }

std::string reports_to_json(std::vector<CheckReport> reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(report_object(r));
    return arr.dump(2) + "\n";
}

std::string surface_label(const MarkedSurface& s) {
    const auto& fn = s.fn();
    if (s.topology() == Topology::PuncturedTorus)
        return "torus(" + fmt_g(fn.lengths[0]) + "," + fmt_g(fn.twists[0]) + ")";
    return "genus2(" + join(fn.lengths, ",") + ";" + join(fn.twists, ",") + ")";
}

VerificationSurface::VerificationSurface(const MarkedSurface& s, const VerifyOptions& opt)
    : label_(surface_label(s)), opt_(opt), ctx_(make_field_context(s, FieldOptions{opt.quad_order, {}})) {
    if (opt_.bumps.empty()) throw Error(ErrorKind::InvalidConfig, "at least one bump profile is required");
    basis_ = theta_basis(ctx_, opt_.theta_R);
    twists_.resize(s.simple_curves().size());
}

const TwistVector& VerificationSurface::twist(int curve) {
    if (curve < 0 || curve >= static_cast<int>(twists_.size()))
        throw Error(ErrorKind::InvalidConfig, "no marked curve with index " + std::to_string(curve));
    auto& slot = twists_[static_cast<std::size_t>(curve)];
    if (slot) return *slot;
    TwistVector tv;
    tv.curve = marked_curve_class(surface(), curve);
    tv.chart = chart_of(*this, tv.curve);
    tv.collar = collar_twist_beltrami(tv.chart, centred_bump(tv.chart, opt_.bumps.front(), opt_.bump_fraction),
                                      surface(), ctx_.domain);
    tv.harmonic = harmonic_projection(tv.collar, basis_, ctx_.domain, opt_.quad_order, opt_.annulus);
    for (const auto& phi : basis_) {
        const cplx a = area_pairing(tv.collar, phi, ctx_.domain, opt_.quad_order, 1e-8, opt_.annulus).value;
        const cplx p = area_pairing(tv.harmonic.mu, phi, ctx_.domain, opt_.quad_order).value;
        tv.residual = std::max(tv.residual, std::abs(a - p) / std::max(std::abs(a), 1e-300));
    }
    slot = std::move(tv);
    return *slot;
}

std::vector<GeodesicClass> VerificationSurface::measured_curves() const { return probe_curves(surface()); }

std::vector<GeodesicClass> probe_curves(const MarkedSurface& s) {
    std::vector<GeodesicClass> out;
    for (std::size_t i = 0; i < s.simple_curves().size(); ++i) out.push_back(marked_curve_class(s, static_cast<int>(i)));
    const std::vector<std::string> extra = s.topology() == Topology::PuncturedTorus
                                               ? std::vector<std::string>{"A.B", "A.B^-1"}
                                               : std::vector<std::string>{"A1", "B2"};
    for (const auto& w : extra) out.push_back(geodesic_class(s, w));
    return out;
}

CheckReport verify_twist_pairing(VerificationSurface& vs, int curve, const QuadraticDifferential& phi,
                                 const Conventions& conv, bool reverse) {
    const auto& o = vs.options();
    const auto& s = vs.surface();
    GeodesicClass g = marked_curve_class(s, curve);
    if (reverse) g = reversed_class(g);
    const CollarChart chart = chart_of(vs, g);
    const LineIntegral line = half_i_line_integral(g, phi, o.ode_step);

    CheckReport r;
    r.check_id = "twist-pairing/" + vs.label() + "/" + s.format(g.word);
    common_params(r, vs);
    r.set("curve", s.format(g.word));
    r.set("bumps", bump_names(o.bumps));
    r.set("collar_fraction", o.collar_fraction);
    r.set("bump_fraction", o.bump_fraction);
    r.set("kappa", conv.kappa);
    r.set("spread_tol", o.tol.bump_spread);
    r.complex_values = true;
    r.rhs = conv.kappa * line.value;
    r.rhs_error = conv.kappa * line.error_estimate;

    std::vector<cplx> vals;
    double worst = 0.0;
    for (auto f : o.bumps) {
        const auto mu = collar_twist_beltrami(chart, centred_bump(chart, f, o.bump_fraction), s, vs.context().domain);
        const auto p = area_pairing(mu, phi, vs.context().domain, o.quad_order, 1e-8, o.annulus);
        vals.push_back(p.value);
        r.lhs_error = std::max(r.lhs_error, p.error_estimate);
        worst = std::max(worst, std::abs(p.value - r.rhs));
    }
    double spread = 0.0;
    for (const cplx v : vals) spread = std::max(spread, std::abs(v - vals.front()));
    r.lhs = vals.front();
    r.abs_err = worst;
    r.rel_err = rel(worst, std::abs(r.rhs));
    r.tol = o.tol.pairing_rel;
    const double spread_rel = rel(spread, std::max(std::abs(r.rhs), std::abs(r.lhs)));
    r.set("spread", spread_rel);
    const bool zero = std::abs(r.rhs) == 0.0 && worst == 0.0;
    r.pass = zero || (r.rel_err < r.tol && spread_rel < o.tol.bump_spread);
    char buf[160];
    const cplx ratio = std::abs(line.value) > 0.0 ? r.lhs / line.value : cplx(0.0);
    std::snprintf(buf, sizeof buf, "lhs / ((i/2) int phi) = %.9f%+.9fi; kappa is the area-element factor",
                  ratio.real(), ratio.imag());
    r.notes = buf;
    return r;
}

CheckReport verify_delta_limit(VerificationSurface& vs, int curve, const QuadraticDifferential& phi,
                               const Conventions& conv) {
    const auto& o = vs.options();
    const auto& s = vs.surface();
    const GeodesicClass g = marked_curve_class(s, curve);
    const CollarChart chart = chart_of(vs, g);
    const LineIntegral line = half_i_line_integral(g, phi, o.ode_step);
    const cplx ref = conv.kappa * line.value;

    CheckReport r;
    r.check_id = "delta-limit/" + vs.label() + "/" + s.format(g.word);
    common_params(r, vs);
    r.set("curve", s.format(g.word));
    r.set("bump", std::string(to_string(o.bumps.front())));
    r.complex_values = true;
    r.rhs = ref;
    r.rhs_error = conv.kappa * line.error_estimate;

    std::vector<double> widths, errors, orders;
    double w = 0.4 * o.bump_fraction / 0.5;
    for (int k = 0; k < 4; ++k, w *= 0.5) {
        const auto mu = collar_twist_beltrami(chart, centred_bump(chart, o.bumps.front(), w), s, vs.context().domain);
        AnnulusRule rule = o.annulus;
        rule.radial *= 1 << std::min(k, 2);  // keep the radial panels finer than the support
        const auto p = area_pairing(mu, phi, vs.context().domain, o.quad_order, 1e-8, rule);
        widths.push_back(w);
        errors.push_back(rel(std::abs(p.value - ref), std::abs(ref)));
        r.lhs = p.value;
        r.lhs_error = std::max(r.lhs_error, p.error_estimate);
    }
    double min_order = INFINITY;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const double q = std::log2(errors[k] / errors[k + 1]);
        orders.push_back(q);
        min_order = std::min(min_order, q);
    }
    r.set("widths", widths);
    r.set("errors", errors);
    r.set("orders", orders);
    r.set("floor", o.tol.delta_floor);
    r.abs_err = std::abs(r.lhs - ref);
    r.rel_err = *std::max_element(errors.begin(), errors.end());
    r.tol = o.tol.delta_order;
    const bool at_floor = r.rel_err <= o.tol.delta_floor;
    r.pass = at_floor || min_order >= o.tol.delta_order;
    r.notes = at_floor ? "pairing equals the line integral at every width within the floor; the pairing is exactly "
                         "independent of the bump, so no convergence order is observable"
                       : "observed order from successive dyadic widths";
    return r;
}

CheckReport verify_length_variation(VerificationSurface& vs, const GeodesicClass& measured, int twist_curve,
                                    const Conventions& conv) {
    const auto& o = vs.options();
    const auto& s = vs.surface();
    const TwistVector& tv = vs.twist(twist_curve);
    const auto fd = twist_length_derivative_fd(s, s.simple_curves()[static_cast<std::size_t>(twist_curve)].word,
                                               measured, o.fd_step);
    const auto path = closed_geodesic_path(measured, o.ode_step);
    const auto I = tensor_line_integral(path, [&](cplx z) { return tv.harmonic.mu(z); }, TensorKind::BeltramiLowered);
    const double gi = conv.c1 * 2.0 * I.value.real();
    const double cs = cosine_sum(intersections(s, tv.curve, measured));

    CheckReport r;
    r.check_id = "length-variation/" + vs.label() + "/" + s.format(measured.word) + "|" + s.format(tv.curve.word);
    common_params(r, vs);
    r.set("measured", s.format(measured.word));
    r.set("twist", s.format(tv.curve.word));
    r.set("fd_step", fd.step);
    r.set("c1", conv.c1);
    r.set("cosine_sum", cs);
    r.set("projection_residual", tv.residual);
    r.lhs = fd.value;
    r.rhs = gi;
    r.lhs_error = fd.error_estimate;
    r.rhs_error = 2.0 * (conv.c1 * I.error_estimate + conv.c1_error * std::abs(I.value.real()));
    r.abs_err = std::max({std::abs(fd.value - gi), std::abs(fd.value - cs), std::abs(gi - cs)});
    r.rel_err = rel(std::abs(fd.value - gi), std::abs(fd.value));
    r.tol = o.tol.length_abs;
    r.pass = r.abs_err < std::max(o.tol.length_abs, o.tol.length_abs * std::abs(fd.value)) &&
             tv.residual < o.tol.projection_residual;
    r.notes = "lhs: finite-difference derivative; rhs: c1 * 2 Re int nu; abs_err covers the cosine sum as well";
    if (tv.residual >= o.tol.projection_residual) r.notes += "; projection residual above tolerance";
    return r;
}

CheckReport verify_antisymmetry(const MarkedSurface& s, int gamma, int delta, const VerifyOptions& opt) {
    const auto g = marked_curve_class(s, gamma), d = marked_curve_class(s, delta);
    const auto& curves = s.simple_curves();
    const auto a = twist_length_derivative_fd(s, curves[static_cast<std::size_t>(delta)].word, g, opt.fd_step);
    const auto b = twist_length_derivative_fd(s, curves[static_cast<std::size_t>(gamma)].word, d, opt.fd_step);
    const bool disjoint = gamma == delta || intersections(s, g, d).empty();

    CheckReport r;
    r.check_id = "antisymmetry/" + surface_label(s) + "/" + s.format(g.word) + "|" + s.format(d.word);
    r.set("surface", surface_label(s));
    r.set("gamma", s.format(g.word));
    r.set("delta", s.format(d.word));
    r.set("fd_step", a.step);
    r.set("disjoint", disjoint);
    r.lhs = a.value;
    r.rhs = -b.value;
    r.lhs_error = a.error_estimate;
    r.rhs_error = b.error_estimate;
    r.abs_err = std::abs(a.value + b.value);
    r.rel_err = rel(r.abs_err, std::max(std::abs(a.value), std::abs(b.value)));
    r.tol = disjoint ? opt.tol.disjoint : opt.tol.antisymmetry;
    r.pass = r.abs_err < r.tol;
    r.notes = "lhs: dl_gamma/dtau_delta; rhs: -dl_delta/dtau_gamma";
    return r;
}

CheckReport wp_symplectic_on_twists(VerificationSurface& vs, int gamma, int delta, const Conventions& conv) {
    const auto& o = vs.options();
    const auto& s = vs.surface();
    const TwistVector& tg = vs.twist(gamma);
    const TwistVector& td = vs.twist(delta);
    const auto& D = vs.context().domain;
    const auto gd = wp_inner(tg.harmonic.mu, td.harmonic.mu, D, o.quad_order);
    const auto dg = wp_inner(td.harmonic.mu, tg.harmonic.mu, D, o.quad_order);
    const double omega = conv.sigma * 2.0 * gd.value.imag();
    const double omega_swapped = conv.sigma * 2.0 * dg.value.imag();
    const auto fd = twist_length_derivative_fd(s, s.simple_curves()[static_cast<std::size_t>(delta)].word, tg.curve,
                                               o.fd_step);

    CheckReport r;
    r.check_id = "symplectic/" + vs.label() + "/" + s.format(tg.curve.word) + "|" + s.format(td.curve.word);
    common_params(r, vs);
    r.set("gamma", s.format(tg.curve.word));
    r.set("delta", s.format(td.curve.word));
    r.set("fd_step", fd.step);
    r.set("sigma", conv.sigma);
    r.set("ordering", std::string("<nu_gamma, nu_delta>"));
    const double skew = std::abs(omega + omega_swapped);
    r.set("skew", skew);
    r.set("skew_tol", o.tol.skew);
    r.lhs = omega;
    r.rhs = fd.value;
    r.lhs_error = 2.0 * gd.error_estimate;
    r.rhs_error = fd.error_estimate;
    r.abs_err = std::abs(omega - fd.value);
    // Relative to |FD|, floored at 1e-3 so that vanishing pairs are judged on an absolute scale.
    r.rel_err = r.abs_err / std::max(std::abs(fd.value), 1e-3);
    r.tol = o.tol.symplectic_rel;
    r.pass = r.rel_err < r.tol && skew < o.tol.skew;
    r.notes = "lhs: sigma * 2 Im <nu_gamma, nu_delta>; rhs: dl_gamma/dtau_delta";
    return r;
}

AuditResult convention_audit(std::vector<VerificationSurface*> suite) {
    if (suite.size() < 2) throw Error(ErrorKind::InvalidConfig, "the convention audit needs at least two surfaces");
    const Tolerances& tol = suite.front()->options().tol;
    std::vector<Fit> fits;
    std::vector<std::string> labels;
    std::vector<double> c1s;
    int sign_plus = 0, sign_minus = 0;
    for (VerificationSurface* vs : suite) {
        const auto& s = vs->surface();
        const auto& o = vs->options();
        Fit f;
        double sxy = 0.0;
        struct Point {
            double x, y, ex, ey;
        };
        std::vector<Point> pts;
        const auto measured = vs->measured_curves();
        for (int t = 0; t < static_cast<int>(s.simple_curves().size()); ++t) {
            const TwistVector& tv = vs->twist(t);
            for (const auto& m : measured) {
                const auto fd = twist_length_derivative_fd(s, s.simple_curves()[static_cast<std::size_t>(t)].word, m,
                                                           o.fd_step);
                const auto path = closed_geodesic_path(m, o.ode_step);
                const auto gi =
                    tensor_line_integral(path, [&](cplx z) { return tv.harmonic.mu(z); }, TensorKind::BeltramiLowered);
                const double x = 2.0 * gi.value.real(), y = fd.value;
                pts.push_back({x, y, 2.0 * gi.error_estimate, fd.error_estimate});
                f.weight += x * x;
                sxy += x * y;
            }
            for (int g = 0; g < static_cast<int>(s.simple_curves().size()); ++g) {
                if (g == t) continue;
                const double w = 2.0 * wp_inner(vs->twist(g).harmonic.mu, tv.harmonic.mu, vs->context().domain,
                                                o.quad_order)
                                           .value.imag();
                const double fd = twist_length_derivative_fd(s, s.simple_curves()[static_cast<std::size_t>(t)].word,
                                                             vs->twist(g).curve, o.fd_step)
                                      .value;
                if (std::abs(w) > 1e-3 && std::abs(fd) > 1e-3) (w * fd > 0.0 ? sign_plus : sign_minus)++;
            }
        }
        if (f.weight > 1e-6) {
            f.c1 = sxy / f.weight;
            // First-order propagation: dc1 = sum(x dy + (y - 2 c1 x) dx) / sum(x^2).
            double err = 0.0;
            for (const auto& p : pts) {
                f.residual = std::max(f.residual, std::abs(p.y - f.c1 * p.x));
                err += std::abs(p.x) * p.ey + std::abs(p.y - 2.0 * f.c1 * p.x) * p.ex;
            }
            f.error = err / f.weight;
            labels.push_back(vs->label());
            c1s.push_back(f.c1);
        }
        fits.push_back(f);
    }

    AuditResult out;
    CheckReport& r = out.report;
    r.check_id = "audit";
    std::vector<std::string> all;
    for (auto* vs : suite) all.push_back(vs->label());
    r.set("suite", all);
    r.set("informative", labels);
    r.set("c1_per_surface", c1s);
    std::vector<double> residuals;
    for (const auto& f : fits)
        if (f.weight > 1e-6) residuals.push_back(f.residual);
    r.set("fit_residuals", residuals);
    r.set("sigma_votes", std::vector<double>{double(sign_plus), double(sign_minus)});
    r.tol = tol.audit;
    if (c1s.size() < 2)
        throw Error(ErrorKind::InconsistentConventions, "fewer than two surfaces carry information about c1");
    double mean = 0.0;
    for (double c : c1s) mean += c / static_cast<double>(c1s.size());
    double spread = 0.0;
    for (double c : c1s) spread = std::max(spread, std::abs(c - mean));
    const double k = std::round(2.0 * std::log2(2.0 * std::abs(mean)));
    const double target = 0.5 * std::pow(std::sqrt(2.0), k);
    r.set("sqrt2_power", static_cast<int>(k));
    r.lhs = mean;
    r.rhs = target;
    for (const auto& f : fits) r.lhs_error = std::max(r.lhs_error, f.error);
    r.abs_err = std::abs(mean - target);
    r.rel_err = spread / std::abs(mean);
    r.set("c1_spread", spread);
    if (spread > tol.audit)
        throw Error(ErrorKind::InconsistentConventions, "c1 varies by " + fmt_g(spread) + " across the suite");
    if (sign_plus > 0 && sign_minus > 0)
        throw Error(ErrorKind::InconsistentConventions, "sigma has contradicting evaluations");
    if (sign_plus == 0 && sign_minus == 0)
        throw Error(ErrorKind::InconsistentConventions, "no evaluation fixes sigma");
    const int sigma = sign_plus > 0 ? 1 : -1;
    r.set("sigma", sigma);
    r.pass = mean > 0.0 && r.abs_err < tol.audit * std::abs(mean);
    r.notes = "lhs: fitted c1 in dl_gamma(t_delta) = c1 * 2 Re int_gamma nu_delta; rhs: 1/2 sqrt(2)^k; sigma multiplies "
              "2 Im <nu_gamma, nu_delta> with the measured curve gamma in the first slot";
    out.conventions = {mean, sigma, Conventions{}.kappa, true, r.lhs_error};
    return out;
}

std::vector<MarkedSurface> default_suite() {
    return {build_punctured_torus(2.0, 0.0), build_punctured_torus(2.0, 0.3), build_punctured_torus(1.2, 0.0),
            build_genus2({Topology::GenusTwo, {1.5, 1.5, 1.5}, {0.0, 0.0, 0.0}}),
            build_genus2({Topology::GenusTwo, {1.5, 2.0, 2.5}, {0.2, 0.0, -0.4}})};
}

const char* to_string(CheckFamily f) noexcept {
    switch (f) {
        case CheckFamily::TwistPairing: return "twist-pairing";
        case CheckFamily::LengthVariation: return "length-variation";
        case CheckFamily::Antisymmetry: return "antisymmetry";
        case CheckFamily::Symplectic: return "symplectic";
        case CheckFamily::Audit: return "audit";
    }
    return "?";
}

std::vector<CheckFamily> check_families_from_string(const std::string& which) {
    const std::vector<CheckFamily> all{CheckFamily::TwistPairing, CheckFamily::LengthVariation,
                                       CheckFamily::Antisymmetry, CheckFamily::Symplectic, CheckFamily::Audit};
    if (which == "all") return all;
    for (auto f : all)
        if (which == to_string(f)) return {f};
    throw Error(ErrorKind::InvalidConfig, "unknown check '" + which + "'");
}

SuiteRun run_suite(const std::vector<MarkedSurface>& suite, const std::vector<CheckFamily>& families,
                   const VerifyOptions& opt) {
    auto has = [&](CheckFamily f) { return std::find(families.begin(), families.end(), f) != families.end(); };
    SuiteRun run;
    const bool need_fields = has(CheckFamily::TwistPairing) || has(CheckFamily::LengthVariation) ||
                             has(CheckFamily::Symplectic) || has(CheckFamily::Audit);
    std::vector<VerificationSurface> surfaces;
    if (need_fields) {
        surfaces.reserve(suite.size());
        for (const auto& s : suite) surfaces.emplace_back(s, opt);
    }

    if (has(CheckFamily::Audit) || has(CheckFamily::LengthVariation) || has(CheckFamily::Symplectic)) {
        std::vector<VerificationSurface*> ptrs;
        for (auto& vs : surfaces) ptrs.push_back(&vs);
        try {
            AuditResult a = convention_audit(ptrs);
            run.conventions = a.conventions;
            if (has(CheckFamily::Audit)) run.reports.push_back(std::move(a.report));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InconsistentConventions && e.kind() != ErrorKind::InvalidConfig) throw;
            if (has(CheckFamily::Audit)) {
                CheckReport r;
                r.check_id = "audit";
                r.tol = opt.tol.audit;
                r.notes = e.what();
                run.reports.push_back(std::move(r));
            }
        }
    }

    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& s = suite[i];
        const int curves = static_cast<int>(s.simple_curves().size());
        if (has(CheckFamily::Antisymmetry))
            for (int g = 0; g < curves; ++g)
                for (int d = g; d < curves; ++d) run.reports.push_back(verify_antisymmetry(s, g, d, opt));
        if (!need_fields) continue;
        VerificationSurface& vs = surfaces[i];
        if (has(CheckFamily::TwistPairing)) {
            const auto phi = theta_series(vs.context(), opt.seed, opt.theta_R);
            for (int g = 0; g < curves; ++g) run.reports.push_back(verify_twist_pairing(vs, g, phi, run.conventions));
            run.reports.push_back(verify_delta_limit(vs, 0, phi, run.conventions));
        }
        if (has(CheckFamily::LengthVariation))
            for (const auto& m : vs.measured_curves())
                for (int t = 0; t < curves; ++t) run.reports.push_back(verify_length_variation(vs, m, t, run.conventions));
        if (has(CheckFamily::Symplectic))
            for (int g = 0; g < curves; ++g)
                for (int d = 0; d < curves; ++d) run.reports.push_back(wp_symplectic_on_twists(vs, g, d, run.conventions));
    }
    std::stable_sort(run.reports.begin(), run.reports.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
    return run;
}

}  // namespace wpg
