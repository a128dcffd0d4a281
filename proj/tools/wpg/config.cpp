#include "config.hpp"

#include <set>

#include <json.hpp>

#include "wpg/error.hpp"

namespace wpg::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) fail("unknown key '" + k + "' in " + where);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) fail(what + " must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& what, int lo) {
    if (!j.is_number_integer()) fail(what + " must be an integer");
    const int v = j.get<int>();
    if (v < lo) fail(what + " must be at least " + std::to_string(lo));
    return v;
}

double positive(const json& j, const std::string& what) {
    const double v = number(j, what);
    if (!(v > 0.0)) fail(what + " must be positive");
    return v;
}

std::vector<double> numbers(const json& j, const std::string& what) {
    if (!j.is_array()) fail(what + " must be an array");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number(x, what));
    return out;
}

cplx complex_value(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    const auto v = numbers(j, what);
    if (v.size() != 2) fail(what + " must be a number or [re, im]");
    return {v[0], v[1]};
}

FNCoordinates surface_spec(const json& j, const std::string& where) {
    only_keys(j, where, {"topology", "lengths", "twists"});
    if (!j.contains("topology") || !j.contains("lengths") || !j.contains("twists"))
        fail(where + " needs topology, lengths and twists");
    if (!j["topology"].is_string()) fail(where + ".topology must be a string");
    FNCoordinates fn;
    try {
        fn.topology = topology_from_string(j["topology"].get<std::string>());
    } catch (const Error& e) {
        fail(e.what());
    }
    fn.lengths = numbers(j["lengths"], where + ".lengths");
    fn.twists = numbers(j["twists"], where + ".twists");
    try {
        fn.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    return fn;
}

void tolerances(const json& j, Tolerances& t) {
    only_keys(j, "tolerances",
              {"pairing_rel", "bump_spread", "delta_floor", "delta_order", "length_abs", "antisymmetry", "disjoint",
               "symplectic_rel", "skew", "audit", "projection_residual"});
    const std::pair<const char*, double*> fields[] = {
        {"pairing_rel", &t.pairing_rel},   {"bump_spread", &t.bump_spread},
        {"delta_floor", &t.delta_floor},   {"delta_order", &t.delta_order},
        {"length_abs", &t.length_abs},     {"antisymmetry", &t.antisymmetry},
        {"disjoint", &t.disjoint},         {"symplectic_rel", &t.symplectic_rel},
        {"skew", &t.skew},                 {"audit", &t.audit},
        {"projection_residual", &t.projection_residual}};
    for (const auto& [k, p] : fields)
        if (j.contains(k)) *p = positive(j[k], std::string("tolerances.") + k);
}

Seed seed_spec(const json& j) {
    if (!j.is_array() || j.empty()) fail("theta.seed must be a non-empty array");
    Seed s;
    for (const auto& t : j) {
        only_keys(t, "theta.seed[]", {"pole", "coefficient"});
        if (!t.contains("pole")) fail("theta.seed[] needs a pole");
        s.terms.push_back({t.contains("coefficient") ? complex_value(t["coefficient"], "coefficient") : cplx(1.0),
                           complex_value(t["pole"], "pole")});
    }
    try {
        s.validate();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SeedPolesOnBoundary) throw;
        fail(e.what());
    }
    return s;
}

}  // namespace

void override_tolerances(Tolerances& t, double tol) {
    for (double* p : {&t.pairing_rel, &t.bump_spread, &t.delta_floor, &t.length_abs, &t.antisymmetry, &t.disjoint,
                      &t.symplectic_rel, &t.skew, &t.audit, &t.projection_residual})
        *p = tol;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(j, "config",
              {"surface", "surface_file", "suite", "depth", "theta", "quad_order", "fd_step", "ode_step", "bumps",
               "collar_fraction", "bump_fraction", "tolerances", "tol", "out", "which", "plot"});
    ExperimentConfig c;
    VerifyOptions& v = c.verify;
    if (j.contains("surface")) c.surface = surface_spec(j["surface"], "surface");
    if (j.contains("surface_file")) {
        if (!j["surface_file"].is_string()) fail("surface_file must be a string");
        c.surface_file = j["surface_file"].get<std::string>();
    }
    if (j.contains("suite")) {
        if (!j["suite"].is_array()) fail("suite must be an array");
        for (std::size_t i = 0; i < j["suite"].size(); ++i)
            c.suite.push_back(surface_spec(j["suite"][i], "suite[" + std::to_string(i) + "]"));
    }
    if (j.contains("depth")) c.depth = integer(j["depth"], "depth", 1);
    if (j.contains("theta")) {
        const auto& t = j["theta"];
        only_keys(t, "theta", {"R", "seed"});
        if (t.contains("R")) v.theta_R = integer(t["R"], "theta.R", 4);
        if (t.contains("seed")) v.seed = seed_spec(t["seed"]);
    }
    if (j.contains("quad_order")) v.quad_order = integer(j["quad_order"], "quad_order", 2);
    if (j.contains("fd_step")) v.fd_step = positive(j["fd_step"], "fd_step");
    if (j.contains("ode_step")) v.ode_step = positive(j["ode_step"], "ode_step");
    if (j.contains("bumps")) {
        if (!j["bumps"].is_array() || j["bumps"].empty()) fail("bumps must be a non-empty array");
        v.bumps.clear();
        for (const auto& b : j["bumps"]) {
            if (!b.is_string()) fail("bumps entries must be strings");
            v.bumps.push_back(bump_family_from_string(b.get<std::string>()));
        }
    }
    if (j.contains("collar_fraction")) v.collar_fraction = positive(j["collar_fraction"], "collar_fraction");
    if (j.contains("bump_fraction")) v.bump_fraction = positive(j["bump_fraction"], "bump_fraction");
    if (v.collar_fraction >= 1.0) fail("collar_fraction must be below 1");
    if (v.bump_fraction >= 1.0) fail("bump_fraction must be below 1");
    if (j.contains("tolerances")) tolerances(j["tolerances"], v.tol);
    if (j.contains("tol")) c.tol = positive(j["tol"], "tol");
    if (j.contains("out")) {
        if (!j["out"].is_string()) fail("out must be a string");
        c.out = j["out"].get<std::string>();
    }
    if (j.contains("which")) {
        if (!j["which"].is_string()) fail("which must be a string");
        c.which = j["which"].get<std::string>();
        check_families_from_string(c.which);
    }
    if (j.contains("plot")) {
        const auto& p = j["plot"];
        only_keys(p, "plot", {"twist_curve", "samples", "spectrum_count", "theta_max_R", "grid"});
        if (p.contains("twist_curve")) c.plot.twist_curve = integer(p["twist_curve"], "plot.twist_curve", 0);
        if (p.contains("samples")) c.plot.samples = integer(p["samples"], "plot.samples", 1);
        if (p.contains("spectrum_count")) c.plot.spectrum_count = integer(p["spectrum_count"], "plot.spectrum_count", 1);
        if (p.contains("theta_max_R")) c.plot.theta_max_R = integer(p["theta_max_R"], "plot.theta_max_R", 4);
        if (p.contains("grid")) {
            const auto& g = p["grid"];
            only_keys(g, "plot.grid", {"x0", "x1", "y0", "y1", "nx", "ny"});
            FieldGrid& G = c.plot.grid;
            c.plot.grid_set = true;
            if (g.contains("x0")) G.x0 = number(g["x0"], "plot.grid.x0");
            if (g.contains("x1")) G.x1 = number(g["x1"], "plot.grid.x1");
            if (g.contains("y0")) G.y0 = positive(g["y0"], "plot.grid.y0");
            if (g.contains("y1")) G.y1 = positive(g["y1"], "plot.grid.y1");
            if (g.contains("nx")) G.nx = integer(g["nx"], "plot.grid.nx", 2);
            if (g.contains("ny")) G.ny = integer(g["ny"], "plot.grid.ny", 2);
            if (!(G.x1 > G.x0 && G.y1 > G.y0)) fail("plot.grid must have x0 < x1 and y0 < y1");
        }
    }
    return c;
}

}  // namespace wpg::cli
