#include "wpg/surface.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"
#include "wpg/hexagon.hpp"

namespace wpg {

const char* to_string(Topology t) noexcept {
    return t == Topology::PuncturedTorus ? "punctured_torus" : "genus_two";
}

Topology topology_from_string(const std::string& s) {
    if (s == "punctured_torus") return Topology::PuncturedTorus;
    if (s == "genus_two") return Topology::GenusTwo;
    throw Error(ErrorKind::UnsupportedTopology, "unknown topology '" + s + "'");
}

void FNCoordinates::validate() const {
    const std::size_t n = curve_count(topology);
    if (lengths.size() != n || twists.size() != n)
        throw Error(ErrorKind::InvalidLength, std::string(to_string(topology)) + " needs " +
                                                  std::to_string(n) + " lengths and twists");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::InvalidLength, "lengths must be positive");
    for (double t : twists)
        if (!std::isfinite(t)) throw Error(ErrorKind::InvalidLength, "twists must be finite");
}

namespace {

// 2x2 real matrices of determinant +-1; reflections act on conj(z).
struct Mat {
    double a, b, c, d;
};

Mat mul(const Mat& p, const Mat& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

// Reflection in the semicircle |z - c| = r.
Mat reflection(double c, double r) { return {c / r, (r * r - c * c) / r, 1.0 / r, -c / r}; }

MoebiusMap to_map(const Mat& m) { return {m.a, m.b, m.c, m.d}; }

std::vector<MarkedCurve> torus_curves() {
    return {
        {"A", GroupWord::generator(0), 0, {{1, true, -1.0}}},
        {"B", GroupWord::generator(1), -1, {{0, true, 1.0}}},
    };
}

// Generators A1, B1, A2, B2 = t3, C3, C2^-1, t2 (pants boundary elements C_i, stable letters t_i).
std::vector<MarkedCurve> genus2_curves() {
    const GroupWord b1 = GroupWord::generator(1), a2 = GroupWord::generator(2);
    return {
        {"gamma1", b1.inverse() * a2, 0, {{0, true, -1.0}, {3, true, -1.0}}},
        {"gamma2", a2.inverse(), 1, {{3, false, 1.0}}},
        {"gamma3", b1, 2, {{0, false, 1.0}}},
    };
}

std::vector<std::string> names_for(Topology t) {
    if (t == Topology::PuncturedTorus) return {"A", "B"};
    return {"A1", "B1", "A2", "B2"};
}

}  // namespace

std::vector<GroupWord> MarkedSurface::fn_curve_words() const {
    std::vector<GroupWord> out;
    for (const auto& c : curves_)
        if (c.fn_index >= 0) out.push_back(c.word);
    return out;
}

MoebiusMap MarkedSurface::evaluate(const GroupWord& w) const {
    MoebiusMap m;
    for (int code : w.letters()) {
        const auto k = static_cast<std::size_t>(code / 2);
        if (k >= gens_.size()) throw Error(ErrorKind::InvalidWord, "letter outside generator set");
        m = m * ((code & 1) ? gens_[k].inverse() : gens_[k]);
    }
    return m;
}

int MarkedSurface::find_simple_curve(const GroupWord& w) const {
    const GroupWord key = w.canonical_class();
    for (std::size_t i = 0; i < curves_.size(); ++i)
        if (curves_[i].word.canonical_class() == key) return static_cast<int>(i);
    return -1;
}

GroupWord MarkedSurface::relator() const {
    GroupWord r;
    for (int k = 0; k + 1 < rank(); k += 2) {
        const GroupWord x = GroupWord::generator(k), y = GroupWord::generator(k + 1);
        r = r * x * y * x.inverse() * y.inverse();
    }
    return r;
}

double MarkedSurface::relator_defect() const {
    if (topology() == Topology::PuncturedTorus) return std::abs(commutator_trace(gens_[0], gens_[1]) + 2.0);
    const MoebiusMap r = evaluate(relator());
    return std::max({std::abs(r.a() - 1.0), std::abs(r.b()), std::abs(r.c()), std::abs(r.d() - 1.0)});
}

MarkedSurface MarkedSurface::from_generators(const FNCoordinates& fn, std::vector<MoebiusMap> generators) {
    fn.validate();
    MarkedSurface s;
    s.fn_ = fn;
    s.names_ = names_for(fn.topology);
    if (generators.size() != s.names_.size())
        throw Error(ErrorKind::UnsupportedTopology, "generator count does not match topology");
    s.gens_ = std::move(generators);
    s.curves_ = fn.topology == Topology::PuncturedTorus ? torus_curves() : genus2_curves();
    return s;
}

MarkedSurface build_punctured_torus(double length, double twist) {
    FNCoordinates fn{Topology::PuncturedTorus, {length}, {0.0}};
    fn.validate();
    const double h = length / 2.0;
    // B0 has its axis on the unit circle, meeting the A axis at i orthogonally, with
    // sinh(m/2) sinh(l/2) = 1 so that tr[A, B0] = -2.
    const double sm = 1.0 / std::sinh(h);
    const double cm = std::sqrt(1.0 + sm * sm);
    const MoebiusMap a(std::exp(h), 0.0, 0.0, std::exp(-h));
    const MoebiusMap b0(cm, sm, sm, cm);
    MarkedSurface s = MarkedSurface::from_generators(fn, {a, b0});
    return twist == 0.0 ? s : twist_deform(s, GroupWord::generator(0), twist);
}

MarkedSurface build_genus2(const FNCoordinates& fn) {
    if (fn.topology != Topology::GenusTwo)
        throw Error(ErrorKind::UnsupportedTopology, "build_genus2 needs genus_two coordinates");
    fn.validate();
    const double a1 = fn.lengths[0] / 2, a2 = fn.lengths[1] / 2, a3 = fn.lengths[2] / 2;
    const auto b = hexagon_alternate_sides(a1, a2, a3);
    for (double v : b)
        if (!std::isfinite(v) || !(v > 0.0)) throw Error(ErrorKind::HexagonDegenerate, "degenerate hexagon");
    // Hexagon with seam s3 on the imaginary axis, boundary arc L1 on |z| = 1 and L2 on |z| = e^{b3};
    // seams s2 and s1 are the circles orthogonal to L1 and L2 at distance a1 and a2 along them.
    const double e3 = std::exp(b[2]);
    const Mat r3{-1.0, 0.0, 0.0, 1.0};
    const Mat r2 = reflection(1.0 / std::tanh(a1), 1.0 / std::sinh(a1));
    const Mat r1 = reflection(e3 / std::tanh(a2), e3 / std::sinh(a2));
    const MoebiusMap c2 = to_map(mul(r3, r1));
    const MoebiusMap c3 = to_map(mul(r1, r2));
    // Reflections in the three boundary geodesics L1, L2, L3 (L3 = axis of C3).
    const Mat rl1{0.0, 1.0, 1.0, 0.0};
    const Mat rl2{0.0, e3, 1.0 / e3, 0.0};
    const auto ax3 = axis(c3);
    const double p = ax3.repelling().x, q = ax3.attracting().x;
    const Mat rl3 = reflection(0.5 * (p + q), 0.5 * std::abs(q - p));
    // The mirror pants is the image under reflection in L1; stable letters glue L2 and L3 with seam
    // feet matched, which is the zero-twist reference.
    const MoebiusMap t2 = to_map(mul(rl1, rl2));
    const MoebiusMap t3 = to_map(mul(rl1, rl3));
    FNCoordinates zero = fn;
    std::fill(zero.twists.begin(), zero.twists.end(), 0.0);
    MarkedSurface s = MarkedSurface::from_generators(zero, {t3, c3, c2.inverse(), t2});
    for (std::size_t i = 0; i < 3; ++i)
        if (fn.twists[i] != 0.0) s = twist_deform(s, s.simple_curves()[i].word, fn.twists[i]);
    return s;
}

MarkedSurface build_surface(const FNCoordinates& fn) {
    if (fn.topology == Topology::PuncturedTorus) {
        fn.validate();
        return build_punctured_torus(fn.lengths[0], fn.twists[0]);
    }
    return build_genus2(fn);
}

MarkedSurface twist_deform(const MarkedSurface& s, const GroupWord& curve, double dtau) {
    const int idx = s.find_simple_curve(curve);
    if (idx < 0) throw Error(ErrorKind::NotSimpleCurve, "curve is not a marked simple curve");
    MarkedSurface out = s;
    if (dtau == 0.0) return out;
    const MarkedCurve& c = s.curves_[static_cast<std::size_t>(idx)];
    const MoebiusMap cm = s.evaluate(c.word);
    for (const TwistAction& act : c.action) {
        const MoebiusMap t = translate_along_axis(cm, act.sign * dtau);
        auto& g = out.gens_[static_cast<std::size_t>(act.generator)];
        g = act.left ? t * g : g * t;
    }
    if (c.fn_index >= 0) out.fn_.twists[static_cast<std::size_t>(c.fn_index)] += dtau;
    return out;
}

}  // namespace wpg
