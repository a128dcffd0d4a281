#include "wpg/theta.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wpg/error.hpp"
#include "wpg/parallel.hpp"
#include "wpg/quadrature.hpp"

namespace wpg {

namespace {

cplx sq(cplx v) { return v * v; }

// sum_k (v + k)^-4 over all integers k.
cplx periodized_quartic(cplx v) {
    const cplx s = 1.0 / sq(std::sin(M_PI * v));
    return std::pow(M_PI, 4) / 3.0 * s * (3.0 * s - 2.0);
}

struct Element {
    MoebiusMap m;
    int length;
};

// All reduced words of length <= R as matrices, with their lengths.
std::vector<Element> words_up_to(const MarkedSurface& s, int R) {
    std::vector<MoebiusMap> letters;
    for (int c = 0; c < 2 * s.rank(); ++c) {
        const MoebiusMap& g = s.generators()[static_cast<std::size_t>(c / 2)];
        letters.push_back((c & 1) ? g.inverse() : g);
    }
    std::vector<Element> out{{MoebiusMap::identity(), 0}};
    std::vector<std::pair<MoebiusMap, int>> layer{{MoebiusMap::identity(), -1}};
    for (int n = 1; n <= R; ++n) {
        std::vector<std::pair<MoebiusMap, int>> next;
        next.reserve(layer.size() * static_cast<std::size_t>(2 * s.rank() - 1));
        for (const auto& [m, last] : layer)
            for (int c = 0; c < 2 * s.rank(); ++c) {
                if (last >= 0 && c == (last ^ 1)) continue;
                next.push_back({m * letters[static_cast<std::size_t>(c)], c});
                out.push_back({next.back().first, n});
            }
        layer = std::move(next);
    }
    return out;
}

// Removes numerically equal keys, keeping the shortest word. Keys are compared with a
// relative tolerance, scanning back over the run of entries whose first key is within it.
template <std::size_t K>
std::vector<Element> dedupe(std::vector<std::pair<std::array<double, K>, Element>> items) {
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-7 * std::max({1.0, std::abs(a), std::abs(b)}); };
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < items.size(); ++i) {
        bool dup = false;
        for (std::size_t j = kept.size(); j-- > 0;) {
            const auto& other = items[kept[j]];
            if (!close(other.first[0], items[i].first[0])) break;
            bool all = true;
            for (std::size_t k = 1; k < K; ++k) all = all && close(other.first[k], items[i].first[k]);
            if (all) {
                auto& e = items[kept[j]].second;
                e.length = std::min(e.length, items[i].second.length);
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(i);
    }
    std::vector<Element> out;
    out.reserve(kept.size());
    for (std::size_t i : kept) out.push_back(items[i].second);
    return out;
}

struct RawSums {
    std::vector<cplx> at_R, at_R_minus_2;
};

RawSums raw_sums(const MarkedSurface& s, const DirichletDomain& D, const Seed& seed, int R,
                 const std::vector<cplx>& points) {
    seed.validate();
    if (R < 4) throw Error(ErrorKind::InvalidConfig, "theta truncation must be at least 4");
    if (R > max_theta_truncation(s))
        throw Error(ErrorKind::InvalidConfig, "theta truncation above " + std::to_string(max_theta_truncation(s)) +
                                                  " would enumerate too many words");
    const auto words = words_up_to(s, R);
    RawSums out{std::vector<cplx>(points.size()), std::vector<cplx>(points.size())};

    if (s.topology() == Topology::PuncturedTorus) {
        // Cosets of the cusp stabilizer <P> are labelled by the bottom row of N^-1 M, where N
        // conjugates P to a unit translation.
        const MoebiusMap N = D.cusps().front().normalizer;
        const MoebiusMap Ninv = N.inverse();
        std::vector<std::pair<std::array<double, 2>, Element>> keyed;
        keyed.reserve(words.size());
        for (const auto& e : words) {
            const MoebiusMap X = Ninv * e.m;
            double c = X.c(), d = X.d();
            if (c < 0.0 || (c == 0.0 && d < 0.0)) c = -c, d = -d;
            keyed.push_back({{c, d}, {X, e.length}});
        }
        const auto reps = dedupe(std::move(keyed));
        // Chart seed: sum_t a_t (a - p c)^-4 (zeta - q_t)^-4 with q_t = N^-1 p_t.
        std::vector<std::pair<cplx, cplx>> chart_terms;
        for (const auto& t : seed.terms) {
            const cplx alpha = N.a() - t.pole * N.c();
            const cplx q = -(N.b() - t.pole * N.d()) / alpha;
            chart_terms.push_back({t.coefficient / std::pow(alpha, 4), q});
        }
        parallel_for(points.size(), [&](std::size_t i) {
            const cplx z = points[i];
            cplx full = 0.0, low = 0.0;
            for (const auto& e : reps) {
                const cplx u = e.m.apply(z);
                cplx v = 0.0;
                for (const auto& [a, q] : chart_terms) v += a * periodized_quartic(u - q);
                const cplx term = v * sq(e.m.derivative(z));
                full += term;
                if (e.length <= R - 2) low += term;
            }
            out.at_R[i] = full;
            out.at_R_minus_2[i] = low;
        });
        return out;
    }

    std::vector<std::pair<std::array<double, 4>, Element>> keyed;
    keyed.reserve(words.size());
    for (const auto& e : words) keyed.push_back({{e.m.a(), e.m.b(), e.m.c(), e.m.d()}, e});
    const auto reps = dedupe(std::move(keyed));
    parallel_for(points.size(), [&](std::size_t i) {
        const cplx z = points[i];
        cplx full = 0.0, low = 0.0;
        for (const auto& e : reps) {
            const cplx term = seed(e.m.apply(z)) * sq(e.m.derivative(z));
            full += term;
            if (e.length <= R - 2) low += term;
        }
        out.at_R[i] = full;
        out.at_R_minus_2[i] = low;
    });
    return out;
}

}  // namespace

cplx Seed::operator()(cplx z) const {
    cplx v = 0.0;
    for (const auto& t : terms) v += t.coefficient / std::pow(z - t.pole, 4);
    return v;
}

bool Seed::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const SeedTerm& t) { return t.coefficient == 0.0; });
}

void Seed::validate() const {
    for (const auto& t : terms) {
        if (!std::isfinite(t.pole.real()) || !std::isfinite(t.pole.imag()) ||
            std::abs(t.pole.imag()) <= 1e-12 * std::max(1.0, std::abs(t.pole)))
            throw Error(ErrorKind::SeedPolesOnBoundary, "seed pole on the real line");
        if (t.pole.imag() > 0.0) throw Error(ErrorKind::InvalidConfig, "seed poles must lie in the lower half-plane");
    }
}

FieldContext make_field_context(const MarkedSurface& s, FieldOptions opt) {
    DirichletDomain D = dirichlet_domain(s, default_base_point(s), opt.domain);
    auto space = build_form_space(s, D);
    const int dim = space->dimension();
    auto gram_at = [&](int order) {
        const DomainQuadrature q(D, order);
        const auto& nodes = q.nodes();
        std::vector<Eigen::VectorXcd> vals(nodes.size());
        parallel_for(nodes.size(), [&](std::size_t i) { vals[i] = space->evaluate(nodes[i].z); });
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, dim);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double y2 = nodes[i].z.imag() * nodes[i].z.imag();
            G += (nodes[i].weight * y2 * y2) * vals[i] * vals[i].adjoint();
        }
        return G;
    };
    const Eigen::MatrixXcd G1 = gram_at(opt.order), G2 = gram_at(opt.order + 4);
    const double err = (G2 - G1).cwiseAbs().maxCoeff();
    if (err > 1e-8 * G2.cwiseAbs().maxCoeff())
        throw Error(ErrorKind::QuadratureNotConverged, "Gram matrix changed by " + std::to_string(err));
    return {s, std::move(D), std::move(space), G2, err, opt.order};
}

QuadraticDifferential QuadraticDifferential::basis(std::shared_ptr<const FormSpace> space, int k) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space->dimension());
    c(k) = 1.0;
    return {std::move(space), std::move(c)};
}

QuadraticDifferential QuadraticDifferential::zero(std::shared_ptr<const FormSpace> space) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space->dimension());
    return {std::move(space), std::move(c)};
}

QuadraticDifferential operator+(const QuadraticDifferential& a, const QuadraticDifferential& b) {
    if (a.space_ != b.space_) throw Error(ErrorKind::InvalidConfig, "quadratic differentials on different surfaces");
    return {a.space_, a.coeffs_ + b.coeffs_};
}

QuadraticDifferential operator*(cplx a, const QuadraticDifferential& b) { return {b.space_, a * b.coeffs_}; }

std::vector<cplx> theta_probes(const DirichletDomain& D, int count) {
    std::vector<cplx> out;
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) out.push_back(D.from_disk(std::polar(0.1 + 0.3 * k / count, golden * k)));
    return out;
}

std::vector<cplx> raw_theta_series(const MarkedSurface& s, const DirichletDomain& D, const Seed& seed, int R,
                                   const std::vector<cplx>& points) {
    return raw_sums(s, D, seed, R, points).at_R;
}

double raw_automorphy_defect(const MarkedSurface& s, const DirichletDomain& D, const Seed& seed, int R) {
    const auto probes = theta_probes(D);
    std::vector<cplx> pts = probes;
    for (const auto& g : s.generators())
        for (cplx z : probes) pts.push_back(g.apply(z));
    const auto v = raw_theta_series(s, D, seed, R, pts);
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) scale = std::max(scale, std::abs(v[i]));
    for (std::size_t g = 0; g < s.generators().size(); ++g)
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const cplx moved = v[(g + 1) * probes.size() + i] * sq(s.generators()[g].derivative(probes[i]));
            worst = std::max(worst, std::abs(moved - v[i]));
        }
    return scale > 0.0 ? worst / scale : worst;
}

int default_theta_truncation(const MarkedSurface& s) { return s.rank() <= 2 ? 10 : 6; }

int max_theta_truncation(const MarkedSurface& s) { return s.rank() <= 2 ? 13 : 7; }

QuadraticDifferential theta_series(const FieldContext& ctx, const Seed& seed, int R) {
    if (R < 0) R = default_theta_truncation(ctx.surface);
    seed.validate();
    if (R < 4) throw Error(ErrorKind::InvalidConfig, "theta truncation must be at least 4");
    const auto& space = ctx.space;
    if (seed.is_zero()) {
        auto q = QuadraticDifferential::zero(space);
        q.truncation_ = R;
        return q;
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(space->dimension());
    for (const auto& t : seed.terms) rhs += std::conj(t.coefficient) * space->evaluate(std::conj(t.pole));
    rhs *= M_PI / 12.0;
    const Eigen::VectorXcd c = ctx.gram.ldlt().solve(rhs).conjugate();
    QuadraticDifferential q(space, c);
    q.truncation_ = R;

    const auto probes = theta_probes(ctx.domain);
    const RawSums raw = raw_sums(ctx.surface, ctx.domain, seed, R, probes);
    double scale = 0.0, diff = 0.0, inc = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const cplx v = q(probes[i]);
        scale = std::max(scale, std::abs(v));
        diff = std::max(diff, std::abs(v - raw.at_R[i]));
        inc = std::max(inc, std::abs(raw.at_R[i] - raw.at_R_minus_2[i]));
    }
    q.truncation_error_ = diff;
    q.raw_increment_ = inc;
    if (diff > std::max(1e-6 * scale, 10.0 * inc))
        throw Error(ErrorKind::NotConverged, "truncated series differs from its limit by " + std::to_string(diff) +
                                                 " (last increment " + std::to_string(inc) + ")");
    return q;
}

std::vector<QuadraticDifferential> theta_basis(const FieldContext& ctx, int R) {
    std::vector<QuadraticDifferential> out;
    const double shifts[] = {0.0, 1.0, -1.0};
    for (int k = 0; k < ctx.space->dimension(); ++k) out.push_back(theta_series(ctx, Seed::pole(cplx(shifts[k], -2.0)), R));
    return out;
}

}  // namespace wpg
