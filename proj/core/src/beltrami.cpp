#include "wpg/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wpg/error.hpp"
#include "wpg/parallel.hpp"
#include "wpg/word.hpp"

namespace wpg {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double smooth_e(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

std::vector<MoebiusMap> words_up_to(const MarkedSurface& s, int depth) {
    std::vector<MoebiusMap> out{MoebiusMap::identity()};
    for (int len = 1; len <= depth; ++len)
        for (const auto& w : reduced_words_of_length(s.rank(), len)) out.push_back(s.evaluate(w));
    return out;
}

int lift_depth(const MarkedSurface& s) { return s.rank() <= 2 ? 6 : 4; }

bool same_chart(const CollarChart& a, const CollarChart& b) {
    return a.curve.word == b.curve.word && a.width == b.width && a.frame.approx_equal(b.frame, 0.0);
}

}  // namespace

const char* to_string(BumpFamily f) noexcept {
    switch (f) {
        case BumpFamily::Smooth: return "smooth";
        case BumpFamily::Quintic: return "quintic";
        case BumpFamily::Cosine: return "cosine";
    }
    return "?";
}

BumpFamily bump_family_from_string(const std::string& s) {
    if (s == "smooth") return BumpFamily::Smooth;
    if (s == "quintic") return BumpFamily::Quintic;
    if (s == "cosine") return BumpFamily::Cosine;
    throw Error(ErrorKind::InvalidConfig, "unknown bump family '" + s + "'");
}

BumpProfile BumpProfile::around(BumpFamily family, double r, double log_half_width) {
    return {family, r * std::exp(-log_half_width), r * std::exp(log_half_width)};
}

void BumpProfile::validate() const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi > lo))
        throw Error(ErrorKind::BumpNotCompact, "bump support must satisfy 0 < lo < hi");
}

double BumpProfile::h(double r) const {
    if (r <= lo) return 0.0;
    if (r >= hi) return 1.0;
    const double t = (r - lo) / (hi - lo);
    switch (family) {
        case BumpFamily::Smooth: {
            const double a = smooth_e(t), b = smooth_e(1.0 - t);
            return a / (a + b);
        }
        case BumpFamily::Quintic: return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
        case BumpFamily::Cosine: return 0.5 * (1.0 - std::cos(M_PI * t));
    }
    return 0.0;
}

double BumpProfile::dh(double r) const {
    if (r <= lo || r >= hi) return 0.0;
    const double t = (r - lo) / (hi - lo);
    double d = 0.0;
    switch (family) {
        case BumpFamily::Smooth: {
            const double a = smooth_e(t), b = smooth_e(1.0 - t);
            const double da = a / (t * t), db = b / ((1.0 - t) * (1.0 - t));
            d = (da * b + a * db) / ((a + b) * (a + b));
            break;
        }
        case BumpFamily::Quintic: d = 30.0 * t * t * (1.0 - t) * (1.0 - t); break;
        case BumpFamily::Cosine: d = 0.5 * M_PI * std::sin(M_PI * t); break;
    }
    return d / (hi - lo);
}

cplx CollarChart::annulus_of(cplx z) const {
    const cplx u = frame.inverse().apply(z);
    return std::exp(cplx(0.0, kTwoPi) * std::log(u) / length);
}

cplx CollarChart::point_of(cplx w) const {
    const cplx L = length * std::log(w) / cplx(0.0, kTwoPi);
    return frame.apply(std::exp(L));
}

cplx CollarChart::point_derivative(cplx w) const {
    const cplx u = std::exp(length * std::log(w) / cplx(0.0, kTwoPi));
    return frame.derivative(u) * u * length / (cplx(0.0, kTwoPi) * w);
}

double CollarChart::density(double r) const {
    const double th = -length * std::log(r) / kTwoPi;
    const double s = std::sin(th);
    return length * length / (kTwoPi * kTwoPi * r * r * s * s);
}

double max_collar_width(const MarkedSurface& s, const GeodesicClass& g, int depth) {
    if (depth < 0) depth = default_domain_depth(s);
    const MoebiusMap finv = standard_frame(g.axis).inverse();
    double best = 1e300;
    for (const auto& M : words_up_to(s, depth)) {
        const MoebiusMap K = finv * M;
        const BoundaryPoint p = K.apply(g.axis.repelling()), q = K.apply(g.axis.attracting());
        auto at_zero = [](const BoundaryPoint& b) { return !b.is_infinite() && std::abs(b.x) < 1e-9; };
        auto at_inf = [](const BoundaryPoint& b) { return b.is_infinite() || std::abs(b.x) > 1e9; };
        // The axis itself, or a translate pushed to an extreme scale by a power of g. Widths are
        // invariant under that dilation, so the same translate also appears at a moderate scale.
        if (at_zero(p) || at_zero(q) || at_inf(p) || at_inf(q)) continue;
        if (p.x * q.x < 0.0) throw Error(ErrorKind::NotSimpleCurve, "a translate of the curve crosses it");
        const double a = std::min(std::abs(p.x), std::abs(q.x)), b = std::max(std::abs(p.x), std::abs(q.x));
        best = std::min(best, std::acosh((b + a) / (b - a)));
    }
    return 0.5 * best;
}

CollarChart collar_chart(const MarkedSurface& s, const GeodesicClass& g, double width) {
    if (!g.simple && s.find_simple_curve(g.word) < 0)
        throw Error(ErrorKind::NotSimpleCurve, "collars are defined for marked simple curves");
    if (!(width > 0.0)) throw Error(ErrorKind::InvalidConfig, "collar width must be positive");
    const double wmax = max_collar_width(s, g);
    if (width >= wmax)
        throw Error(ErrorKind::CollarTooWide,
                    "half-width " + std::to_string(width) + " exceeds the embedded limit " + std::to_string(wmax));
    CollarChart c;
    c.curve = g;
    c.frame = standard_frame(g.axis);
    c.length = g.length;
    c.width = width;
    const double alpha = std::acos(1.0 / std::cosh(width));
    c.r0 = std::exp(-M_PI * M_PI / c.length);
    c.r1 = std::exp(-kTwoPi * (0.5 * M_PI + alpha) / c.length);
    c.r2 = std::exp(-kTwoPi * (0.5 * M_PI - alpha) / c.length);
    return c;
}

struct BeltramiDifferential::CollarData {
    CollarChart chart;
    BumpProfile bump;
    DirichletDomain domain;
    std::vector<MoebiusMap> lifts;  // frame^-1 M for short words M
};

BeltramiDifferential BeltramiDifferential::harmonic(const QuadraticDifferential& phi) {
    BeltramiDifferential b;
    b.kind_ = Kind::Harmonic;
    b.phi_ = std::make_shared<const QuadraticDifferential>(phi);
    return b;
}

BeltramiDifferential BeltramiDifferential::collar_twist(const CollarChart& chart, const BumpProfile& bump,
                                                        const MarkedSurface& s, const DirichletDomain& D) {
    bump.validate();
    if (bump.lo <= chart.r1 || bump.hi >= chart.r2)
        throw Error(ErrorKind::BumpNotCompact, "bump support must lie inside the collar annulus");
    auto data = std::make_shared<CollarData>(CollarData{chart, bump, D, {}});
    const MoebiusMap finv = chart.frame.inverse();
    for (const auto& M : words_up_to(s, lift_depth(s))) data->lifts.push_back(finv * M);
    BeltramiDifferential b;
    b.kind_ = Kind::CollarTwist;
    b.collar_ = std::move(data);
    return b;
}

const QuadraticDifferential& BeltramiDifferential::source() const {
    if (kind_ != Kind::Harmonic) throw Error(ErrorKind::InvalidConfig, "not a harmonic Beltrami differential");
    return *phi_;
}

const CollarChart& BeltramiDifferential::chart() const {
    if (kind_ != Kind::CollarTwist) throw Error(ErrorKind::InvalidConfig, "not a collar Beltrami differential");
    return collar_->chart;
}

const BumpProfile& BeltramiDifferential::bump() const {
    if (kind_ != Kind::CollarTwist) throw Error(ErrorKind::InvalidConfig, "not a collar Beltrami differential");
    return collar_->bump;
}

cplx BeltramiDifferential::annulus_value(cplx w) const {
    const auto& c = chart();
    const double r = std::abs(w);
    const double rho = c.length / kTwoPi;
    return cplx(0.0, -0.5) * w * w * collar_->bump.dh(r) / (r * rho);
}

cplx BeltramiDifferential::operator()(cplx z) const {
    if (kind_ == Kind::Harmonic) return 2.0 * z.imag() * z.imag() * std::conj((*phi_)(z));
    const auto& cd = *collar_;
    const MoebiusMap g = cd.domain.reduce(z);
    const cplx zr = g.apply(z);
    const double ch = std::cosh(cd.chart.width);
    for (const auto& K : cd.lifts) {
        const cplx u = K.apply(zr);
        if (std::abs(u) >= ch * u.imag()) continue;
        const cplx w = std::exp(cplx(0.0, kTwoPi) * std::log(u) / cd.chart.length);
        const double r = std::abs(w);
        if (r <= cd.bump.lo || r >= cd.bump.hi) return 0.0;
        // mu(z) = mu_w(w) conj(T') / T' with T = (w o K o g).
        const cplx dT = w * cplx(0.0, kTwoPi) / (cd.chart.length * u) * K.derivative(zr) * g.derivative(z);
        return annulus_value(w) * std::conj(dT) / dT;
    }
    return 0.0;
}

cplx BeltramiDifferential::in_chart(const CollarChart& c, cplx w) const {
    if (kind_ == Kind::CollarTwist && same_chart(c, collar_->chart)) return annulus_value(w);
    const cplx dz = c.point_derivative(w);
    return (*this)(c.point_of(w)) * std::conj(dz) / dz;
}

namespace {

// Integral of F(w) r dr dtheta over lo < r < hi; the doubled rule gives the value and the
// difference from the base rule the error estimate.
QuadratureValue annulus_integral(double lo, double hi, AnnulusRule rule, const std::function<cplx(cplx)>& F,
                                 double tol) {
    auto run = [&](int radial, int angular) {
        const int panels = std::max(1, radial / 16);
        const auto& g = gauss_legendre(16);
        std::vector<std::pair<double, double>> rs;
        for (int p = 0; p < panels; ++p) {
            const double a = lo + (hi - lo) * p / panels, b = lo + (hi - lo) * (p + 1) / panels;
            for (std::size_t i = 0; i < g.x.size(); ++i)
                rs.push_back({0.5 * (a + b) + 0.5 * (b - a) * g.x[i], 0.5 * (b - a) * g.w[i]});
        }
        std::vector<cplx> rows(rs.size());
        parallel_for(rs.size(), [&](std::size_t i) {
            const double r = rs[i].first;
            cplx sum = 0.0;
            for (int k = 0; k < angular; ++k) sum += F(std::polar(r, kTwoPi * k / angular));
            rows[i] = sum * (kTwoPi / angular) * r * rs[i].second;
        });
        cplx total = 0.0;
        for (cplx v : rows) total += v;
        return total;
    };
    QuadratureValue out;
    const cplx base = run(rule.radial, rule.angular);
    out.value = run(2 * rule.radial, 2 * rule.angular);
    out.error_estimate = std::abs(out.value - base);
    if (out.error_estimate > tol * std::max(1.0, std::abs(out.value)))
        throw Error(ErrorKind::QuadratureNotConverged,
                    "annulus rule refinement changed the integral by " + std::to_string(out.error_estimate));
    return out;
}

}  // namespace

QuadratureValue area_pairing(const BeltramiDifferential& mu, const QuadraticDifferential& phi, const DirichletDomain& D,
                             int order, double tol, AnnulusRule rule) {
    if (mu.kind() == BeltramiDifferential::Kind::CollarTwist) {
        const CollarChart& c = mu.chart();
        return annulus_integral(mu.bump().lo, mu.bump().hi, rule,
                                [&](cplx w) {
                                    const cplx dz = c.point_derivative(w);
                                    return 2.0 * mu.annulus_value(w) * phi(c.point_of(w)) * dz * dz;
                                },
                                tol);
    }
    return integrate_hyperbolic(
        D, [&](cplx z) { return 2.0 * z.imag() * z.imag() * mu(z) * phi(z); }, order, tol);
}

QuadratureValue wp_inner(const BeltramiDifferential& mu1, const BeltramiDifferential& mu2, const DirichletDomain& D,
                         int order, double tol, AnnulusRule rule) {
    using K = BeltramiDifferential::Kind;
    const bool c1 = mu1.kind() == K::CollarTwist, c2 = mu2.kind() == K::CollarTwist;
    if (c1 || c2) {
        const BeltramiDifferential& host = c1 ? mu1 : mu2;
        const CollarChart& c = host.chart();
        if (!(c1 && c2) || same_chart(mu1.chart(), mu2.chart())) {
            double lo = host.bump().lo, hi = host.bump().hi;
            if (c1 && c2) {
                lo = std::max(mu1.bump().lo, mu2.bump().lo);
                hi = std::min(mu1.bump().hi, mu2.bump().hi);
                if (lo >= hi) return {};
            }
            return annulus_integral(lo, hi, rule,
                                    [&](cplx w) {
                                        return mu1.in_chart(c, w) * std::conj(mu2.in_chart(c, w)) * c.density(std::abs(w));
                                    },
                                    tol);
        }
    }
    return integrate_hyperbolic(D, [&](cplx z) { return mu1(z) * std::conj(mu2(z)); }, order, tol);
}

HarmonicProjection harmonic_projection(const BeltramiDifferential& mu, const std::vector<QuadraticDifferential>& basis,
                                       const DirichletDomain& D, int order, AnnulusRule rule) {
    const int n = static_cast<int>(basis.size());
    if (n == 0) throw Error(ErrorKind::SingularGram, "empty basis");
    // (conj(phi_k)/g, phi_j) = int 4 y^4 phi_j conj(phi_k) dA_hyp, at two orders.
    auto gram_at = [&](int o) {
        const DomainQuadrature q(D, o);
        const auto& nodes = q.nodes();
        std::vector<Eigen::VectorXcd> vals(nodes.size());
        parallel_for(nodes.size(), [&](std::size_t i) {
            Eigen::VectorXcd v(n);
            for (int k = 0; k < n; ++k) v(k) = basis[static_cast<std::size_t>(k)](nodes[i].z);
            vals[i] = v;
        });
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double y2 = nodes[i].z.imag() * nodes[i].z.imag();
            G += (4.0 * nodes[i].weight * y2 * y2) * vals[i] * vals[i].adjoint();
        }
        return G;
    };
    const Eigen::MatrixXcd G = gram_at(order + 4);
    const double gerr = (G - gram_at(order)).cwiseAbs().maxCoeff();
    if (gerr > 1e-8 * std::max(1.0, G.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::QuadratureNotConverged, "projection Gram changed by " + std::to_string(gerr));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    const auto& sv = svd.singularValues();
    const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : INFINITY;
    if (!(cond < 1e8)) throw Error(ErrorKind::SingularGram, "Gram condition number " + std::to_string(cond));
    Eigen::VectorXcd b(n);
    for (int j = 0; j < n; ++j) b(j) = area_pairing(mu, basis[static_cast<std::size_t>(j)], D, order, 1e-8, rule).value;
    const Eigen::VectorXcd c = G.fullPivLu().solve(b);
    QuadraticDifferential phi = QuadraticDifferential::zero(basis.front().space());
    for (int k = 0; k < n; ++k) phi = phi + std::conj(c(k)) * basis[static_cast<std::size_t>(k)];
    return {BeltramiDifferential::harmonic(phi), c, cond};
}

std::string field_csv(const BeltramiDifferential& mu, const QuadraticDifferential& phi, const FieldGrid& grid) {
    if (grid.nx < 1 || grid.ny < 1 || !(grid.y0 > 0.0) || !(grid.y1 >= grid.y0) || !(grid.x1 >= grid.x0))
        throw Error(ErrorKind::InvalidConfig, "field grid must have positive counts and lie in H");
    const std::size_t n = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
    std::vector<std::string> rows(n);
    parallel_for(n, [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nx));
        const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nx));
        const double x = grid.nx > 1 ? grid.x0 + (grid.x1 - grid.x0) * i / (grid.nx - 1) : grid.x0;
        const double y = grid.ny > 1 ? grid.y0 + (grid.y1 - grid.y0) * j / (grid.ny - 1) : grid.y0;
        const cplx m = mu(cplx(x, y)), p = phi(cplx(x, y));
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x, y, m.real(), m.imag(), p.real(),
                      p.imag());
        rows[k] = buf;
    });
    std::string out = "x,y,re_mu,im_mu,re_phi,im_phi\n";
    for (const auto& r : rows) out += r;
    return out;
}

}  // namespace wpg
