#include "wpg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "wpg/error.hpp"
#include "wpg/parallel.hpp"

namespace wpg {

namespace {

GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[static_cast<std::size_t>(i)] = x;
        r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Gauss nodes mapped to [a, b].
template <class F>
void on_interval(const GaussRule& g, double a, double b, F&& f) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.x.size(); ++i) f(m + h * g.x[i], h * g.w[i]);
}

// Signed hyperbolic distance from the foot of the perpendicular to a point x (Klein) on the
// side with unit normal nrm at distance a, positive counterclockwise about the base.
double side_arclength(cplx x, cplx nrm, double a) { return std::atanh(std::tan(std::arg(x / nrm)) * std::sinh(a)); }

int panels_for(double extent, double panel) { return std::max(1, static_cast<int>(std::ceil(extent / panel))); }

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "quadrature order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

DomainQuadrature::DomainQuadrature(const DirichletDomain& D, int order) : order_(order) {
    const GaussRule& g = gauss_legendre(order);
    const auto& V = D.vertices();
    const std::size_t n = V.size();
    const double Y = D.cusp_height();

    std::vector<const CuspWedge*> wedge_at(n, nullptr);
    for (const auto& w : D.cusps()) wedge_at[w.vertex] = &w;

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (V[i].ideal && V[j].ideal)
            throw Error(ErrorKind::QuadratureNotConverged, "adjacent ideal vertices are not supported");
        if (!V[i].ideal && !V[j].ideal) {
            // Polar coordinates about the base. The side lies on the Klein line <x, n> = c at
            // hyperbolic distance a from the base; it is parametrized by the signed arclength s
            // from the foot of the perpendicular, which keeps the outer radius smooth.
            const cplx pa = V[i].klein, pb = V[j].klein;
            const cplx d = pb - pa;
            cplx nrm(d.imag(), -d.real());
            nrm /= std::abs(nrm);
            double c = pa.real() * nrm.real() + pa.imag() * nrm.imag();
            if (c < 0) {
                nrm = -nrm;
                c = -c;
            }
            const double a = std::atanh(c);
            const double th_n = std::arg(nrm);
            const double s0 = side_arclength(pa, nrm, a), s1 = side_arclength(pb, nrm, a);
            const double sh = std::sinh(a);
            const int ps = panels_for(s1 - s0, 0.5);
            for (int p = 0; p < ps; ++p) {
                on_interval(g, s0 + (s1 - s0) * p / ps, s0 + (s1 - s0) * (p + 1) / ps, [&](double sv, double ws) {
                    const double ts = std::tanh(sv);
                    const double th = th_n + std::atan2(ts, sh);
                    const double dth = (1.0 - ts * ts) * sh / (sh * sh + ts * ts);
                    const double rho_max = std::acosh(std::cosh(a) * std::cosh(sv));
                    const cplx e = std::polar(1.0, th);
                    const int pr = panels_for(rho_max, 0.75);
                    for (int q = 0; q < pr; ++q) {
                        on_interval(g, rho_max * q / pr, rho_max * (q + 1) / pr, [&](double rho, double wrho) {
                            const cplx z = D.from_disk(std::tanh(0.5 * rho) * e);
                            nodes_.push_back({z, ws * dth * wrho * std::sinh(rho)});
                        });
                    }
                });
            }
            continue;
        }
        // One ideal vertex: work in its cusp chart.
        const std::size_t iv = V[i].ideal ? i : j;
        const std::size_t fv = V[i].ideal ? j : i;
        const CuspWedge& w = *wedge_at[iv];
        const MoebiusMap to_cusp = w.normalizer.inverse();
        const cplx zb = to_cusp.apply(D.base());
        const cplx zq = to_cusp.apply(V[fv].z);
        if (zb.imag() >= Y || zq.imag() >= Y)
            throw Error(ErrorKind::QuadratureNotConverged, "cusp truncation height is below the domain");
        const double xa = std::min(zb.real(), zq.real()), xb = std::max(zb.real(), zq.real());
        if (xb - xa < 1e-14) continue;
        // The arc from zb to zq lies on |zeta - cc| = R; its polar angle is the outer variable,
        // which absorbs the square-root behaviour of the arc height near a steep end.
        const double cc = (std::norm(zq) - std::norm(zb)) / (2.0 * (zq.real() - zb.real()));
        const double R = std::abs(zb - cc);
        const double pb = std::arg(zb - cc), pq = std::arg(zq - cc);
        const double p0 = std::min(pb, pq), p1 = std::max(pb, pq);
        cuts_.push_back({w.normalizer, xa, xb, Y});
        const int pp = panels_for(p1 - p0, 0.25);
        for (int p = 0; p < pp; ++p) {
            on_interval(g, p0 + (p1 - p0) * p / pp, p0 + (p1 - p0) * (p + 1) / pp, [&](double phi, double wphi) {
                const double x = cc + R * std::cos(phi);
                const double y0 = R * std::sin(phi);
                const double wx = wphi * y0;  // |dx / dphi|
                // Geometric panels in y from the arc up to Y.
                const int py = std::min(10, std::max(2, static_cast<int>(std::ceil(std::log2(Y / y0)))));
                const double ratio = std::pow(Y / y0, 1.0 / py);
                double lo = y0;
                for (int k = 0; k < py; ++k) {
                    const double hi = (k + 1 == py) ? Y : lo * ratio;
                    on_interval(g, lo, hi, [&](double y, double wy) {
                        nodes_.push_back({w.normalizer.apply(cplx(x, y)), wx * wy / (y * y)});
                    });
                    lo = hi;
                }
            });
        }
    }
}

double DomainQuadrature::area() const {
    double a = 0.0;
    for (const auto& nd : nodes_) a += nd.weight;
    for (const auto& c : cuts_) a += (c.x_right - c.x_left) / c.height;
    return a;
}

cplx integrate(const DomainQuadrature& q, const std::function<cplx(cplx)>& F) {
    const auto& nodes = q.nodes();
    std::vector<cplx> vals(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t k) { vals[k] = F(nodes[k].z); });
    cplx s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) s += nodes[k].weight * vals[k];
    return s;
}

double cusp_tail_bound(const DomainQuadrature& q, const std::function<cplx(cplx)>& F) {
    double bound = 0.0;
    for (const auto& c : q.cuts()) {
        double m = 0.0;
        for (int k = 0; k <= 16; ++k) {
            const double x = c.x_left + (c.x_right - c.x_left) * k / 16.0;
            m = std::max(m, std::abs(F(c.normalizer.apply(cplx(x, c.height)))));
        }
        bound += m * (c.x_right - c.x_left) / c.height;
    }
    return bound;
}

QuadratureValue integrate_hyperbolic(const DirichletDomain& D, const std::function<cplx(cplx)>& F, int order,
                                     double tol) {
    const DomainQuadrature q1(D, order), q2(D, order + 4);
    QuadratureValue r;
    r.value = integrate(q2, F);
    r.error_estimate = std::abs(r.value - integrate(q1, F));
    r.tail_bound = cusp_tail_bound(q2, F);
    if (r.error_estimate > tol * std::max(1.0, std::abs(r.value)))
        throw Error(ErrorKind::QuadratureNotConverged,
                    "order refinement changed the integral by " + std::to_string(r.error_estimate));
    return r;
}

}  // namespace wpg
