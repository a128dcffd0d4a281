#include "wpg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wpg/error.hpp"

namespace wpg {

namespace {

constexpr double kMergeTol = 1e-10;
constexpr double kIdealTol = 1e-9;
constexpr double kClipTol = 1e-13;

struct Line {
    cplx w;  // disk image of g * base; the half-plane is <x, w> <= |w|^2 in Klein coordinates
    GroupWord word;
};

struct PolyVertex {
    cplx x;
    int label;  // line index of the edge starting here, -1 for the initial box
};

double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

cplx disk_map(cplx z, cplx b) { return (z - b) / (z - std::conj(b)); }
cplx klein_from_disk(cplx w) { return 2.0 * w / (1.0 + std::norm(w)); }
cplx disk_from_klein(cplx x) { return x / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(x)))); }

// Reduced words of length 1..depth, generated by prepending letters so that g * base is
// obtained by applying one generator at a time (isometries do not amplify roundoff).
// Keeps lines whose Klein distance from the origin is below cut.
std::vector<Line> collect_lines(const MarkedSurface& s, cplx base, int depth, double cut) {
    std::vector<MoebiusMap> letters;
    for (int c = 0; c < 2 * s.rank(); ++c) {
        const MoebiusMap& g = s.generators()[static_cast<std::size_t>(c / 2)];
        letters.push_back((c & 1) ? g.inverse() : g);
    }
    std::vector<Line> out;
    std::vector<int> rev;  // word letters, last element first
    auto dfs = [&](auto&& self, cplx p) -> void {
        if (static_cast<int>(rev.size()) == depth) return;
        for (int c = 0; c < static_cast<int>(letters.size()); ++c) {
            if (!rev.empty() && c == (rev.back() ^ 1)) continue;
            const cplx q = letters[static_cast<std::size_t>(c)].apply(p);
            rev.push_back(c);
            const cplx w = disk_map(q, base);
            const double r = std::abs(w);
            if (r > 1e-6 && r < cut) out.push_back({w, GroupWord(std::vector<int>(rev.rbegin(), rev.rend()))});
            self(self, q);
            rev.pop_back();
        }
    };
    dfs(dfs, base);
    std::stable_sort(out.begin(), out.end(), [](const Line& a, const Line& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word.letters() < b.word.letters();
    });
    // Different words for the same element (via the relator) give the same line up to
    // roundoff; a near-copy would clip a sliver, so only the shortest word is kept.
    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return out[i].w.real() < out[j].w.real(); });
    std::vector<char> drop(out.size(), 0);
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t c = a + 1; c < order.size() && out[order[c]].w.real() - out[order[a]].w.real() < 1e-9; ++c) {
            const std::size_t i = order[a], j = order[c];
            if (std::abs(out[i].w - out[j].w) < 1e-9) drop[std::max(i, j)] = 1;
        }
    }
    std::vector<Line> kept;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(out[i]));
    return kept;
}

std::vector<PolyVertex> clip(const std::vector<PolyVertex>& poly, cplx w, int label) {
    const double c = std::norm(w);
    const std::size_t n = poly.size();
    std::vector<double> f(n);
    bool any_out = false;
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = dot(poly[i].x, w) - c;
        any_out = any_out || f[i] > kClipTol;
    }
    if (!any_out) return poly;
    std::vector<PolyVertex> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const bool in_i = f[i] <= kClipTol, in_j = f[j] <= kClipTol;
        const auto cross = [&] { return poly[i].x + (f[i] / (f[i] - f[j])) * (poly[j].x - poly[i].x); };
        if (in_i) {
            out.push_back(poly[i]);
            if (!in_j) out.push_back({cross(), label});
        } else if (in_j) {
            out.push_back({cross(), poly[i].label});
        }
    }
    return out;
}

std::vector<PolyVertex> merge_close(std::vector<PolyVertex> poly) {
    bool changed = true;
    while (changed && poly.size() > 2) {
        changed = false;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const std::size_t j = (i + 1) % poly.size();
            if (std::abs(poly[i].x - poly[j].x) < kMergeTol) {
                poly[i].label = poly[j].label;
                poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
        }
    }
    return poly;
}

struct Polygon {
    std::vector<PolyVertex> verts;
    std::vector<Line> lines;
};

Polygon intersect_halfplanes(const MarkedSurface& s, cplx base, int depth, double cut) {
    Polygon P;
    P.lines = collect_lines(s, base, depth, cut);
    P.verts = {{{-2, -2}, -1}, {{2, -2}, -1}, {{2, 2}, -1}, {{-2, 2}, -1}};
    double rmax = 2.0 * std::sqrt(2.0);
    for (std::size_t k = 0; k < P.lines.size(); ++k) {
        if (std::abs(P.lines[k].w) >= rmax) continue;
        auto next = clip(P.verts, P.lines[k].w, static_cast<int>(k));
        if (next.size() != P.verts.size() || next.data() != P.verts.data()) {
            P.verts = std::move(next);
            rmax = 0.0;
            for (const auto& v : P.verts) rmax = std::max(rmax, std::abs(v.x));
        }
    }
    P.verts = merge_close(std::move(P.verts));
    return P;
}

double max_radius(const Polygon& P) {
    double r = 0.0;
    for (const auto& v : P.verts) r = std::max(r, std::abs(v.x));
    return r;
}

Polygon build_polygon(const MarkedSurface& s, cplx base, int depth) {
    // A shallow pass bounds the final polygon, so far-away lines can be dropped early.
    double cut = 1.0 + 1e-9;
    for (int d0 = 2; d0 < depth; ++d0) {
        const Polygon pre = intersect_halfplanes(s, base, d0, cut);
        bool boxed = false;
        for (const auto& v : pre.verts) boxed = boxed || v.label < 0;
        if (!boxed && max_radius(pre) < 1.0) {
            cut = max_radius(pre) + 1e-9;
            break;
        }
    }
    Polygon P = intersect_halfplanes(s, base, depth, cut);
    for (const auto& v : P.verts)
        if (v.label < 0 || std::abs(v.x) > 1.0 + kIdealTol)
            throw Error(ErrorKind::DepthTooSmall,
                        "Dirichlet polygon is not closed at word length " + std::to_string(depth));
    return P;
}

// Direction at z of the geodesic towards q (finite or ideal), as a unit complex number.
cplx direction(cplx z, const DomainVertex& q) {
    cplx d;
    if (!q.ideal) {
        d = (q.z - z) / (q.z - std::conj(z));
    } else if (q.boundary.is_infinite()) {
        d = 1.0;
    } else {
        d = (q.boundary.x - z) / (q.boundary.x - std::conj(z));
    }
    return d / std::abs(d);
}

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    auto one_way = [](const std::vector<cplx>& p, const std::vector<cplx>& q) {
        double h = 0.0;
        for (const auto& x : p) {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& y : q) m = std::min(m, std::abs(x - y));
            h = std::max(h, m);
        }
        return h;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

std::vector<cplx> disk_vertices(const Polygon& P) {
    std::vector<cplx> out;
    for (const auto& v : P.verts) out.push_back(disk_from_klein(v.x));
    return out;
}

}  // namespace

int default_domain_depth(const MarkedSurface& s) { return s.rank() <= 2 ? 8 : 6; }

HalfPlanePoint default_base_point(const MarkedSurface& s) {
    const MoebiusMap frame = standard_frame(axis(s.generators()[0]));
    return HalfPlanePoint(frame.apply(cplx(0.11, 1.03)));
}

double DirichletDomain::cusp_tail_area() const {
    double t = 0.0;
    for (const auto& c : cusps_) t += c.width() / cusp_height_;
    return t;
}

cplx DirichletDomain::to_disk(cplx z) const { return disk_map(z, base_); }

cplx DirichletDomain::from_disk(cplx w) const { return (base_ - w * std::conj(base_)) / (1.0 - w); }

MoebiusMap DirichletDomain::reduce(cplx z) const {
    MoebiusMap g;
    for (int it = 0; it < 1000; ++it) {
        // cosh d(z, p) is proportional to |z - p|^2 / Im p for fixed z.
        double best = std::norm(z - base_) / base_.imag() * (1.0 - 1e-13);
        const DomainSide* pick = nullptr;
        for (const auto& side : sides_) {
            const cplx p = side.element.apply(base_);
            const double v = std::norm(z - p) / p.imag();
            if (v < best) {
                best = v;
                pick = &side;
            }
        }
        if (!pick) return g;
        const MoebiusMap step = pick->element.inverse();
        z = step.apply(z);
        g = step * g;
    }
    throw Error(ErrorKind::DomainNotConverged, "reduction into the domain did not terminate");
}

bool DirichletDomain::contains(cplx z, double tol) const {
    const cplx x = klein_from_disk(to_disk(z));
    for (const auto& w : side_points_)
        if (dot(x, w) - std::norm(w) > tol) return false;
    return true;
}

DirichletDomain dirichlet_domain(const MarkedSurface& s, const HalfPlanePoint& base, DirichletOptions opt) {
    const int depth = opt.depth > 0 ? opt.depth : default_domain_depth(s);
    if (depth < 1) throw Error(ErrorKind::DepthTooSmall, "depth must be at least 1");
    const cplx b = base.z();
    const Polygon P = build_polygon(s, b, depth);

    DirichletDomain D;
    D.base_ = b;
    D.depth_ = depth;
    D.cusp_height_ = opt.cusp_height;
    const std::size_t n = P.verts.size();

    for (const auto& pv : P.verts) {
        DomainVertex v;
        v.klein = pv.x;
        const double r = std::abs(pv.x);
        if (r >= 1.0 - kIdealTol) {
            v.ideal = true;
            v.klein = pv.x / r;
            const cplx w = v.klein;
            if (std::abs(1.0 - w) < 1e-14) {
                v.boundary = BoundaryPoint::infinity();
            } else {
                v.boundary = BoundaryPoint::finite(D.from_disk(w).real());
            }
        } else {
            v.z = D.from_disk(disk_from_klein(pv.x));
        }
        D.vertices_.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        DomainVertex& v = D.vertices_[i];
        if (v.ideal) continue;
        const cplx a = direction(v.z, D.vertices_[(i + n - 1) % n]);
        const cplx c = direction(v.z, D.vertices_[(i + 1) % n]);
        v.angle = std::abs(std::arg(c / a));
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Line& L = P.lines[static_cast<std::size_t>(P.verts[i].label)];
        DomainSide side;
        side.word = L.word;
        side.element = s.evaluate(L.word);
        const DomainVertex &p = D.vertices_[i], &q = D.vertices_[(i + 1) % n];
        side.length = (p.ideal || q.ideal) ? std::numeric_limits<double>::infinity() : hyperbolic_distance(p.z, q.z);
        D.sides_.push_back(side);
        D.side_points_.push_back(L.w);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((D.sides_[i].element * D.sides_[j].element).approx_equal(MoebiusMap::identity(), 1e-8)) {
                D.sides_[i].partner = static_cast<int>(j);
                break;
            }
        }
        if (D.sides_[i].partner < 0)
            throw Error(ErrorKind::DomainNotConverged, "side " + s.format(D.sides_[i].word) + " has no partner");
    }

    // Vertex cycles: leave vertex k along side k, map it back onto its partner.
    auto cycle_from = [&](std::size_t k, VertexCycle* out) {
        MoebiusMap m;
        std::size_t v = k;
        std::size_t guard = 0;
        do {
            if (out) out->vertices.push_back(v);
            const DomainSide& sd = D.sides_[v];
            m = sd.element.inverse() * m;
            v = (static_cast<std::size_t>(sd.partner) + 1) % n;
            if (++guard > n) throw Error(ErrorKind::DomainNotConverged, "vertex cycle does not close");
        } while (v != k);
        return m;
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (D.vertices_[k].cycle >= 0) continue;
        VertexCycle cyc;
        cyc.product = cycle_from(k, &cyc);
        cyc.ideal = D.vertices_[k].ideal;
        for (std::size_t v : cyc.vertices) {
            D.vertices_[v].cycle = static_cast<int>(D.cycles_.size());
            cyc.angle_sum += D.vertices_[v].angle;
            if (D.vertices_[v].ideal != cyc.ideal)
                throw Error(ErrorKind::DomainNotConverged, "vertex cycle mixes ideal and finite vertices");
        }
        D.cycles_.push_back(std::move(cyc));
    }

    for (std::size_t k = 0; k < n; ++k) {
        const DomainVertex& v = D.vertices_[k];
        if (!v.ideal) continue;
        const MoebiusMap parabolic = cycle_from(k, nullptr);
        const MoebiusMap S = v.boundary.is_infinite() ? MoebiusMap::identity() : MoebiusMap(0.0, -1.0, 1.0, -v.boundary.x);
        const MoebiusMap Q = S * parabolic * S.inverse();
        if (std::abs(Q.c()) > 1e-7 * (std::abs(Q.a()) + std::abs(Q.b())))
            throw Error(ErrorKind::DomainNotConverged, "ideal vertex cycle is not parabolic at the vertex");
        const double t = Q.b() / Q.a();
        CuspWedge wedge;
        wedge.vertex = k;
        wedge.normalizer = S.inverse() * MoebiusMap::dilation(std::abs(t));
        const MoebiusMap to_cusp = wedge.normalizer.inverse();
        auto chart_x = [&](const DomainVertex& q) {
            if (!q.ideal) return to_cusp.apply(q.z).real();
            const BoundaryPoint e = to_cusp.apply(q.boundary);
            if (e.is_infinite()) throw Error(ErrorKind::DomainNotConverged, "adjacent ideal vertices share a cusp point");
            return e.x;
        };
        const double x1 = chart_x(D.vertices_[(k + n - 1) % n]);
        const double x2 = chart_x(D.vertices_[(k + 1) % n]);
        wedge.x_left = std::min(x1, x2);
        wedge.x_right = std::max(x1, x2);
        D.cusps_.push_back(wedge);
    }

    double angles = 0.0;
    for (const auto& v : D.vertices_) angles += v.angle;
    D.area_ = (static_cast<double>(n) - 2.0) * M_PI - angles;
    const double expected = 2.0 * M_PI * std::abs(s.euler_characteristic());
    if (std::abs(D.area_ - expected) > 1e-4)
        throw Error(ErrorKind::DepthTooSmall, "domain area " + std::to_string(D.area_) + " differs from " +
                                                  std::to_string(expected) + " at word length " + std::to_string(depth));

    if (opt.check_convergence) {
        const Polygon deeper = build_polygon(s, b, depth + 2);
        D.depth_change_ = hausdorff(disk_vertices(P), disk_vertices(deeper));
    }
    return D;
}

}  // namespace wpg
