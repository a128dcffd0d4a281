#include "wpg/intersections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpg/error.hpp"

namespace wpg {

int default_intersection_bound(const MarkedSurface& s) { return s.rank() <= 2 ? 8 : 6; }

namespace {

struct Candidate {
    double position;
    double angle;
    int word_length;
};

// Long genus-two words lose up to ~1e-5 in endpoint position, so lifts are merged when both
// position and angle agree to 1e-4; the data from the shortest word is kept.
void record(std::vector<Candidate>& found, double position, double angle, int len, double period) {
    for (auto& c : found) {
        double d = std::abs(c.position - position);
        d = std::min(d, period - d);
        double da = std::abs(c.angle - angle);
        da = std::min(da, M_PI - da);
        if (d < 1e-4 && da < 1e-4) {
            if (len < c.word_length) c = {position, angle, len};
            return;
        }
    }
    found.push_back({position, angle, len});
}

}  // namespace

std::vector<IntersectionPoint> intersections(const MarkedSurface& s, const GeodesicClass& g1, const GeodesicClass& g2,
                                             int bound) {
    if (bound < 0) bound = default_intersection_bound(s);
    const int max_len = bound + 2;
    // Work in the frame where axis(g1) is the imaginary axis oriented upward.
    const MoebiusMap frame_inv = standard_frame(g1.axis).inverse();
    const BoundaryPoint e1 = g2.axis.repelling(), e2 = g2.axis.attracting();
    const double period = g1.length;

    std::vector<MoebiusMap> letters;
    for (int c = 0; c < 2 * s.rank(); ++c) {
        const MoebiusMap& g = s.generators()[static_cast<std::size_t>(c / 2)];
        letters.push_back((c & 1) ? g.inverse() : g);
    }
    std::vector<Candidate> found;
    auto test = [&](const MoebiusMap& m, int len) {
        const BoundaryPoint p = m.apply(e1), q = m.apply(e2);
        if (p.is_infinite() || q.is_infinite()) return;
        const double scale = std::max({1.0, std::abs(p.x), std::abs(q.x)});
        if (std::abs(p.x) < 1e-12 * scale || std::abs(q.x) < 1e-12 * scale) return;  // shares an endpoint
        if (p.x * q.x >= 0.0) return;
        // The lift is a semicircle across the imaginary axis, meeting it at i r.
        const double r = std::sqrt(-p.x * q.x);
        const double c = 0.5 * (p.x + q.x);
        const cplx tangent(-r, -c);
        double angle = std::arg(tangent / cplx(0.0, 1.0));
        angle = std::fmod(angle + 2.0 * M_PI, M_PI);
        double pos = std::fmod(std::log(r), period);
        if (pos < 0.0) pos += period;
        record(found, pos, angle, len, period);
    };
    test(frame_inv, 0);
    // w g2 and w give the same lift; testing the longer one only adds roundoff.
    const std::vector<int>& fwd = g2.word.letters();
    const std::vector<int> bwd = g2.word.inverse().letters();
    auto ends_with = [](const std::vector<int>& w, const std::vector<int>& suffix) {
        return w.size() >= suffix.size() && std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
    };
    std::vector<MoebiusMap> prefix{frame_inv};
    std::vector<int> word;
    auto dfs = [&](auto&& self) -> void {
        const int len = static_cast<int>(word.size());
        if (len == max_len) return;
        for (int c = 0; c < static_cast<int>(letters.size()); ++c) {
            if (!word.empty() && c == (word.back() ^ 1)) continue;
            word.push_back(c);
            prefix.push_back(prefix.back() * letters[static_cast<std::size_t>(c)]);
            if (!ends_with(word, fwd) && !ends_with(word, bwd)) test(prefix.back(), len + 1);
            self(self);
            word.pop_back();
            prefix.pop_back();
        }
    };
    dfs(dfs);

    std::vector<IntersectionPoint> out;
    std::size_t at_max = 0;
    for (const auto& c : found) {
        ++at_max;
        if (c.word_length <= bound) out.push_back({g1.axis.point_at(c.position), c.position, c.angle});
    }
    if (out.size() != at_max)
        throw Error(ErrorKind::BoundTooSmall, "intersection count changes between word length " + std::to_string(bound) +
                                                  " and " + std::to_string(max_len));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
    return out;
}

double cosine_sum(const std::vector<IntersectionPoint>& pts) {
    double s = 0.0;
    for (const auto& p : pts) s += std::cos(p.angle);
    return s;
}

FDResult twist_length_derivative_fd(const MarkedSurface& s, const GroupWord& twist, const GeodesicClass& delta,
                                    double h_fd) {
    const int idx = s.find_simple_curve(twist);
    if (idx < 0) throw Error(ErrorKind::NotSimpleCurve, "twist curve is not a marked simple curve");
    const double lt = translation_length(s.evaluate(s.simple_curves()[static_cast<std::size_t>(idx)].word));
    const double h = h_fd > 0.0 ? h_fd : 1e-4 * lt;
    auto len = [&](double dt) { return translation_length(twist_deform(s, twist, dt).evaluate(delta.word)); };
    auto centered = [&](double step) { return (len(step) - len(-step)) / (2.0 * step); };
    const double d1 = centered(h), d2 = centered(h / 2);
    const double rich = (4.0 * d2 - d1) / 3.0;
    const double trunc = std::abs(rich - d2);
    if (trunc > 1e-5 * std::max(1.0, std::abs(rich)))
        throw Error(ErrorKind::FDUnstable, "Richardson estimates disagree by " + std::to_string(trunc));
    // Each length carries roughly eps * max(1, l) per letter of rounding; the extrapolated
    // difference quotient amplifies it by about 1 / h.
    const double eps = std::numeric_limits<double>::epsilon();
    const double roundoff = 8.0 * eps * static_cast<double>(1 + delta.word.size()) * std::max(1.0, delta.length) / h;
    return {rich, trunc + roundoff, h};
}

}  // namespace wpg
