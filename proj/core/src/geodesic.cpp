#include "wpg/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wpg/error.hpp"
#include "wpg/parallel.hpp"

namespace wpg {

namespace {

GeodesicClass make_class(const MarkedSurface& s, const GroupWord& w, const MoebiusMap& m) {
    if (classify(m) != IsometryClass::Hyperbolic)
        throw Error(ErrorKind::NotHyperbolicWord, "word " + s.format(w) + " is not hyperbolic");
    GeodesicClass g;
    g.word = w;
    g.matrix = m;
    g.trace = m.trace();
    g.length = translation_length(m);
    g.axis = axis(m);
    g.primitive = w.is_primitive();
    g.simple = s.find_simple_curve(w) >= 0;
    return g;
}

// Lexicographic comparison of rotation k of `v` against `w` (both length n).
int compare_rotation(const std::vector<int>& w, const std::vector<int>& v, std::size_t k) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int a = v[(i + k) % n], b = w[i];
        if (a != b) return a < b ? -1 : 1;
    }
    return 0;
}

bool is_canonical(const std::vector<int>& w, std::vector<int>& scratch) {
    const std::size_t n = w.size();
    for (std::size_t k = 1; k < n; ++k)
        if (compare_rotation(w, w, k) < 0) return false;
    scratch.assign(w.rbegin(), w.rend());
    for (int& c : scratch) c ^= 1;
    for (std::size_t k = 0; k < n; ++k)
        if (compare_rotation(w, scratch, k) < 0) return false;
    return true;
}

}  // namespace

GeodesicClass geodesic_class(const MarkedSurface& s, const GroupWord& w) {
    if (w.cyclically_reduced().empty()) throw Error(ErrorKind::InvalidWord, "empty word");
    const GroupWord c = w.canonical_class();
    return make_class(s, c, s.evaluate(c));
}

GeodesicClass geodesic_class(const MarkedSurface& s, const std::string& word) {
    return geodesic_class(s, s.parse(word));
}

GeodesicClass marked_curve_class(const MarkedSurface& s, int curve_index) {
    const GroupWord& w = s.simple_curves().at(static_cast<std::size_t>(curve_index)).word;
    GeodesicClass g = make_class(s, w, s.evaluate(w));
    g.simple = true;
    return g;
}

std::vector<GeodesicClass> enumerate_classes(const MarkedSurface& s, int max_len, EnumerateOptions opt) {
    const int letters = 2 * s.rank();
    std::vector<MoebiusMap> letter_maps;
    for (int c = 0; c < letters; ++c)
        letter_maps.push_back((c & 1) ? s.generators()[static_cast<std::size_t>(c / 2)].inverse()
                                      : s.generators()[static_cast<std::size_t>(c / 2)]);
    // A canonical word starts with its least letter, and no letter or inverse letter
    // may precede it; tasks are indexed by that first letter.
    std::vector<std::vector<GeodesicClass>> per_task(static_cast<std::size_t>(letters));
    parallel_for(static_cast<std::size_t>(letters), [&](std::size_t first_idx) {
        const int first = static_cast<int>(first_idx);
        auto& out = per_task[first_idx];
        std::vector<int> word{first}, scratch;
        std::vector<MoebiusMap> prefix{letter_maps[static_cast<std::size_t>(first)]};
        auto visit = [&](auto&& self) -> void {
            const std::size_t n = word.size();
            if ((word.back() ^ 1) != first && is_canonical(word, scratch)) {
                GroupWord w(word);
                if (w.size() == n && (opt.include_non_primitive || w.is_primitive())) {
                    const MoebiusMap& m = prefix.back();
                    if (classify(m) == IsometryClass::Hyperbolic) out.push_back(make_class(s, w, m));
                }
            }
            if (static_cast<int>(n) == max_len) return;
            for (int c = first; c < letters; ++c) {
                if ((c ^ 1) < first || c == (word.back() ^ 1)) continue;
                word.push_back(c);
                prefix.push_back(prefix.back() * letter_maps[static_cast<std::size_t>(c)]);
                self(self);
                word.pop_back();
                prefix.pop_back();
            }
        };
        if (max_len >= 1) visit(visit);
    });
    std::vector<GeodesicClass> all;
    for (auto& v : per_task) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end(), [](const GeodesicClass& x, const GeodesicClass& y) {
        if (x.length != y.length) return x.length < y.length;
        return x.word < y.word;
    });
    return all;
}

std::string spectrum_csv(const MarkedSurface& s, const std::vector<GeodesicClass>& classes) {
    std::ostringstream os;
    os << "word,trace,length,primitive,simple\n";
    char buf[64];
    for (const auto& g : classes) {
        os << s.format(g.word) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", g.trace);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", g.length);
        os << buf << ',' << (g.primitive ? "true" : "false") << ',' << (g.simple ? "true" : "false") << '\n';
    }
    return os.str();
}

MarkedSurface twist_deform(const MarkedSurface& s, const GeodesicClass& curve, double dtau) {
    return twist_deform(s, curve.word, dtau);
}

}  // namespace wpg

namespace wpg {

namespace {

std::vector<double> distinct_lengths(const std::vector<GeodesicClass>& classes, double cutoff) {
    std::vector<double> out;
    for (const auto& g : classes) {
        if (g.length >= cutoff) break;
        if (out.empty() || g.length - out.back() > 1e-9 * std::max(1.0, g.length)) out.push_back(g.length);
    }
    return out;
}

// First length present at max_len but absent at max_len - 2; the list is taken as
// complete below it.
double stable_cutoff(const std::vector<double>& coarse, const std::vector<double>& fine) {
    std::size_t i = 0;
    for (double v : fine) {
        if (i < coarse.size() && std::abs(coarse[i] - v) <= 1e-9 * std::max(1.0, v)) {
            ++i;
            continue;
        }
        return v;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

SpectrumComparison compare_length_spectra(const MarkedSurface& x, const MarkedSurface& y, int max_len, double tol,
                                          double cutoff_fraction) {
    const double inf = std::numeric_limits<double>::infinity();
    const auto fx = distinct_lengths(enumerate_classes(x, max_len), inf);
    const auto fy = distinct_lengths(enumerate_classes(y, max_len), inf);
    const double cut_x = stable_cutoff(distinct_lengths(enumerate_classes(x, max_len - 2), inf), fx);
    const double cut_y = stable_cutoff(distinct_lengths(enumerate_classes(y, max_len - 2), inf), fy);
    SpectrumComparison r;
    r.cutoff = cutoff_fraction * std::min(cut_x, cut_y);
    for (double v : fx)
        if (v < r.cutoff) r.lengths_a.push_back(v);
    for (double v : fy)
        if (v < r.cutoff) r.lengths_b.push_back(v);
    if (r.lengths_a.size() != r.lengths_b.size()) {
        r.max_abs_diff = std::numeric_limits<double>::infinity();
        return r;
    }
    for (std::size_t i = 0; i < r.lengths_a.size(); ++i)
        r.max_abs_diff = std::max(r.max_abs_diff, std::abs(r.lengths_a[i] - r.lengths_b[i]));
    r.match = r.max_abs_diff <= tol;
    return r;
}

}  // namespace wpg
