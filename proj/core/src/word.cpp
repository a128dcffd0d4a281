#include "wpg/word.hpp"

#include <algorithm>
#include <cctype>

#include "wpg/error.hpp"

namespace wpg {

GroupWord::GroupWord(std::vector<int> letters) {
    letters_.reserve(letters.size());
    for (int c : letters) {
        if (c < 0) throw Error(ErrorKind::InvalidWord, "negative letter code");
        if (!letters_.empty() && letters_.back() == (c ^ 1))
            letters_.pop_back();
        else
            letters_.push_back(c);
    }
}

GroupWord GroupWord::parse(const std::string& text, const std::vector<std::string>& names) {
    // Normalize separators and the superscript inverse to ASCII.
    std::string s;
    for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, 2, "\xC2\xB7") == 0) {
            s += ' ';
            i += 2;
        } else if (text.compare(i, 5, "\xE2\x81\xBB\xC2\xB9") == 0) {
            s += "^-1";
            i += 5;
        } else {
            const char ch = text[i++];
            s += (ch == '.' || ch == '*') ? ' ' : ch;
        }
    }
    std::vector<int> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvalidWord, "'" + text + "': " + why); };
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        // Longest generator name matching at position i.
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k].size() > best_len && s.compare(i, names[k].size(), names[k]) == 0) {
                best = static_cast<int>(k);
                best_len = names[k].size();
            }
        if (best < 0) fail("unknown generator at offset " + std::to_string(i));
        i += best_len;
        long exponent = 1;
        if (i < s.size() && s[i] == '^') {
            std::size_t used = 0;
            try {
                exponent = std::stol(s.substr(i + 1), &used);
            } catch (const std::exception&) {
                fail("bad exponent");
            }
            if (exponent == 0 || std::labs(exponent) > 64) fail("exponent out of range");
            i += 1 + used;
        }
        const int code = 2 * best + (exponent < 0 ? 1 : 0);
        for (long e = 0; e < std::labs(exponent); ++e) out.push_back(code);
    }
    return GroupWord(std::move(out));
}

GroupWord GroupWord::inverse() const {
    std::vector<int> r(letters_.rbegin(), letters_.rend());
    for (int& c : r) c ^= 1;
    return GroupWord(std::move(r));
}

GroupWord GroupWord::cyclically_reduced() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == (letters_[hi - 1] ^ 1)) {
        ++lo;
        --hi;
    }
    GroupWord w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                      letters_.begin() + static_cast<std::ptrdiff_t>(hi));
    return w;
}

GroupWord GroupWord::rotated(std::size_t k) const {
    GroupWord w = *this;
    if (!w.letters_.empty())
        std::rotate(w.letters_.begin(), w.letters_.begin() + static_cast<std::ptrdiff_t>(k % w.size()),
                    w.letters_.end());
    return w;
}

GroupWord GroupWord::canonical_class() const {
    const GroupWord base = cyclically_reduced();
    if (base.empty()) return base;
    GroupWord best = base;
    for (const GroupWord& w : {base, base.inverse()})
        for (std::size_t k = 0; k < w.size(); ++k) {
            GroupWord r = w.rotated(k);
            if (r.letters_ < best.letters_) best = std::move(r);
        }
    return best;
}

bool GroupWord::is_primitive() const {
    const GroupWord w = cyclically_reduced();
    const std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = w.letters_[i] == w.letters_[i - p];
        if (periodic) return false;
    }
    return true;
}

std::string GroupWord::to_string(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const auto k = static_cast<std::size_t>(letters_[i] / 2);
        if (k >= names.size()) throw Error(ErrorKind::InvalidWord, "letter outside generator set");
        if (i) s += '.';
        s += names[k];
        if (letters_[i] & 1) s += "^-1";
    }
    return s;
}

GroupWord operator*(const GroupWord& u, const GroupWord& v) {
    std::vector<int> all = u.letters_;
    all.insert(all.end(), v.letters_.begin(), v.letters_.end());
    return GroupWord(std::move(all));
}

std::vector<GroupWord> reduced_words_of_length(int rank, int n) {
    std::vector<GroupWord> out;
    if (n <= 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c < 2 * rank; ++c) {
            if (!cur.empty() && cur.back() == (c ^ 1)) continue;
            cur.push_back(c);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

}  // namespace wpg
