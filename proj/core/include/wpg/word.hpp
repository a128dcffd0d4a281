#pragma once

#include <string>
#include <vector>

namespace wpg {

// Freely reduced word in generators x_0..x_{n-1}. Letter code 2k encodes x_k
// and 2k+1 encodes its inverse, so code ^ 1 is the inverse letter and codes
// order words lexicographically as x_0 < x_0^-1 < x_1 < ...
class GroupWord {
public:
    GroupWord() = default;
    explicit GroupWord(std::vector<int> letters);  // reduces freely

    static GroupWord generator(int k, bool inverse = false) { return GroupWord({2 * k + (inverse ? 1 : 0)}); }
    // Tokens are generator names separated by '.', '*', U+00B7 or spaces; a token may carry
    // an integer exponent written "^n" (e.g. "B1^-1", "A^2") or the suffix U+207B U+00B9.
    static GroupWord parse(const std::string& text, const std::vector<std::string>& names);

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    GroupWord inverse() const;
    GroupWord cyclically_reduced() const;
    GroupWord rotated(std::size_t k) const;
    // Canonical representative of the unoriented conjugacy class: the least
    // rotation of the cyclic reduction of the word or of its inverse.
    GroupWord canonical_class() const;
    // True when the cyclic reduction is not a proper power u^k, k >= 2.
    bool is_primitive() const;

    std::string to_string(const std::vector<std::string>& names) const;

    friend GroupWord operator*(const GroupWord& u, const GroupWord& v);
    friend bool operator==(const GroupWord&, const GroupWord&) = default;
    friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

private:
    std::vector<int> letters_;
};

// All freely reduced words of length exactly n over `rank` generators, in lexicographic order.
std::vector<GroupWord> reduced_words_of_length(int rank, int n);

}  // namespace wpg
