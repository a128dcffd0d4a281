#pragma once

#include <string>
#include <vector>

#include "wpg/moebius.hpp"
#include "wpg/word.hpp"

namespace wpg {

enum class Topology { PuncturedTorus, GenusTwo };

const char* to_string(Topology t) noexcept;
Topology topology_from_string(const std::string& s);

struct FNCoordinates {
    Topology topology = Topology::PuncturedTorus;
    std::vector<double> lengths;
    std::vector<double> twists;

    static std::size_t curve_count(Topology t) { return t == Topology::PuncturedTorus ? 1 : 3; }
    // Throws InvalidLength on non-positive lengths or a count mismatch.
    void validate() const;
};

// How a twist along a simple curve acts on the generators: each listed
// generator g becomes T g (left) or g T (right), with T the translation by
// sign * dtau along the curve's oriented axis.
struct TwistAction {
    int generator;
    bool left;
    double sign;
};

struct MarkedCurve {
    std::string name;
    GroupWord word;  // oriented; its axis orientation fixes the twist sign
    int fn_index;    // index into FNCoordinates, or -1 for an auxiliary simple curve
    std::vector<TwistAction> action;
};

class MarkedSurface {
public:
    Topology topology() const { return fn_.topology; }
    const FNCoordinates& fn() const { return fn_; }
    const std::vector<MoebiusMap>& generators() const { return gens_; }
    const std::vector<std::string>& generator_names() const { return names_; }
    // Simple curves available for twisting; FN curves come first in FN order.
    const std::vector<MarkedCurve>& simple_curves() const { return curves_; }
    std::vector<GroupWord> fn_curve_words() const;

    int rank() const { return static_cast<int>(gens_.size()); }
    int euler_characteristic() const { return topology() == Topology::PuncturedTorus ? -1 : -2; }
    int cusp_count() const { return topology() == Topology::PuncturedTorus ? 1 : 0; }

    MoebiusMap evaluate(const GroupWord& w) const;
    GroupWord parse(const std::string& word) const { return GroupWord::parse(word, names_); }
    std::string format(const GroupWord& w) const { return w.to_string(names_); }
    // Index into simple_curves() of the curve whose unoriented class matches w, or -1.
    int find_simple_curve(const GroupWord& w) const;

    // Product of commutators of the generator pairs as a word.
    GroupWord relator() const;
    // Punctured torus: |tr[A,B] + 2|. Genus two: max-entry distance of the relator from +-I.
    double relator_defect() const;

    // Assembles a surface from explicit generators (used by deserialization).
    static MarkedSurface from_generators(const FNCoordinates& fn, std::vector<MoebiusMap> generators);

private:
    FNCoordinates fn_;
    std::vector<MoebiusMap> gens_;
    std::vector<std::string> names_;
    std::vector<MarkedCurve> curves_;

    friend MarkedSurface twist_deform(const MarkedSurface&, const GroupWord&, double);
};

MarkedSurface build_punctured_torus(double length, double twist);
MarkedSurface build_genus2(const FNCoordinates& fn);
MarkedSurface build_surface(const FNCoordinates& fn);

// Left earthquake of size dtau along a marked simple curve. Throws NotSimpleCurve otherwise.
MarkedSurface twist_deform(const MarkedSurface& s, const GroupWord& curve, double dtau);

}  // namespace wpg
