#include "wpg/surface_io.hpp"

#include <json.hpp>

#include "wpg/error.hpp"

namespace wpg {

using nlohmann::json;

std::string surface_to_json(const MarkedSurface& s) {
    json j;
    j["topology"] = to_string(s.topology());
    j["fn"] = {{"lengths", s.fn().lengths}, {"twists", s.fn().twists}};
    json gens = json::array();
    for (const auto& g : s.generators()) gens.push_back({g.a(), g.b(), g.c(), g.d()});
    j["generators"] = gens;
    json marking = json::array();
    for (const auto& w : s.fn_curve_words()) marking.push_back(s.format(w));
    j["marking"] = marking;
    return j.dump(2) + "\n";
}

MarkedSurface surface_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, std::string("surface JSON: ") + e.what());
    }
    try {
        FNCoordinates fn;
        fn.topology = topology_from_string(j.at("topology").get<std::string>());
        fn.lengths = j.at("fn").at("lengths").get<std::vector<double>>();
        fn.twists = j.at("fn").at("twists").get<std::vector<double>>();
        std::vector<MoebiusMap> gens;
        for (const auto& g : j.at("generators")) {
            const auto e = g.get<std::vector<double>>();
            if (e.size() != 4) throw Error(ErrorKind::InvalidConfig, "generator needs 4 entries");
            gens.push_back(MoebiusMap::exact(e[0], e[1], e[2], e[3]));
        }
        MarkedSurface s = MarkedSurface::from_generators(fn, std::move(gens));
        const auto marking = j.at("marking").get<std::vector<std::string>>();
        const auto expected = s.fn_curve_words();
        if (marking.size() != expected.size())
            throw Error(ErrorKind::InvalidConfig, "marking has the wrong number of words");
        for (std::size_t i = 0; i < marking.size(); ++i)
            if (s.parse(marking[i]) != expected[i])
                throw Error(ErrorKind::InvalidConfig, "marking word '" + marking[i] + "' differs from the topology's");
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, std::string("surface JSON: ") + e.what());
    }
}

}  // namespace wpg
