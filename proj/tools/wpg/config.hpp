#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpg/verification.hpp"

namespace wpg::cli {

struct PlotSpec {
    int twist_curve = 0;   // index into the surface's simple curves
    int samples = 64;      // twist samples over one full period
    int spectrum_count = 3;
    int theta_max_R = -1;  // -1 picks the surface default
    FieldGrid grid;
    bool grid_set = false;  // otherwise the grid spans the fundamental domain
};

// Experiment configuration. Every level rejects unknown keys; see config.schema.json.
struct ExperimentConfig {
    std::optional<FNCoordinates> surface;
    std::optional<std::string> surface_file;
    std::vector<FNCoordinates> suite;  // empty selects the default suite
    int depth = 4;
    VerifyOptions verify;
    std::string out = "out";
    std::string which = "all";
    std::optional<double> tol;  // overrides every pass tolerance of the selected checks
    PlotSpec plot;
};

// Throws Error(InvalidConfig) on malformed JSON, unknown keys or out-of-range values.
ExperimentConfig parse_config(const std::string& text);

// Sets the pass tolerances (not the delta-limit order) to tol.
void override_tolerances(Tolerances& t, double tol);

}  // namespace wpg::cli
