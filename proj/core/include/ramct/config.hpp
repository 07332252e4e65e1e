#pragma once

#include <string>

#include "ramct/solvers.hpp"

namespace ramct {

enum class MaskMode { feature, filter };

struct TrackerParams {
    int cell_size = 4;
    int bins = 9;
    double padding = 2.5;
    double sigma_factor = 0.1;
    double learning_rate = 0.012;
    double inflation = 1.2;
    double scale_step = 1.015;     // pyramid factors {2 - step, 1, step}
    double scale_penalty = 0.95;   // down-weight on non-unit scale scores
    bool use_scale = true;
    MaskMode mask_mode = MaskMode::feature;
};

/// Full run configuration: optimizer weights, solver controls, tracker
/// parameters and optional input/output paths. Serializes to the sectioned
/// key = value config file (see README for the grammar).
struct RunConfig {
    WeightConfig weights;
    SolverConfig solver;
    TrackerParams tracker;
    std::string seq_path;
    std::string out_path;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parse from text. Unknown sections or keys raise ConfigError naming the
/// offender; missing keys keep the defaults.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

std::string serialize_config(const RunConfig& cfg);
void write_config_file(const RunConfig& cfg, const std::string& path);

const char* mask_mode_name(MaskMode m);
const char* solver_mode_name(SolverMode m);

}  // namespace ramct
