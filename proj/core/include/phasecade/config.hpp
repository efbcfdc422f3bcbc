#pragma once

#include <string>
#include <vector>

#include "phasecade/sweep.hpp"

namespace phasecade {

// Everything a run needs, filled with the documented defaults and overridden
// by config-file keys and CLI flags. Keys are strict: unknown keys are
// rejected, and physical quantities carry their units in the key name.
struct RunConfig {
    SystemConfig system;
    SolverConfig solver;
    NoiseBudget budget;

    std::vector<unsigned> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> stage_counts{1, 2, 3, 4, 5, 6};
    std::vector<double> dispersion_grid_psnm_norm;  // 0 .. 0.5, 11 points
    std::vector<double> bandwidth_grid_fs;          // 0.05 .. 1.5, 12 points
    std::vector<int> dac_bits_grid;                 // 1 .. 12
    std::vector<double> laser_grid_dbm;             // -30 .. 20, 11 points

    double mzm_depth = 0.3;
    bool linear_mean = false;
    int workers = 0;  // 0 = hardware concurrency
    std::string out_dir = ".";
};

RunConfig default_run_config();

// Applies one key=value pair; throws config_error naming the key when it is
// unknown or its value does not parse.
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Strict key=value file: one pair per line, '#' starts a comment, blank lines
// ignored. Applies onto `cfg` in file order.
void load_config_file(RunConfig& cfg, const std::string& path);

// Assembles the sweep for one axis from the run configuration.
SweepSpec sweep_spec_for(const RunConfig& cfg, SweepAxis axis);

std::vector<unsigned> parse_seed_list(const std::string& text);

}  // namespace phasecade
