#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phasecade/metrics.hpp"
#include "phasecade/wavefront.hpp"

namespace phasecade {

enum class SweepAxis { dispersion, pm_bandwidth, dac_bits, laser_power };

// Axis column name used in CSV headers: disp, bpm, bits, laser.
const char* axis_column_name(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::dispersion;
    std::vector<double> grid;        // axis values (dac bits are integral-valued)
    std::vector<int> stage_counts;   // one output column per entry
    std::vector<unsigned> seeds;
    SystemConfig system;             // base configuration; the axis overrides one field
    SolverConfig solver;
    NoiseBudget budget;              // laser axis: loss/efficiency; power comes from the grid
    double mzm_depth = 0.3;          // IQ baseline drive depth (laser axis)
    bool linear_mean = false;        // mean of dB values by default
};

struct SweepCell {
    double mean_db = 0.0;
    double min_db = 0.0;
    double max_db = 0.0;
    bool flagged = false;            // a seed diverged; statistics are NaN
};

struct SweepResult {
    SweepSpec spec;
    std::vector<std::vector<SweepCell>> cells;  // [grid point][stage column]
    std::vector<SweepCell> iq;                  // laser axis only: IQ baseline column
    bool any_flagged = false;
    double wall_seconds = 0.0;
};

// Runs the grid. Dispersion and bandwidth axes solve per (point, N, seed);
// DAC and laser axes solve once per (N, seed) and evaluate the whole grid on
// that solution (quantization and shot noise are post-hoc metrics). Tasks run
// on a worker pool and land in index-addressed slots, so results are
// identical for any worker count. A diverging solve flags its cells and the
// sweep continues.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

// Mean table at `path`; companion _upper (max) and _lower (min) tables when
// more than one seed. Cells carry >= 9 significant digits. Throws io_error.
void write_csv(const SweepResult& result, const std::string& path);

// JSON sidecar echoing everything needed to reproduce the run. The timestamp
// is caller-supplied so data files can stay byte-identical across reruns.
void write_metadata(const SweepResult& result, const std::string& path,
                    const std::string& timestamp_iso);

// Runs fn(0..count-1) on `workers` threads (0 = hardware concurrency).
// fn must not throw; order of execution is unspecified.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace phasecade
