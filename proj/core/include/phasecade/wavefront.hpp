#pragma once

#include <vector>

#include "phasecade/channel.hpp"
#include "phasecade/signal.hpp"

namespace phasecade {

struct SolverConfig {
    double step_size = 0.25;          // initial mu; halved on a worsening iteration, floor 1e-3
    int max_iterations = 2000;
    double stall_tolerance_db = 0.1;  // stop when best SDR gains less than this ...
    int stall_window = 25;            // ... over this many consecutive iterations
    enum class Init { zero, seeded_random } init_mode = Init::zero;
    double init_epsilon = 1e-3;       // amplitude of the random initialization
    unsigned init_seed = 0;           // combined with the stage index per profile
};

struct Solution {
    PhaseProfileSet phases;
    double sdr_db = 0.0;
    int iterations_used = 0;
    std::vector<double> sdr_trace;    // best SDR after each iteration; non-decreasing
    std::vector<double> step_trace;   // mu in effect after each iteration (for trace dumps)
    bool converged = false;           // stall detector fired before the iteration cap
};

// One solvable problem: the target waveform with the symbol block and pulse
// shape that grade it, plus the cascade geometry.
struct TransformInstance {
    ComplexWaveform target;
    SymbolBlock block;
    PulseShape shape;
    StageConfig stage;
    int stage_count = 1;
};

TransformInstance make_instance(const SystemConfig& cfg, unsigned seed);

// One drive update at one plane: the overlap F * conj(B) * exp(i*phi) is
// bandlimited, its argument (zero where the overlap vanishes) is the phase
// mismatch phi - phi*, and the profile steps against it and is re-bandlimited.
// mu = 0 returns the profile unchanged.
std::vector<double> phase_update(const cvec& forward, const cvec& backward,
                                 const std::vector<double>& phi, double mu,
                                 double bandwidth_fs, double sample_rate);

// Iterative drive synthesis: per iteration the backward planes are computed
// from the current profiles, then stages are updated in ascending order with
// the forward field rebuilt incrementally from the already-updated drives.
// The working iterate is never reverted (it must roam to escape plateaus);
// the best iterate is tracked separately and is what gets returned. mu is
// halved on any worsening iteration (floor 1e-3).
// Throws divergence_error if an iterate goes non-finite.
Solution solve(const TransformInstance& instance, const SolverConfig& cfg);

}  // namespace phasecade
