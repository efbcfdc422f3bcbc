#include "phasecade/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "phasecade/errors.hpp"
#include "phasecade/metrics.hpp"

namespace phasecade {

namespace {

constexpr double mu_floor = 1e-3;

double total_energy(const cvec& x) {
    double e = 0.0;
    for (const auto& v : x) e += std::norm(v);
    return e;
}

void advance_through_stage(cvec& field, const std::vector<double>& phi, const StageConfig& stage,
                           bool apply_element, double sample_rate) {
    for (std::size_t k = 0; k < field.size(); ++k) field[k] *= std::polar(1.0, phi[k]);
    if (apply_element && stage.gdd_norm != 0.0) {
        ComplexWaveform w{std::move(field), sample_rate};
        field = apply_dispersion(w, stage.gdd_norm).samples;
    }
}

}  // namespace

TransformInstance make_instance(const SystemConfig& cfg, unsigned seed) {
    TransformInstance inst;
    inst.block = generate_qam_block(cfg.qam_order, cfg.block_length, seed);
    inst.shape = make_pulse_shape(cfg);
    inst.target = shape_rrc(inst.block, inst.shape);
    inst.stage = make_stage_config(cfg);
    inst.stage_count = cfg.stage_count;
    return inst;
}

std::vector<double> phase_update(const cvec& forward, const cvec& backward,
                                 const std::vector<double>& phi, double mu,
                                 double bandwidth_fs, double sample_rate) {
    if (forward.size() != backward.size() || forward.size() != phi.size()) {
        throw dimension_error("forward, backward and phase profile lengths differ");
    }
    if (mu == 0.0) return phi;
    cvec overlap(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        overlap[k] = forward[k] * std::conj(backward[k]) * std::polar(1.0, phi[k]);
    }
    overlap = bandlimit_complex(overlap, bandwidth_fs, sample_rate);
    std::vector<double> next(phi.size());
    // std::arg(0) is 0, so vanished-overlap samples contribute no step.
    for (std::size_t k = 0; k < phi.size(); ++k) next[k] = phi[k] - mu * std::arg(overlap[k]);
    return bandlimit_phase(next, bandwidth_fs, sample_rate);
}

Solution solve(const TransformInstance& instance, const SolverConfig& cfg) {
    const std::size_t len = instance.target.samples.size();
    const double rate = instance.target.sample_rate;
    const int n_stages = instance.stage_count;
    if (n_stages < 1) throw config_error("stage_count must be >= 1");
    if (cfg.max_iterations < 1) throw config_error("max_iterations must be >= 1");
    if (cfg.stall_window < 1) throw config_error("stall_window must be >= 1");
    if (cfg.step_size < 0.0 || cfg.stall_tolerance_db < 0.0) {
        throw config_error("step_size and stall_tolerance_db must be non-negative");
    }
    if (instance.block.symbols.size() * static_cast<std::size_t>(instance.shape.oversampling) != len) {
        throw dimension_error("target length does not match block length times oversampling");
    }

    PhaseProfileSet phases;
    phases.profiles.assign(static_cast<std::size_t>(n_stages), std::vector<double>(len, 0.0));
    if (cfg.init_mode == SolverConfig::Init::seeded_random) {
        for (int n = 0; n < n_stages; ++n) {
            std::mt19937 rng(cfg.init_seed + 1000003u * static_cast<unsigned>(n));
            std::normal_distribution<double> gauss(0.0, 1.0);
            auto& phi = phases.profiles[static_cast<std::size_t>(n)];
            for (auto& v : phi) v = cfg.init_epsilon * gauss(rng);
            phi = bandlimit_phase(phi, instance.stage.pm_bandwidth_fs, rate);
        }
    }

    const ComplexWaveform cw = make_cw(len, total_energy(instance.target.samples), rate);

    Solution best;
    best.phases = phases;
    best.sdr_db = -std::numeric_limits<double>::infinity();
    double mu = cfg.step_size;
    double prev_raw = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;
    std::vector<double> mu_trace;
    trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
    mu_trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
    int iterations = 0;
    bool converged = false;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        // Backward planes from the profiles as of the iteration start; B_n only
        // depends on phi_{n+1..N}, which this sweep has not touched yet when
        // stage n updates, so they stay exact through the ascending sweep.
        const auto backward = propagate_backward(instance.target, phases, instance.stage);
        cvec field = cw.samples;
        for (int n = 0; n < n_stages; ++n) {
            auto& phi = phases.profiles[static_cast<std::size_t>(n)];
            phi = phase_update(field, backward[static_cast<std::size_t>(n)], phi, mu,
                               instance.stage.pm_bandwidth_fs, rate);
            const bool apply_element = (n + 1 < n_stages) || instance.stage.trailing_dispersion;
            advance_through_stage(field, phi, instance.stage, apply_element, rate);
        }
        const double raw =
            compute_sdr(ComplexWaveform{field, rate}, instance.block, instance.shape).sdr_db;
        if (!std::isfinite(raw)) throw divergence_error("solver iterate went non-finite", static_cast<std::size_t>(it));

        // The returned solution and trace only ever improve; the working
        // iterate keeps exploring, which is what climbs out of the shallow
        // plateaus of the bandwidth-constrained problem.
        if (raw < prev_raw) mu = std::max(0.5 * mu, mu_floor);
        prev_raw = raw;
        if (raw > best.sdr_db) {
            best.sdr_db = raw;
            best.phases = phases;
        }
        trace.push_back(best.sdr_db);
        mu_trace.push_back(mu);
        iterations = it;
        if (trace.size() >= static_cast<std::size_t>(cfg.stall_window) &&
            trace.back() - trace[trace.size() - static_cast<std::size_t>(cfg.stall_window)] <
                cfg.stall_tolerance_db) {
            converged = true;
            break;
        }
    }

    best.iterations_used = iterations;
    best.sdr_trace = std::move(trace);
    best.step_trace = std::move(mu_trace);
    best.converged = converged;
    return best;
}

}  // namespace phasecade
