#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "phasecade/errors.hpp"
#include "phasecade/version.hpp"

namespace phasecade::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open for writing", path.string());
    return out;
}

nlohmann::json config_echo(const RunConfig& cfg) {
    nlohmann::json j;
    j["system"] = {
        {"block_length", cfg.system.block_length},
        {"oversampling", cfg.system.oversampling},
        {"rrc_rolloff", cfg.system.rrc_rolloff},
        {"rrc_span_symbols", cfg.system.rrc_span_symbols},
        {"qam_order", cfg.system.qam_order},
        {"stage_count", cfg.system.stage_count},
        {"dispersion_psnm_norm", cfg.system.dispersion_psnm_norm},
        {"pm_bandwidth_fs", cfg.system.pm_bandwidth_fs},
        {"trailing_dispersion", cfg.system.trailing_dispersion},
        {"symbol_rate_gbd", cfg.system.symbol_rate_gbd},
        {"wavelength_nm", cfg.system.wavelength_nm},
    };
    j["solver"] = {
        {"step_size", cfg.solver.step_size},
        {"max_iterations", cfg.solver.max_iterations},
        {"stall_tolerance_db", cfg.solver.stall_tolerance_db},
        {"stall_window", cfg.solver.stall_window},
        {"init_mode", cfg.solver.init_mode == SolverConfig::Init::zero ? "zero" : "random"},
        {"init_epsilon", cfg.solver.init_epsilon},
        {"init_seed", cfg.solver.init_seed},
    };
    j["noise_budget"] = {
        {"laser_power_dbm", cfg.budget.laser_power_dbm},
        {"stage_loss_db", cfg.budget.stage_loss_db},
        {"detector_efficiency", cfg.budget.detector_efficiency},
    };
    j["seeds"] = cfg.seeds;
    j["stage_counts"] = cfg.stage_counts;
    j["mzm_depth"] = cfg.mzm_depth;
    j["mean_domain"] = cfg.linear_mean ? "linear" : "db";
    j["workers"] = cfg.workers;
    return j;
}

void write_phases_csv(const std::filesystem::path& path, const Solution& sol, int oversampling) {
    auto out = open_out(path);
    out << "time";
    for (std::size_t n = 0; n < sol.phases.profiles.size(); ++n) out << ",phi_" << (n + 1);
    out << '\n';
    const std::size_t len = sol.phases.profiles.front().size();
    for (std::size_t k = 0; k < len; ++k) {
        out << num(static_cast<double>(k) / oversampling);
        for (const auto& phi : sol.phases.profiles) out << ',' << num(phi[k]);
        out << '\n';
    }
}

void write_spectra_csv(const std::filesystem::path& path, const Solution& sol, int oversampling) {
    const std::size_t len = sol.phases.profiles.front().size();
    const auto freqs = fft_frequencies(len, 1.0 / oversampling);
    // Peak-normalized PSD of each drive, dB, dumped in ascending frequency.
    std::vector<std::vector<double>> psd_db;
    for (const auto& phi : sol.phases.profiles) {
        cvec spectrum(len);
        for (std::size_t k = 0; k < len; ++k) spectrum[k] = cplx(phi[k], 0.0);
        fft_inplace(spectrum);
        std::vector<double> p(len);
        double peak = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            p[k] = std::norm(spectrum[k]);
            peak = std::max(peak, p[k]);
        }
        for (auto& v : p) {
            v = (peak > 0.0 && v > 0.0) ? 10.0 * std::log10(v / peak) : -300.0;
            v = std::max(v, -300.0);
        }
        psd_db.push_back(std::move(p));
    }
    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return freqs[a] < freqs[b]; });
    auto out = open_out(path);
    out << "freq_fs";
    for (std::size_t n = 0; n < psd_db.size(); ++n) out << ",stage_" << (n + 1);
    out << '\n';
    for (std::size_t i : order) {
        out << num(freqs[i]);
        for (const auto& p : psd_db) out << ',' << num(p[i]);
        out << '\n';
    }
}

void write_constellation_csv(const std::filesystem::path& path, const cvec& received,
                             const cplx& gain) {
    auto out = open_out(path);
    out << "i,q\n";
    for (const auto& s : received) {
        const cplx corrected = gain * s;
        out << num(corrected.real()) << ',' << num(corrected.imag()) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const Solution& sol) {
    auto out = open_out(path);
    out << "iteration,sdr_db,step_size\n";
    for (std::size_t i = 0; i < sol.sdr_trace.size(); ++i) {
        out << (i + 1) << ',' << num(sol.sdr_trace[i]) << ',' << num(sol.step_trace[i]) << '\n';
    }
}

const char* axis_file_stem(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::dispersion: return "sweep_dispersion";
        case SweepAxis::pm_bandwidth: return "sweep_bandwidth";
        case SweepAxis::dac_bits: return "sweep_dac";
        case SweepAxis::laser_power: return "sweep_laser";
    }
    return "sweep";
}

}  // namespace

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int cmd_solve(const RunConfig& cfg) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    const unsigned seed = cfg.seeds.front();
    const auto instance = make_instance(cfg.system, seed);
    Solution sol;
    try {
        sol = solve(instance, cfg.solver);
    } catch (const divergence_error& e) {
        std::cerr << "solve diverged at iteration " << e.iteration << "\n";
        return 2;
    }

    write_phases_csv(dir / "phases.csv", sol, cfg.system.oversampling);
    write_spectra_csv(dir / "drive_spectra.csv", sol, cfg.system.oversampling);

    const ComplexWaveform cw = make_cw(
        instance.target.samples.size(),
        std::accumulate(instance.target.samples.begin(), instance.target.samples.end(), 0.0,
                        [](double acc, const cplx& v) { return acc + std::norm(v); }),
        instance.target.sample_rate);
    const ComplexWaveform output = propagate_forward(cw, sol.phases, instance.stage);
    const SdrReport report = compute_sdr(output, instance.block, instance.shape);
    const cvec received = matched_filter_and_sample(output, instance.shape);
    write_constellation_csv(dir / "constellation.csv", received, report.complex_gain);
    write_trace_csv(dir / "trace.csv", sol);

    nlohmann::json summary = {
        {"sdr_db", sol.sdr_db},
        {"iterations", sol.iterations_used},
        {"dispersive_efficiency_ratio", dispersive_efficiency_ratio(instance.target)},
        {"converged", sol.converged},
        {"seed", seed},
    };
    open_out(dir / "summary.json") << summary.dump(2) << '\n';

    nlohmann::json meta = config_echo(cfg);
    meta["command"] = "solve";
    meta["seed"] = seed;
    meta["tool_version"] = version_string;
    meta["timestamp"] = utc_timestamp();
    open_out(dir / "run_meta.json") << meta.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const RunConfig& cfg, SweepAxis axis) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    const SweepSpec spec = sweep_spec_for(cfg, axis);
    const SweepResult result = run_sweep(spec, cfg.workers);
    const std::string stem = axis_file_stem(axis);
    write_csv(result, (dir / (stem + ".csv")).string());
    write_metadata(result, (dir / (stem + "_meta.json")).string(), utc_timestamp());
    if (result.any_flagged) {
        std::cerr << stem << ": one or more grid points diverged (see metadata)\n";
        return 3;
    }
    return 0;
}

}  // namespace phasecade::cli
