#include "phasecade/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "phasecade/errors.hpp"
#include "phasecade/version.hpp"

namespace phasecade {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

std::string format_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

SweepCell aggregate(const std::vector<double>& values, const std::vector<bool>& ok,
                    bool linear_mean) {
    SweepCell cell;
    for (bool b : ok) {
        if (!b) {
            cell.flagged = true;
            cell.mean_db = cell.min_db = cell.max_db = quiet_nan;
            return cell;
        }
    }
    double mean = 0.0;
    double lo = values.front();
    double hi = values.front();
    for (double v : values) {
        mean += linear_mean ? std::pow(10.0, v / 10.0) : v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(values.size());
    cell.mean_db = linear_mean ? 10.0 * std::log10(mean) : mean;
    cell.min_db = lo;
    cell.max_db = hi;
    return cell;
}

SystemConfig system_at(const SweepSpec& spec, double axis_value, int stage_count) {
    SystemConfig cfg = spec.system;
    cfg.stage_count = stage_count;
    switch (spec.axis) {
        case SweepAxis::dispersion: cfg.dispersion_psnm_norm = axis_value; break;
        case SweepAxis::pm_bandwidth: cfg.pm_bandwidth_fs = axis_value; break;
        case SweepAxis::dac_bits:
        case SweepAxis::laser_power: break;  // post-hoc axes leave the transform alone
    }
    return cfg;
}

void check_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw config_error("sweep grid is empty");
    if (spec.stage_counts.empty()) throw config_error("sweep stage_counts is empty");
    if (spec.seeds.empty()) throw config_error("sweep seed list is empty");
    for (int n : spec.stage_counts) {
        if (n < 1) throw config_error("stage counts must be >= 1");
    }
    if (spec.axis == SweepAxis::dac_bits) {
        for (double b : spec.grid) {
            if (b < 1.0 || b != std::floor(b)) throw config_error("dac bits grid must be integers >= 1");
        }
    }
}

std::string companion_path(const std::string& path, const char* suffix) {
    const auto dot = path.rfind(".csv");
    if (dot != std::string::npos && dot == path.size() - 4) {
        return path.substr(0, dot) + suffix + ".csv";
    }
    return path + suffix;
}

void write_table(const SweepResult& result, const std::string& path,
                 double SweepCell::*field) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open for writing", path);
    const auto& spec = result.spec;
    out << axis_column_name(spec.axis);
    for (int n : spec.stage_counts) out << ',' << n;
    if (spec.axis == SweepAxis::laser_power) out << ",iq";
    out << '\n';
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        out << format_cell(spec.grid[g]);
        for (std::size_t s = 0; s < spec.stage_counts.size(); ++s) {
            out << ',' << format_cell(result.cells[g][s].*field);
        }
        if (spec.axis == SweepAxis::laser_power) out << ',' << format_cell(result.iq[g].*field);
        out << '\n';
    }
    if (!out) throw io_error("write failed", path);
}

}  // namespace

const char* axis_column_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::dispersion: return "disp";
        case SweepAxis::pm_bandwidth: return "bpm";
        case SweepAxis::dac_bits: return "bits";
        case SweepAxis::laser_power: return "laser";
    }
    return "axis";
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned n_threads = workers > 0 ? static_cast<unsigned>(workers)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, count));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    check_spec(spec);
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult result;
    result.spec = spec;

    const std::size_t n_grid = spec.grid.size();
    const std::size_t n_cols = spec.stage_counts.size();
    const std::size_t n_seeds = spec.seeds.size();
    const bool post_hoc =
        spec.axis == SweepAxis::dac_bits || spec.axis == SweepAxis::laser_power;

    // values[g][col][seed]; ok[...] false where the solve diverged.
    std::vector<std::vector<std::vector<double>>> values(
        n_grid, std::vector<std::vector<double>>(n_cols, std::vector<double>(n_seeds, quiet_nan)));
    std::vector<std::vector<std::vector<char>>> ok(
        n_grid, std::vector<std::vector<char>>(n_cols, std::vector<char>(n_seeds, 0)));

    if (!post_hoc) {
        const std::size_t task_count = n_grid * n_cols * n_seeds;
        parallel_for(task_count, workers, [&](std::size_t idx) {
            const std::size_t g = idx / (n_cols * n_seeds);
            const std::size_t c = (idx / n_seeds) % n_cols;
            const std::size_t s = idx % n_seeds;
            try {
                const SystemConfig cfg = system_at(spec, spec.grid[g], spec.stage_counts[c]);
                const auto inst = make_instance(cfg, spec.seeds[s]);
                values[g][c][s] = solve(inst, spec.solver).sdr_db;
                ok[g][c][s] = 1;
            } catch (const std::exception&) {
                ok[g][c][s] = 0;
            }
        });
    } else {
        // Quantization and shot noise are evaluated on one converged solution
        // per (stage count, seed); the grid never changes the transform.
        parallel_for(n_cols * n_seeds, workers, [&](std::size_t idx) {
            const std::size_t c = idx / n_seeds;
            const std::size_t s = idx % n_seeds;
            try {
                const SystemConfig cfg = system_at(spec, 0.0, spec.stage_counts[c]);
                const auto inst = make_instance(cfg, spec.seeds[s]);
                const Solution sol = solve(inst, spec.solver);
                for (std::size_t g = 0; g < n_grid; ++g) {
                    if (spec.axis == SweepAxis::dac_bits) {
                        values[g][c][s] = quantized_sinad(sol.phases, inst.stage,
                                                          static_cast<int>(spec.grid[g]),
                                                          inst.block, inst.shape);
                    } else {
                        NoiseBudget budget = spec.budget;
                        budget.laser_power_dbm = spec.grid[g];
                        budget.stage_count = spec.stage_counts[c];
                        values[g][c][s] = combine_sinad({sol.sdr_db, shot_noise_snr(budget)});
                    }
                    ok[g][c][s] = 1;
                }
            } catch (const std::exception&) {
                for (std::size_t g = 0; g < n_grid; ++g) ok[g][c][s] = 0;
            }
        });
    }

    result.cells.assign(n_grid, std::vector<SweepCell>(n_cols));
    for (std::size_t g = 0; g < n_grid; ++g) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            std::vector<bool> okv(ok[g][c].begin(), ok[g][c].end());
            result.cells[g][c] = aggregate(values[g][c], okv, spec.linear_mean);
            result.any_flagged = result.any_flagged || result.cells[g][c].flagged;
        }
    }

    if (spec.axis == SweepAxis::laser_power) {
        // Conventional IQ baseline: shot noise at the power left after the
        // ensemble-average modulation loss; no transform distortion term.
        std::vector<SymbolBlock> blocks;
        blocks.reserve(n_seeds);
        for (unsigned seed : spec.seeds) {
            blocks.push_back(generate_qam_block(spec.system.qam_order, spec.system.block_length, seed));
        }
        const PulseShape shape = make_pulse_shape(spec.system);
        const double loss_db = mzm_iq_modulation_loss(blocks, shape, spec.mzm_depth);
        result.iq.resize(n_grid);
        for (std::size_t g = 0; g < n_grid; ++g) {
            NoiseBudget budget = spec.budget;
            budget.laser_power_dbm = spec.grid[g];
            budget.stage_count = 0;
            const double snr = shot_noise_snr(budget, loss_db);
            result.iq[g] = SweepCell{snr, snr, snr, false};
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

void write_csv(const SweepResult& result, const std::string& path) {
    write_table(result, path, &SweepCell::mean_db);
    if (result.spec.seeds.size() > 1) {
        write_table(result, companion_path(path, "_upper"), &SweepCell::max_db);
        write_table(result, companion_path(path, "_lower"), &SweepCell::min_db);
    }
}

void write_metadata(const SweepResult& result, const std::string& path,
                    const std::string& timestamp_iso) {
    const auto& spec = result.spec;
    nlohmann::json j;
    j["tool_version"] = version_string;
    j["timestamp"] = timestamp_iso;
    j["wall_seconds"] = result.wall_seconds;
    j["axis"] = axis_column_name(spec.axis);
    j["grid"] = spec.grid;
    j["stage_counts"] = spec.stage_counts;
    j["seeds"] = spec.seeds;
    j["mean_domain"] = spec.linear_mean ? "linear" : "db";
    j["mzm_depth"] = spec.mzm_depth;
    j["system"] = {
        {"block_length", spec.system.block_length},
        {"oversampling", spec.system.oversampling},
        {"rrc_rolloff", spec.system.rrc_rolloff},
        {"rrc_span_symbols", spec.system.rrc_span_symbols},
        {"qam_order", spec.system.qam_order},
        {"stage_count", spec.system.stage_count},
        {"dispersion_psnm_norm", spec.system.dispersion_psnm_norm},
        {"pm_bandwidth_fs", spec.system.pm_bandwidth_fs},
        {"trailing_dispersion", spec.system.trailing_dispersion},
        {"symbol_rate_gbd", spec.system.symbol_rate_gbd},
        {"wavelength_nm", spec.system.wavelength_nm},
    };
    j["solver"] = {
        {"step_size", spec.solver.step_size},
        {"max_iterations", spec.solver.max_iterations},
        {"stall_tolerance_db", spec.solver.stall_tolerance_db},
        {"stall_window", spec.solver.stall_window},
        {"init_mode", spec.solver.init_mode == SolverConfig::Init::zero ? "zero" : "random"},
        {"init_epsilon", spec.solver.init_epsilon},
        {"init_seed", spec.solver.init_seed},
    };
    j["noise_budget"] = {
        {"stage_loss_db", spec.budget.stage_loss_db},
        {"detector_efficiency", spec.budget.detector_efficiency},
        {"symbol_rate_gbd", spec.budget.symbol_rate_gbd},
        {"wavelength_nm", spec.budget.wavelength_nm},
    };
    nlohmann::json flagged = nlohmann::json::array();
    for (std::size_t g = 0; g < result.cells.size(); ++g) {
        for (std::size_t c = 0; c < result.cells[g].size(); ++c) {
            if (result.cells[g][c].flagged) {
                flagged.push_back({{"axis_value", spec.grid[g]},
                                   {"stage_count", spec.stage_counts[c]}});
            }
        }
    }
    j["flagged_points"] = flagged;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open for writing", path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failed", path);
}

}  // namespace phasecade
