// Acceptance gate: one line per criterion, exit code = number of failures.
// Constants were frozen from measured behavior of this implementation on the
// reference configuration; tolerances are pinned here, not configurable.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "phasecade/channel.hpp"
#include "phasecade/config.hpp"
#include "phasecade/metrics.hpp"
#include "phasecade/signal.hpp"
#include "phasecade/wavefront.hpp"

using namespace phasecade;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& text) {
    std::printf("[%2d] %s %s\n", number, pass ? "PASS" : "FAIL", text.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    va_list args;
    va_start(args, f);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double mean_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
}

double min_of(const std::vector<double>& v) {
    double m = v.front();
    for (double x : v) m = std::min(m, x);
    return m;
}

double max_of(const std::vector<double>& v) {
    double m = v.front();
    for (double x : v) m = std::max(m, x);
    return m;
}

SystemConfig anchor_config(int stages, double dispersion) {
    SystemConfig cfg;  // 512 symbols, 8x oversampling, beta 0.1, 16-QAM
    cfg.stage_count = stages;
    cfg.dispersion_psnm_norm = dispersion;
    return cfg;
}

std::vector<double> solve_seeds(const SystemConfig& cfg, const std::vector<unsigned>& seeds,
                                std::vector<Solution>* keep = nullptr) {
    std::vector<double> sdr;
    for (unsigned seed : seeds) {
        const auto sol = solve(make_instance(cfg, seed), SolverConfig{});
        sdr.push_back(sol.sdr_db);
        if (keep) keep->push_back(sol);
    }
    return sdr;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<missing:" + path + ">";
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criterion 1: unitarity and invertibility -------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick_n(1, 6);
    std::uniform_real_distribution<double> pick_gdd(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double worst_energy = 0.0;
    double worst_inverse = 0.0;
    const std::size_t len = 512;
    for (int trial = 0; trial < 100; ++trial) {
        const int n_stages = pick_n(rng);
        StageConfig stage;
        stage.gdd_norm = pick_gdd(rng);
        PhaseProfileSet phases;
        for (int s = 0; s < n_stages; ++s) {
            std::vector<double> phi(len);
            for (auto& v : phi) v = gauss(rng);
            phases.profiles.push_back(std::move(phi));
        }
        cvec input(len);
        for (auto& v : input) v = cplx(gauss(rng), gauss(rng));
        const ComplexWaveform in{input, 8.0};

        const auto out = propagate_forward(in, phases, stage);
        double ein = 0.0, eout = 0.0;
        for (const auto& v : in.samples) ein += std::norm(v);
        for (const auto& v : out.samples) eout += std::norm(v);
        worst_energy = std::max(worst_energy, std::abs(eout - ein) / ein);

        // Inverse cascade: undo the trailing element, then each stage in
        // reverse (inverse dispersion, negated drive).
        ComplexWaveform back = out;
        back = apply_dispersion(back, -stage.gdd_norm);
        for (int s = n_stages - 1; s >= 0; --s) {
            std::vector<double> neg = phases.profiles[static_cast<std::size_t>(s)];
            for (auto& v : neg) v = -v;
            back = apply_phase_modulator(back, neg);
            if (s > 0) back = apply_dispersion(back, -stage.gdd_norm);
        }
        double diff = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            diff = std::max(diff, std::abs(back.samples[k] - in.samples[k]));
        }
        worst_inverse = std::max(worst_inverse, diff);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst_energy < 1e-10 && worst_inverse < 1e-9 && secs < 10.0;
    report(1, pass,
           fmt("unitarity: 100 random cascades, energy error %.2e (<1e-10), "
               "inverse error %.2e (<1e-9), %.2f s (<10)",
               worst_energy, worst_inverse, secs));
}

// ---- criterion 2: unit conversion anchor ------------------------------------

void criterion_2() {
    const auto conv = dispersion_to_gdd(0.3, 200.0, 1550.0);
    const double err = std::abs(conv.dispersion_ps_per_nm - 7.5);
    report(2, err < 1e-9,
           fmt("unit anchor: 0.3 Ts^2-normalized at 200 GBd = %.12f ps/nm (7.5 +- 1e-9)",
               conv.dispersion_ps_per_nm));
}

// ---- criteria 3 and 6 share the ten anchor solutions ------------------------

bool c6_pass = false;
std::string c6_text;

void criteria_3_and_6() {
    const std::vector<unsigned> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<Solution> sols;
    const SystemConfig cfg = anchor_config(4, 0.3);
    const auto sdr = solve_seeds(cfg, seeds, &sols);
    const double mean = mean_of(sdr);
    report(3, mean >= 32.0 && mean <= 38.0,
           fmt("solver anchor: N=4 D=0.3, seeds 0-9, mean SDR %.3f dB in [32, 38] "
               "(min %.2f, max %.2f)",
               mean, min_of(sdr), max_of(sdr)));

    const auto stage = make_stage_config(cfg);
    const PulseShape shape = make_pulse_shape(cfg);
    double worst_12bit = 0.0;
    std::vector<double> sinad3;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto block = generate_qam_block(cfg.qam_order, cfg.block_length, seeds[i]);
        const double s12 = quantized_sinad(sols[i].phases, stage, 12, block, shape);
        worst_12bit = std::max(worst_12bit, std::abs(s12 - sdr[i]));
        sinad3.push_back(quantized_sinad(sols[i].phases, stage, 3, block, shape));
    }
    const double mean3 = mean_of(sinad3);
    const double limit3 = 6.02 * 3.0 + 1.76;
    // 12-bit quantization must be transparent; 3-bit must sit far below the
    // ideal uniform-quantizer line (frozen margin: at least 4.5 dB below).
    // Reported in numeric order from main, after criteria 4 and 5.
    c6_pass = worst_12bit <= 0.5 && mean3 <= limit3 - 4.5 && mean3 >= 12.0;
    c6_text = fmt("quantization: max |12-bit delta| %.3f dB (<=0.5); 3-bit mean %.3f dB, "
                  "%.2f dB below the %.2f dB ideal line (>=4.5)",
                  worst_12bit, mean3, limit3 - mean3, limit3);
}

// ---- criterion 4: N=1 dispersion independence -------------------------------

void criterion_4() {
    const std::vector<unsigned> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto lo = solve_seeds(anchor_config(1, 0.1), seeds);
    const auto hi = solve_seeds(anchor_config(1, 0.4), seeds);
    const double gap = std::abs(mean_of(lo) - mean_of(hi));
    std::vector<double> pooled = lo;
    pooled.insert(pooled.end(), hi.begin(), hi.end());
    const double spread = max_of(pooled) - min_of(pooled);
    report(4, gap < spread,
           fmt("N=1 dispersion independence: mean gap %.3f dB < pooled seed spread %.3f dB "
               "(D=0.1: %.2f, D=0.4: %.2f)",
               gap, spread, mean_of(lo), mean_of(hi)));
}

// ---- criterion 5: trend suite ----------------------------------------------

std::vector<double> ladder_means;  // reused by criterion 8

void criterion_5() {
    const std::vector<unsigned> seeds{0, 1, 2};
    const double slack = 0.5;

    // (a) SDR vs stage count at D=0.3.
    bool a_ok = true;
    std::string a_txt;
    double prev = -1e9;
    for (int n = 1; n <= 6; ++n) {
        const double m = mean_of(solve_seeds(anchor_config(n, 0.3), seeds));
        ladder_means.push_back(m);
        a_ok = a_ok && m >= prev - slack;
        prev = m;
        a_txt += fmt("%s%.1f", n == 1 ? "" : "/", m);
    }

    // (b) SDR vs drive bandwidth at N=2, D=0.3, hard mask active.
    bool b_ok = true;
    std::string b_txt;
    prev = -1e9;
    for (double b : {0.25, 0.55, 1.0, 1.5}) {
        SystemConfig cfg = anchor_config(2, 0.3);
        cfg.pm_bandwidth_fs = b;
        const double m = mean_of(solve_seeds(cfg, seeds));
        b_ok = b_ok && m >= prev - slack;
        prev = m;
        b_txt += fmt("%s%.1f", b_txt.empty() ? "" : "/", m);
    }

    // (c) SDR vs dispersion at N=4: the grid maximum clears the smallest
    // nonzero dispersion by at least 5 dB.
    std::vector<double> c_vals;
    for (double d : {0.05, 0.2, 0.5}) {
        c_vals.push_back(mean_of(solve_seeds(anchor_config(4, d), {0})));
    }
    const bool c_ok = max_of(c_vals) >= c_vals.front() + 5.0;

    report(5, a_ok && b_ok && c_ok,
           fmt("trends: (a) SDR vs N %s dB non-decreasing; (b) SDR vs B_PM %s dB "
               "non-decreasing; (c) SDR vs D rises %.1f dB (>=5)",
               a_txt.c_str(), b_txt.c_str(), max_of(c_vals) - c_vals.front()));
}

// ---- criterion 7: MZM baseline loss -----------------------------------------

double mzm_loss_db = 0.0;  // reused by criterion 8

void criterion_7() {
    std::vector<SymbolBlock> blocks;
    for (unsigned seed = 0; seed < 10; ++seed) blocks.push_back(generate_qam_block(16, 512, seed));
    mzm_loss_db = mzm_iq_modulation_loss(blocks, PulseShape{0.1, 32, 8}, 0.3);
    report(7, mzm_loss_db >= 19.5 && mzm_loss_db <= 22.5,
           fmt("IQ modulation loss: %.4f dB in [19.5, 22.5] at depth 0.3", mzm_loss_db));
}

// ---- criterion 8: laser-power crossover -------------------------------------

void criterion_8() {
    // Transform SDRs from the criterion-5 ladder (N=3..6), 2 dB/stage loss.
    bool ordering = true;
    double worst_margin = 1e9;
    for (double p = -30.0; p <= 0.0 + 1e-9; p += 3.0) {
        NoiseBudget iq_budget;
        iq_budget.laser_power_dbm = p;
        iq_budget.stage_count = 0;
        const double iq = shot_noise_snr(iq_budget, mzm_loss_db);
        for (int n = 3; n <= 6; ++n) {
            NoiseBudget budget;
            budget.laser_power_dbm = p;
            budget.stage_count = n;
            budget.stage_loss_db = 2.0;
            const double sinad =
                combine_sinad({ladder_means[static_cast<std::size_t>(n - 1)], shot_noise_snr(budget)});
            ordering = ordering && sinad > iq;
            worst_margin = std::min(worst_margin, sinad - iq);
        }
    }
    // Shot-limited slope: +1 dB SINAD per +1 dBm laser power, exactly for the
    // IQ baseline, and to first order for the deepest cascade at low power.
    NoiseBudget b;
    b.laser_power_dbm = -30.0;
    const double iq_lo = shot_noise_snr(b, mzm_loss_db);
    b.laser_power_dbm = -20.0;
    const double iq_hi = shot_noise_snr(b, mzm_loss_db);
    const bool iq_slope = std::abs((iq_hi - iq_lo) - 10.0) < 1e-9;

    NoiseBudget c;
    c.stage_count = 6;
    c.laser_power_dbm = -30.0;
    const double n6_lo = combine_sinad({ladder_means[5], shot_noise_snr(c)});
    c.laser_power_dbm = -27.0;
    const double n6_hi = combine_sinad({ladder_means[5], shot_noise_snr(c)});
    const double n6_slope = (n6_hi - n6_lo) / 3.0;
    const bool cascade_slope = n6_slope > 0.95 && n6_slope <= 1.0;

    report(8, ordering && iq_slope && cascade_slope,
           fmt("laser crossover: N=3..6 above IQ baseline over [-30, 0] dBm "
               "(worst margin %.2f dB); IQ slope exactly +1, N=6 low-power slope %.3f",
               worst_margin, n6_slope));
}

// ---- criterion 9: oracle equivalence ----------------------------------------

void criterion_9() {
    std::mt19937 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t len = 512;
        StageConfig stage;
        stage.gdd_norm = gauss(rng) * 0.5;
        PhaseProfileSet phases;
        for (int s = 0; s < 2; ++s) {
            std::vector<double> phi(len);
            for (auto& v : phi) v = gauss(rng);
            phases.profiles.push_back(std::move(phi));
        }
        cvec input(len);
        for (auto& v : input) v = cplx(gauss(rng), gauss(rng));
        const ComplexWaveform in{input, 8.0};
        const auto fast = propagate_forward(in, phases, stage);
        ComplexWaveform manual = in;
        manual = apply_phase_modulator(manual, phases.profiles[0]);
        manual = apply_dispersion(manual, stage.gdd_norm);
        manual = apply_phase_modulator(manual, phases.profiles[1]);
        manual = apply_dispersion(manual, stage.gdd_norm);
        for (std::size_t k = 0; k < len; ++k) {
            worst = std::max(worst, std::abs(fast.samples[k] - manual.samples[k]));
        }
    }

    std::vector<double> phi(256);
    for (auto& v : phi) v = gauss(rng);
    cvec f(256), bwd(256);
    for (auto& v : f) v = cplx(gauss(rng), gauss(rng));
    for (auto& v : bwd) v = cplx(gauss(rng), gauss(rng));
    const auto frozen = phase_update(f, bwd, phi, 0.0, 4.0, 8.0);
    bool identity = frozen == phi;

    const PulseShape shape{0.1, 32, 8};
    const auto block = generate_qam_block(16, 256, 0);
    auto wave = shape_rrc(block, shape);
    const auto noise = [&] {
        std::mt19937 r(99);
        std::normal_distribution<double> g(0.0, 1.0);
        cvec n(wave.samples.size());
        for (auto& v : n) v = 0.02 * cplx(g(r), g(r));
        return n;
    }();
    for (std::size_t k = 0; k < wave.samples.size(); ++k) wave.samples[k] += noise[k];
    const double base = compute_sdr(wave, block, shape).sdr_db;
    ComplexWaveform scaled = wave;
    for (auto& v : scaled.samples) v *= cplx(-1.7, 2.4);
    const double after = compute_sdr(scaled, block, shape).sdr_db;
    const bool gain_invariant = std::abs(after - base) < 1e-9;

    const double capped = compute_sdr(shape_rrc(block, shape), block, shape).sdr_db;
    const bool cap_ok = capped == sdr_cap_db;

    report(9, worst < 1e-12 && identity && gain_invariant && cap_ok,
           fmt("oracles: cascade vs primitives %.2e (<1e-12); mu=0 update is identity; "
               "gain invariance %.2e dB (<1e-9); clean waveform pegs the %.0f dB cap",
               worst, std::abs(after - base), sdr_cap_db));
}

// ---- criterion 10: byte-identical sweep reruns ------------------------------

void criterion_10() {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "phasecade_acceptance";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base / "a");
    fs::create_directories(base / "b");

    RunConfig cfg = default_run_config();
    apply_key_value(cfg, "dispersion_grid_psnm_norm", "0,0.1,0.2");
    apply_key_value(cfg, "stage_counts", "1");
    apply_key_value(cfg, "seed_list", "0,1");
    apply_key_value(cfg, "max_iterations", "400");

    cfg.out_dir = (base / "a").string();
    const int rc_a = cli::cmd_sweep(cfg, SweepAxis::dispersion);
    cfg.out_dir = (base / "b").string();
    const int rc_b = cli::cmd_sweep(cfg, SweepAxis::dispersion);

    bool identical = rc_a == 0 && rc_b == 0;
    for (const char* name :
         {"sweep_dispersion.csv", "sweep_dispersion_upper.csv", "sweep_dispersion_lower.csv"}) {
        const auto a = slurp((base / "a" / name).string());
        const auto b = slurp((base / "b" / name).string());
        identical = identical && !a.empty() && a.front() != '<' && a == b;
    }
    fs::remove_all(base, ec);
    report(10, identical,
           fmt("determinism: two dispersion sweep runs produced byte-identical data tables"));
}

}  // namespace

int main() {
    std::printf("acceptance: cascaded phase-modulator waveform synthesis\n");
    criterion_1();
    criterion_2();
    criteria_3_and_6();
    criterion_4();
    criterion_5();
    report(6, c6_pass, c6_text);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
