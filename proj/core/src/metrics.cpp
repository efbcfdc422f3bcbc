#include "phasecade/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "phasecade/errors.hpp"

namespace phasecade {

namespace {

constexpr double planck = 6.62607015e-34;        // J*s
constexpr double speed_of_light = 299792458.0;   // m/s

double total_energy(const cvec& x) {
    double e = 0.0;
    for (const auto& v : x) e += std::norm(v);
    return e;
}

}  // namespace

SdrReport compute_sdr(const ComplexWaveform& wave, const SymbolBlock& reference,
                      const PulseShape& shape) {
    const cvec received = matched_filter_and_sample(wave, shape);
    if (received.size() != reference.symbols.size()) {
        throw dimension_error("waveform does not cover the reference block");
    }
    const double signal_power = total_energy(reference.symbols);
    if (signal_power <= 0.0) throw undefined_metric_error("reference block has zero energy");

    double rec_power = 0.0;
    cplx cross(0.0, 0.0);
    for (std::size_t k = 0; k < received.size(); ++k) {
        rec_power += std::norm(received[k]);
        cross += std::conj(received[k]) * reference.symbols[k];
    }
    // Least-squares complex gain minimizing sum |a*received - reference|^2.
    const cplx gain = rec_power > 0.0 ? cross / rec_power : cplx(0.0, 0.0);
    double error_power = 0.0;
    for (std::size_t k = 0; k < received.size(); ++k) {
        error_power += std::norm(gain * received[k] - reference.symbols[k]);
    }
    SdrReport report;
    report.complex_gain = gain;
    report.signal_power = signal_power;
    report.error_power = error_power;
    if (!std::isfinite(error_power)) {
        // Keep non-finite inputs visible: min() against the cap would hide them.
        report.sdr_db = std::numeric_limits<double>::quiet_NaN();
    } else if (error_power <= 0.0) {
        report.sdr_db = sdr_cap_db;
    } else {
        report.sdr_db = std::min(sdr_cap_db, 10.0 * std::log10(signal_power / error_power));
    }
    return report;
}

double dispersive_efficiency_ratio(const ComplexWaveform& wave) {
    if (wave.samples.empty()) throw undefined_metric_error("empty waveform");
    double mean_abs = 0.0;
    double mean_sq = 0.0;
    for (const auto& v : wave.samples) {
        const double a = std::abs(v);
        mean_abs += a;
        mean_sq += a * a;
    }
    mean_abs /= static_cast<double>(wave.samples.size());
    mean_sq /= static_cast<double>(wave.samples.size());
    if (mean_sq <= 0.0) throw undefined_metric_error("zero-energy waveform");
    return mean_abs * mean_abs / mean_sq;
}

PhaseProfileSet quantize_phase(const PhaseProfileSet& phases, int bits) {
    if (bits < 1) throw config_error("quantizer bits must be >= 1");
    const double two_pi = 2.0 * std::numbers::pi;
    const double step = two_pi / std::pow(2.0, bits);
    PhaseProfileSet out;
    out.profiles.reserve(phases.profiles.size());
    for (const auto& phi : phases.profiles) {
        std::vector<double> q(phi.size());
        for (std::size_t k = 0; k < phi.size(); ++k) {
            // Wrap to [-pi, pi), then mid-rise: level centers at (j+1/2)*step.
            double w = std::fmod(phi[k] + std::numbers::pi, two_pi);
            if (w < 0.0) w += two_pi;
            w -= std::numbers::pi;
            q[k] = (std::floor(w / step) + 0.5) * step;
        }
        out.profiles.push_back(std::move(q));
    }
    return out;
}

double quantized_sinad(const PhaseProfileSet& phases, const StageConfig& stage, int bits,
                       const SymbolBlock& reference, const PulseShape& shape) {
    if (phases.profiles.empty()) throw dimension_error("empty phase profile set");
    const std::size_t len = phases.profiles.front().size();
    const double rate = static_cast<double>(shape.oversampling);
    const PhaseProfileSet driven = quantize_phase(phases, bits);
    const ComplexWaveform cw = make_cw(len, total_energy(reference.symbols), rate);
    const ComplexWaveform out = propagate_forward(cw, driven, stage);
    return compute_sdr(out, reference, shape).sdr_db;
}

double shot_noise_snr(const NoiseBudget& budget, double extra_loss_db) {
    if (!(budget.symbol_rate_gbd > 0.0)) throw config_error("symbol rate must be positive");
    if (!(budget.wavelength_nm > 0.0)) throw config_error("wavelength must be positive");
    if (!(budget.detector_efficiency > 0.0) || budget.detector_efficiency > 1.0) {
        throw config_error("detector efficiency must be in (0, 1]");
    }
    const double delivered_dbm =
        budget.laser_power_dbm - budget.stage_count * budget.stage_loss_db - extra_loss_db;
    const double power_w = 1e-3 * std::pow(10.0, delivered_dbm / 10.0);
    const double photon_energy = planck * speed_of_light / (budget.wavelength_nm * 1e-9);
    const double photons_per_symbol =
        budget.detector_efficiency * power_w / (photon_energy * budget.symbol_rate_gbd * 1e9);
    return 10.0 * std::log10(photons_per_symbol);
}

double combine_sinad(const std::vector<double>& terms_db) {
    if (terms_db.empty()) throw undefined_metric_error("no terms to combine");
    double acc = 0.0;
    for (double x : terms_db) acc += std::pow(10.0, -x / 10.0);
    return -10.0 * std::log10(acc);
}

double mzm_iq_modulation_loss(const std::vector<SymbolBlock>& blocks, const PulseShape& shape,
                              double modulation_depth) {
    if (blocks.empty()) throw undefined_metric_error("empty block ensemble");
    if (!(modulation_depth > 0.0)) throw config_error("modulation depth must be positive");
    std::vector<ComplexWaveform> waves;
    waves.reserve(blocks.size());
    double peak = 0.0;
    for (const auto& block : blocks) {
        waves.push_back(shape_rrc(block, shape));
        for (const auto& v : waves.back().samples) peak = std::max(peak, std::abs(v));
    }
    if (peak <= 0.0) throw undefined_metric_error("zero-energy ensemble");
    // One transmitter, one drive gain: the largest complex excursion in the
    // whole ensemble maps to modulation_depth * Vpi.
    const double half_pi = 0.5 * std::numbers::pi;
    double out_power = 0.0;
    std::size_t count = 0;
    for (const auto& wave : waves) {
        for (const auto& v : wave.samples) {
            const double si = v.real() / peak * modulation_depth;
            const double sq = v.imag() / peak * modulation_depth;
            const double ei = std::sin(half_pi * si);
            const double eq = std::sin(half_pi * sq);
            out_power += 0.25 * (ei * ei + eq * eq);
            ++count;
        }
    }
    out_power /= static_cast<double>(count);
    return -10.0 * std::log10(out_power);
}

double mzm_iq_modulation_loss(const SymbolBlock& block, const PulseShape& shape,
                              double modulation_depth) {
    return mzm_iq_modulation_loss(std::vector<SymbolBlock>{block}, shape, modulation_depth);
}

}  // namespace phasecade
