#include "phasecade/channel.hpp"

#include <cmath>
#include <numbers>

#include "phasecade/errors.hpp"

namespace phasecade {

namespace {

constexpr double speed_of_light = 299792458.0;  // m/s

void check_wave(const ComplexWaveform& wave) {
    if (wave.samples.empty()) throw dimension_error("empty waveform");
    if (!(wave.sample_rate > 0.0)) throw dimension_error("sample rate must be positive");
}

// exp(i*(gdd/2)*w^2) on the DFT grid; w in radians per symbol period.
cvec dispersion_response(std::size_t n, double sample_rate, double gdd_norm) {
    const auto freqs = fft_frequencies(n, 1.0 / sample_rate);
    cvec h(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 2.0 * std::numbers::pi * freqs[k];
        h[k] = std::polar(1.0, 0.5 * gdd_norm * w * w);
    }
    return h;
}

}  // namespace

GddConversion dispersion_to_gdd(double d_norm, double symbol_rate_gbd, double wavelength_nm) {
    if (!(symbol_rate_gbd > 0.0)) throw config_error("symbol rate must be positive");
    if (!(wavelength_nm > 0.0)) throw config_error("wavelength must be positive");
    const double ts_ps = 1e3 / symbol_rate_gbd;
    const double d_ps_per_nm = d_norm * ts_ps * ts_ps;
    // ps/nm -> s/m, then gdd = -D * lambda^2 / (2*pi*c), normalized by Ts^2.
    const double d_s_per_m = d_ps_per_nm * 1e-3;
    const double lambda_m = wavelength_nm * 1e-9;
    const double gdd_s2 = -d_s_per_m * lambda_m * lambda_m / (2.0 * std::numbers::pi * speed_of_light);
    const double ts_s = 1e-9 / symbol_rate_gbd;
    return GddConversion{gdd_s2 / (ts_s * ts_s), d_ps_per_nm};
}

StageConfig make_stage_config(const SystemConfig& cfg) {
    const auto conv = dispersion_to_gdd(cfg.dispersion_psnm_norm, cfg.symbol_rate_gbd, cfg.wavelength_nm);
    return StageConfig{conv.gdd_norm, cfg.pm_bandwidth_fs, cfg.trailing_dispersion};
}

ComplexWaveform apply_dispersion(const ComplexWaveform& wave, double gdd_norm) {
    check_wave(wave);
    if (gdd_norm == 0.0) return wave;
    cvec x = wave.samples;
    fft_inplace(x);
    const cvec h = dispersion_response(x.size(), wave.sample_rate, gdd_norm);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] *= h[k];
    ifft_inplace(x);
    return ComplexWaveform{std::move(x), wave.sample_rate};
}

ComplexWaveform apply_phase_modulator(const ComplexWaveform& wave, const std::vector<double>& phase) {
    check_wave(wave);
    if (phase.size() != wave.samples.size()) {
        throw dimension_error("phase profile length does not match waveform length");
    }
    cvec x(wave.samples.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = wave.samples[k] * std::polar(1.0, phase[k]);
    return ComplexWaveform{std::move(x), wave.sample_rate};
}

cvec bandlimit_complex(const cvec& x, double bandwidth_fs, double sample_rate) {
    if (!(sample_rate > 0.0)) throw dimension_error("sample rate must be positive");
    if (!(bandwidth_fs >= 0.0)) throw config_error("bandwidth must be non-negative");
    // Mask can touch nothing once it reaches the grid Nyquist.
    if (2.0 * bandwidth_fs >= sample_rate) return x;
    cvec s = x;
    fft_inplace(s);
    const auto freqs = fft_frequencies(s.size(), 1.0 / sample_rate);
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (std::abs(freqs[k]) > bandwidth_fs) s[k] = cplx(0.0, 0.0);
    }
    ifft_inplace(s);
    return s;
}

std::vector<double> bandlimit_phase(const std::vector<double>& phase, double bandwidth_fs,
                                    double sample_rate) {
    if (2.0 * bandwidth_fs >= sample_rate) return phase;
    cvec tmp(phase.size());
    for (std::size_t k = 0; k < phase.size(); ++k) tmp[k] = cplx(phase[k], 0.0);
    tmp = bandlimit_complex(tmp, bandwidth_fs, sample_rate);
    std::vector<double> out(phase.size());
    // Real input and a symmetric mask keep the result real; drop rounding dust.
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = tmp[k].real();
    return out;
}

ComplexWaveform propagate_forward(const ComplexWaveform& input, const PhaseProfileSet& phases,
                                  const StageConfig& stage) {
    check_wave(input);
    const std::size_t n_stages = phases.profiles.size();
    ComplexWaveform x = input;
    for (std::size_t n = 0; n < n_stages; ++n) {
        x = apply_phase_modulator(x, phases.profiles[n]);
        if (n + 1 < n_stages || stage.trailing_dispersion) x = apply_dispersion(x, stage.gdd_norm);
    }
    return x;
}

ForwardPlanes propagate_forward_planes(const ComplexWaveform& input, const PhaseProfileSet& phases,
                                       const StageConfig& stage) {
    check_wave(input);
    const std::size_t n_stages = phases.profiles.size();
    ForwardPlanes planes;
    planes.before_modulator.reserve(n_stages);
    ComplexWaveform x = input;
    for (std::size_t n = 0; n < n_stages; ++n) {
        planes.before_modulator.push_back(x.samples);
        x = apply_phase_modulator(x, phases.profiles[n]);
        if (n + 1 < n_stages || stage.trailing_dispersion) x = apply_dispersion(x, stage.gdd_norm);
    }
    planes.output = std::move(x.samples);
    return planes;
}

std::vector<cvec> propagate_backward(const ComplexWaveform& target, const PhaseProfileSet& phases,
                                     const StageConfig& stage) {
    check_wave(target);
    const std::size_t n_stages = phases.profiles.size();
    if (n_stages == 0) return {};
    std::vector<cvec> planes(n_stages);
    ComplexWaveform b = stage.trailing_dispersion ? apply_dispersion(target, -stage.gdd_norm) : target;
    planes[n_stages - 1] = b.samples;
    for (std::size_t n = n_stages - 1; n > 0; --n) {
        // Undo stage n: its modulator, then the dispersive element before it.
        const auto& phi = phases.profiles[n];
        if (phi.size() != b.samples.size()) {
            throw dimension_error("phase profile length does not match waveform length");
        }
        cvec u(b.samples.size());
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = b.samples[k] * std::polar(1.0, -phi[k]);
        b = apply_dispersion(ComplexWaveform{std::move(u), target.sample_rate}, -stage.gdd_norm);
        planes[n - 1] = b.samples;
    }
    return planes;
}

ComplexWaveform make_cw(std::size_t n, double energy, double sample_rate) {
    if (n == 0) throw dimension_error("empty waveform");
    const double amp = std::sqrt(energy / static_cast<double>(n));
    return ComplexWaveform{cvec(n, cplx(amp, 0.0)), sample_rate};
}

}  // namespace phasecade
