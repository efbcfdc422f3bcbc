#pragma once

#include <vector>

#include "phasecade/signal.hpp"

namespace phasecade {

// Per-stage channel parameters shared by every stage of the cascade.
// gdd_norm is the group-delay dispersion of one dispersive element in units
// of Ts^2 (dimensionless on the normalized grid); pm_bandwidth_fs is the
// single-sided drive bandwidth in units of the symbol rate.
struct StageConfig {
    double gdd_norm = 0.0;
    double pm_bandwidth_fs = 4.0;
    bool trailing_dispersion = true;
};

// The N real drive waveforms, one per phase modulator, each block-length
// times oversampling samples long.
struct PhaseProfileSet {
    std::vector<std::vector<double>> profiles;
};

struct GddConversion {
    double gdd_norm;               // Ts^2 units, sign carried (anomalous dispersion negative)
    double dispersion_ps_per_nm;   // accumulated physical dispersion of one element
};

// Normalized per-stage dispersion -> physical ps/nm and normalized GDD.
// d_norm is dispersion in 1/(ps*nm) multiplied by Ts^2 in ps^2, the paper's
// symbol-period-squared normalization; 0.3 at 200 GBd is 7.5 ps/nm.
GddConversion dispersion_to_gdd(double d_norm, double symbol_rate_gbd, double wavelength_nm);

StageConfig make_stage_config(const SystemConfig& cfg);

// All-pass quadratic spectral phase exp(i*(gdd/2)*w^2); exactly unitary.
ComplexWaveform apply_dispersion(const ComplexWaveform& wave, double gdd_norm);

// Pointwise exp(i*phase) rotation; exactly unitary.
// Throws dimension_error if lengths differ.
ComplexWaveform apply_phase_modulator(const ComplexWaveform& wave, const std::vector<double>& phase);

// Brick-wall low-pass of a real profile: DFT bins with |f| > bandwidth_fs
// zeroed (|f| <= bandwidth_fs kept, inclusive), then back to time domain.
// Identity when the bandwidth reaches the grid Nyquist. Idempotent.
std::vector<double> bandlimit_phase(const std::vector<double>& phase, double bandwidth_fs,
                                    double sample_rate);

// Same brick-wall mask applied to a complex waveform (used on the overlap
// field before its argument is taken).
cvec bandlimit_complex(const cvec& x, double bandwidth_fs, double sample_rate);

// Cascade: for each stage, phase modulator then dispersive element; the
// trailing dispersive element is dropped when trailing_dispersion is false.
// Energy is conserved to machine precision (all elements are all-pass).
ComplexWaveform propagate_forward(const ComplexWaveform& input, const PhaseProfileSet& phases,
                                  const StageConfig& stage);

// Forward field captured immediately BEFORE each modulator, plus the cascade
// output. before_modulator[n] is F_n in the update rule.
struct ForwardPlanes {
    std::vector<cvec> before_modulator;
    cvec output;
};
ForwardPlanes propagate_forward_planes(const ComplexWaveform& input, const PhaseProfileSet& phases,
                                       const StageConfig& stage);

// Backward field captured immediately AFTER each modulator: B_{N-1} is the
// target pulled back through the trailing dispersive element (if present),
// and B_n = D^{-1}[exp(-i*phi_{n+1}) * B_{n+1}]. At a self-consistent
// solution arg[F_n * conj(B_n) * exp(i*phi_n)] vanishes identically.
std::vector<cvec> propagate_backward(const ComplexWaveform& target, const PhaseProfileSet& phases,
                                     const StageConfig& stage);

// Constant-envelope input carrying the same total energy as `energy` spread
// over n samples.
ComplexWaveform make_cw(std::size_t n, double energy, double sample_rate);

}  // namespace phasecade
