#pragma once

#include <vector>

#include "phasecade/channel.hpp"
#include "phasecade/signal.hpp"

namespace phasecade {

struct SdrReport {
    double sdr_db = 0.0;       // capped at 150 dB
    cplx complex_gain{0.0, 0.0};
    double signal_power = 0.0;
    double error_power = 0.0;
};

inline constexpr double sdr_cap_db = 150.0;

// Symbol-domain signal-to-distortion ratio: matched filter, symbol-rate
// sampling, least-squares complex gain, then 10*log10(signal/error) capped.
// Invariant under any nonzero complex scaling of the waveform (up to the cap).
// Throws undefined_metric_error when the reference block has zero energy.
SdrReport compute_sdr(const ComplexWaveform& wave, const SymbolBlock& reference,
                      const PulseShape& shape);

// <|x|>^2 / <|x|^2>, the fraction of power a single lossless dispersive
// element can steer into the target envelope; 1 for constant envelope.
double dispersive_efficiency_ratio(const ComplexWaveform& wave);

// Mid-rise uniform quantizer on [-pi, pi) applied per sample after wrapping,
// step 2*pi/2^bits. Idempotent; bits >= 1.
PhaseProfileSet quantize_phase(const PhaseProfileSet& phases, int bits);

// SINAD of the cascade driven by the quantized profiles (quantization error
// included, nothing re-filtered: the stored drives are what the DACs emit).
// The CW input energy is the block's symbol energy (pulse shaping is unit
// energy), so no target waveform is needed.
double quantized_sinad(const PhaseProfileSet& phases, const StageConfig& stage, int bits,
                       const SymbolBlock& reference, const PulseShape& shape);

// Shot-noise parameters. stage_loss_db is the insertion loss of one stage.
struct NoiseBudget {
    double laser_power_dbm = 0.0;
    int stage_count = 0;
    double stage_loss_db = 2.0;
    double detector_efficiency = 1.0;
    double symbol_rate_gbd = 200.0;
    double wavelength_nm = 1550.0;
};

// Shot-noise-limited SNR in dB: 10*log10 of detected photons per symbol at
// the delivered power (laser minus stage and extra losses).
double shot_noise_snr(const NoiseBudget& budget, double extra_loss_db = 0.0);

// Power-domain combination of independent noise/distortion terms given in dB:
// -10*log10(sum of 10^(-x/10)). Never exceeds the smallest term.
double combine_sinad(const std::vector<double>& terms_db);

// Average power loss of conventional IQ modulation: each block is RRC shaped,
// the I/Q drives are jointly scaled so the largest complex excursion across
// the whole ensemble reaches modulation_depth * Vpi, each rail passes through
// a null-biased push-pull MZM field transfer sin(pi/2 * v/Vpi), and the rails
// combine in quadrature (3 dB hybrid). Returns -10*log10(mean output power).
double mzm_iq_modulation_loss(const std::vector<SymbolBlock>& blocks, const PulseShape& shape,
                              double modulation_depth);
double mzm_iq_modulation_loss(const SymbolBlock& block, const PulseShape& shape,
                              double modulation_depth);

}  // namespace phasecade
