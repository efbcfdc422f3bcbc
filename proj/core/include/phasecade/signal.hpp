#pragma once

#include <vector>

#include "phasecade/fft.hpp"

namespace phasecade {

// Uniformly sampled complex baseband field envelope. sample_rate is in units
// of the symbol rate f_s, e.g. 8.0 means eight samples per symbol.
struct ComplexWaveform {
    cvec samples;
    double sample_rate = 0.0;
};

// Block of constellation points drawn from a unit-average-power square QAM.
struct SymbolBlock {
    cvec symbols;
    int constellation_order = 0;
    unsigned seed = 0;
};

// Root-raised-cosine pulse shape. The filter is realized exactly on the
// periodic block grid by frequency sampling of the closed-form RRC spectrum;
// span_symbols is retained as a descriptive field (the periodic realization
// never truncates) and validated against the preconditions of the shaping ops.
struct PulseShape {
    double roll_off = 0.1;
    int span_symbols = 32;
    int oversampling = 8;
};

// Full parameterization of one transform instance.
struct SystemConfig {
    int block_length = 512;
    int oversampling = 8;
    double rrc_rolloff = 0.1;
    int rrc_span_symbols = 32;
    int qam_order = 16;

    int stage_count = 4;
    double dispersion_psnm_norm = 0.3;  // per-stage dispersion, units of 1/(ps*nm) scaled by Ts^2
    double pm_bandwidth_fs = 4.0;       // single-sided drive bandwidth in f_s; >= Nyquist means unconstrained
    bool trailing_dispersion = true;

    double symbol_rate_gbd = 200.0;
    double wavelength_nm = 1550.0;
};

PulseShape make_pulse_shape(const SystemConfig& cfg);

// Uniform i.i.d. draw from the Gray-labeled square M-QAM grid, normalized to
// unit average constellation power. Deterministic for a fixed seed.
// Throws unsupported_constellation_error unless order is a perfect square >= 4.
SymbolBlock generate_qam_block(int order, int block_length, unsigned seed);

// The m^2 constellation points, unit average power, row-major over (Q, I).
cvec qam_constellation(int order);

// Upsampled impulses circularly convolved with the unit-energy RRC; output
// energy equals the symbol energy exactly and sample_rate = oversampling.
ComplexWaveform shape_rrc(const SymbolBlock& block, const PulseShape& shape);

// Circular correlation with the same RRC, sampled at symbol instants. Applied
// to shape_rrc output this recovers the block exactly (RRC o RRC is Nyquist
// on the periodic grid). Throws dimension_error on sample-rate mismatch.
cvec matched_filter_and_sample(const ComplexWaveform& wave, const PulseShape& shape);

// RRC amplitude spectrum sampled on the length-n DFT grid, including the
// sqrt(oversampling) factor that makes shape_rrc unit energy per symbol.
std::vector<double> rrc_spectrum(const PulseShape& shape, std::size_t n);

}  // namespace phasecade
