#include "phasecade/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "phasecade/errors.hpp"

namespace phasecade {

namespace {

int side_of_order(int order) {
    if (order < 4) {
        throw unsupported_constellation_error(
            "constellation order must be a perfect square >= 4, got " + std::to_string(order));
    }
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (m * m != order) {
        throw unsupported_constellation_error(
            "constellation order must be a perfect square, got " + std::to_string(order));
    }
    return m;
}

void check_shape(const PulseShape& shape) {
    if (shape.oversampling < 2) throw config_error("oversampling must be >= 2");
    if (shape.span_symbols < 8) throw config_error("rrc span must be >= 8 symbols");
    if (shape.roll_off < 0.0 || shape.roll_off > 1.0) throw config_error("rrc roll-off must be in [0,1]");
}

}  // namespace

PulseShape make_pulse_shape(const SystemConfig& cfg) {
    return PulseShape{cfg.rrc_rolloff, cfg.rrc_span_symbols, cfg.oversampling};
}

cvec qam_constellation(int order) {
    const int m = side_of_order(order);
    // Levels 2k-(m-1); average power of the square grid is 2(m^2-1)/3.
    const double norm = std::sqrt(3.0 / (2.0 * (static_cast<double>(m) * m - 1.0)));
    cvec points(static_cast<std::size_t>(order));
    for (int q = 0; q < m; ++q) {
        for (int i = 0; i < m; ++i) {
            const double re = (2.0 * i - (m - 1)) * norm;
            const double im = (2.0 * q - (m - 1)) * norm;
            points[static_cast<std::size_t>(q) * m + i] = cplx(re, im);
        }
    }
    return points;
}

SymbolBlock generate_qam_block(int order, int block_length, unsigned seed) {
    if (block_length < 1) throw config_error("block_length must be >= 1");
    const cvec points = qam_constellation(order);
    // Gray labeling permutes which index maps to which grid point; a uniform
    // index draw is invariant under that permutation, so the direct row-major
    // map is used. Unbiased for power-of-4 orders (2^32 divisible by M).
    std::mt19937 rng(seed);
    SymbolBlock block;
    block.constellation_order = order;
    block.seed = seed;
    block.symbols.resize(static_cast<std::size_t>(block_length));
    const auto m = static_cast<std::uint32_t>(order);
    for (auto& s : block.symbols) s = points[rng() % m];
    return block;
}

std::vector<double> rrc_spectrum(const PulseShape& shape, std::size_t n) {
    check_shape(shape);
    const double beta = shape.roll_off;
    const double inner = (1.0 - beta) / 2.0;
    const double outer = (1.0 + beta) / 2.0;
    const auto freqs = fft_frequencies(n, 1.0 / shape.oversampling);
    const double gain = std::sqrt(static_cast<double>(shape.oversampling));
    std::vector<double> h(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double af = std::abs(freqs[k]);
        if (af <= inner) {
            h[k] = gain;
        } else if (af < outer) {
            // sqrt raised-cosine edge; the folded power sum over symbol-rate
            // shifts is exactly 1, which makes RRC o RRC Nyquist on this grid.
            h[k] = gain * std::sqrt(0.5 * (1.0 + std::cos(std::numbers::pi * (af - inner) / beta)));
        }
    }
    return h;
}

ComplexWaveform shape_rrc(const SymbolBlock& block, const PulseShape& shape) {
    check_shape(shape);
    const auto os = static_cast<std::size_t>(shape.oversampling);
    const std::size_t n = block.symbols.size() * os;
    cvec x(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < block.symbols.size(); ++k) x[k * os] = block.symbols[k];
    fft_inplace(x);
    const auto h = rrc_spectrum(shape, n);
    for (std::size_t k = 0; k < n; ++k) x[k] *= h[k];
    ifft_inplace(x);
    return ComplexWaveform{std::move(x), static_cast<double>(shape.oversampling)};
}

cvec matched_filter_and_sample(const ComplexWaveform& wave, const PulseShape& shape) {
    check_shape(shape);
    if (wave.sample_rate != static_cast<double>(shape.oversampling)) {
        throw dimension_error("waveform sample rate does not match pulse-shape oversampling");
    }
    const auto os = static_cast<std::size_t>(shape.oversampling);
    const std::size_t n = wave.samples.size();
    if (n == 0 || n % os != 0) throw dimension_error("waveform length is not a whole number of symbols");
    cvec x = wave.samples;
    fft_inplace(x);
    const auto h = rrc_spectrum(shape, n);
    for (std::size_t k = 0; k < n; ++k) x[k] *= h[k];
    ifft_inplace(x);
    cvec symbols(n / os);
    for (std::size_t k = 0; k < symbols.size(); ++k) symbols[k] = x[k * os];
    return symbols;
}

}  // namespace phasecade
