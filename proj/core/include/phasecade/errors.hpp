#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasecade {

// Invalid static configuration: bad key, bad value, unsupported constellation.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unsupported_constellation_error : config_error {
    using config_error::config_error;
};

// Mismatched sample rates / lengths between operands.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Metric requested on degenerate input (e.g. zero-energy reference).
struct undefined_metric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver produced a non-finite iterate; carries the iteration index.
struct divergence_error : std::runtime_error {
    divergence_error(const std::string& what, std::size_t iteration)
        : std::runtime_error(what), iteration(iteration) {}
    std::size_t iteration;
};

// Filesystem failure while writing results; carries the path.
struct io_error : std::runtime_error {
    io_error(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path(path) {}
    std::string path;
};

}  // namespace phasecade
