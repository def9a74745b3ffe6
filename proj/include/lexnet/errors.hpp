#ifndef LEXNET_ERRORS_HPP
#define LEXNET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexnet {

// Error categories map onto CLI exit codes: config 2, data 3, metric 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a power-law tail is too small or degenerate to fit.
struct FitError : MetricError {
    FitError(const std::string& what, std::size_t n_tail)
        : MetricError(what), n_tail(n_tail) {}
    std::size_t n_tail;
};

} // namespace lexnet

#endif
