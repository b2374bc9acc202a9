#pragma once

#include <stdexcept>
#include <string>

namespace mrcs {

// Bad user-supplied configuration (weights, thresholds, JSON schema).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filter spec that no filter of the requested length can satisfy.
struct InfeasibleSpecError : std::runtime_error {
    explicit InfeasibleSpecError(const std::string& msg) : std::runtime_error(msg) {}
};

// Design routine ran but the result misses the spec (e.g. Remez stalled).
struct DesignFailureError : std::runtime_error {
    explicit DesignFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension mismatch between data and the operation's expected shape.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Value does not fit the target encoding (e.g. action id >= 16).
struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Value iteration hit its iteration cap before reaching tolerance.
struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
    double last_residual;
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mrcs
