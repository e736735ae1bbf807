#ifndef RODFLOW_ERRORS_HPP
#define RODFLOW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rodflow {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed data: non-finite samples, grid/domain mismatch, bad sizes.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Out-of-range scalar parameters: gamma = 0, s <= 3/2, lambda = 0,
// inconsistent dt/T, ...
class ParameterError : public Error {
public:
    using Error::Error;
};

// A requested feature cannot be represented on the configured grid.
// Carries the smallest grid size that would work.
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& msg, std::size_t minimal_grid_size)
        : Error(msg), minimal_grid_size(minimal_grid_size) {}
    std::size_t minimal_grid_size;
};

// A map fails the diffeomorphism requirement (phi_x <= 0 somewhere).
class DiffeoError : public Error {
public:
    using Error::Error;
};

// An iteration failed to converge; message carries the worst point.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Spray integration left the discrete domain of the exponential map.
class ExpDomainError : public Error {
public:
    ExpDomainError(const std::string& msg, double failure_time)
        : Error(msg), failure_time(failure_time) {}
    double failure_time;
};

// The probe direction evaluates to ~0 at the probe point; the caller
// should move the probe point.
class DegenerateDirectionError : public Error {
public:
    using Error::Error;
};

// Every record of an experiment failed.
class ExperimentError : public Error {
public:
    using Error::Error;
};

// Configuration file problems (missing/unknown/ill-typed keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rodflow

#endif
