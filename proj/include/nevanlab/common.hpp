#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace nevanlab {

inline constexpr const char* kVersion = "0.1.0";

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-facing configuration (bad function id, bad grid spec, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mathematical domain violation (formula evaluated outside its stated window).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A stated operation precondition does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An evaluator was asked for a point outside its supported range.
class UnsupportedRangeError : public Error {
public:
    using Error::Error;
};

/// Iterative refinement did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double gap)
        : Error(what), best(best_estimate), gap(gap) {}
    double best;  // best estimate at the point of failure
    double gap;   // last successive-estimate difference
};

/// Step size underflow while integrating an ODE.
class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, std::complex<double> where)
        : Error(what), position(where) {}
    std::complex<double> position;
};

/// Raised by zero counting when the winding number is not near an integer;
/// the caller is expected to double the sample count and retry.
class RefinementNeeded : public Error {
public:
    RefinementNeeded(const std::string& what, double winding)
        : Error(what), winding_raw(winding) {}
    double winding_raw;
};

/// Number of worker threads honoring the NEVANLAB_THREADS cap.
unsigned worker_thread_count();

/// Runs fn(i) for i in [0, n). Iterations must be independent; results
/// must be written to per-index slots so the outcome does not depend on
/// the degree of parallelism.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nevanlab
