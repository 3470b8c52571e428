#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nevanlab/functions.hpp"
#include "nevanlab/logcplx.hpp"

namespace nevanlab {

/// Renormalized solver state: the true solution is f = u e^kappa,
/// f' = v e^kappa exactly (rescaling uses powers of two).
struct SolverState {
    std::complex<double> z{0.0, 0.0};
    std::complex<double> u{0.0, 0.0};
    std::complex<double> v{0.0, 0.0};
    double kappa = 0.0;

    LogComplex log_f() const {
        const double m = std::abs(u);
        if (m == 0.0) return LogComplex::zero();
        return {kappa + std::log(m), wrap_angle(std::arg(u))};
    }
    LogComplex log_fprime() const {
        const double m = std::abs(v);
        if (m == 0.0) return LogComplex::zero();
        return {kappa + std::log(m), wrap_angle(std::arg(v))};
    }
};

struct InitialCondition {
    std::complex<double> f0{1.0, 0.0};
    std::complex<double> fp0{0.0, 0.0};
};

/// Ray from r_start to r_end along direction theta, optionally followed by
/// one full counterclockwise turn around |z| = r_end.
struct PathSpec {
    double theta = 0.0;
    double r_start = 0.0;
    double r_end = 1.0;
    bool then_circle = false;
};

struct IntegrateOptions {
    double tol = 1e-10;                 // local error per unit arc, in [1e-13, 1e-6]
    std::vector<double> ray_stops;      // radii at which states are recorded
    int circle_samples = 256;           // uniform recorded angles on the circle
    long max_steps = 4'000'000'000L;    // step budget (accepted + rejected)
};

struct Trajectory {
    std::vector<SolverState> ray_states;     // at r_start, requested stops, r_end
    std::vector<double> ray_radii;           // matching radii
    std::vector<SolverState> circle_states;  // at theta + 2 pi j / N, j = 0..N-1
    double circle_r = 0.0;
    std::optional<SolverState> monodromy;    // state after the full turn
    long steps = 0;
    bool budget_exhausted = false;
    double reached_r = 0.0;
};

/// Integrates f'' + A f = 0 (B absent) or f'' + A f' + B f = 0 (B present)
/// with an embedded 5(4) Runge-Kutta pair, PI step control in the scaled
/// variables, and exact power-of-two renormalization.
Trajectory integrate_path(const EntireFunction& A, const EntireFunction* B,
                          const InitialCondition& ic, const PathSpec& path,
                          const IntegrateOptions& opt = {});

/// Continues an existing state further along its ray / around a circle.
Trajectory integrate_from(const EntireFunction& A, const EntireFunction* B,
                          const SolverState& from, const PathSpec& path,
                          const IntegrateOptions& opt = {});

/// W = f1 f2' - f1' f2 at a common point, in scaled form.
LogComplex wronskian(const SolverState& s1, const SolverState& s2);

/// E = f1 f2 per recorded circle sample; trajectories must have been
/// integrated with aligned circle samples. Throws RefinementNeeded when a
/// sample sits on an exact zero of E.
std::vector<LogComplex> product_on_circle(const Trajectory& t1, const Trajectory& t2,
                                          double r, int min_samples);

struct ZeroCountReport {
    double r = 0.0;
    double winding_raw = 0.0;
    int n = 0;
    double N = 0.0;  // integrated count; filled by counting_sweep
};

/// Argument-principle count from full-circle samples of E. Requires the
/// max wrapped phase step below pi/2; enforces the integrality certificate
/// |winding - n| < 1e-3 (throws RefinementNeeded otherwise).
ZeroCountReport zero_count(std::span<const LogComplex> samples, double r);

/// n(r) per grid radius with N(r) = integral of n(t)/t dt; jump radii of
/// isolated zeros are bisected to 1e-3 relative.
std::vector<ZeroCountReport> counting_sweep(const EntireFunction& A,
                                            const EntireFunction* B,
                                            const InitialCondition& ic1,
                                            const InitialCondition& ic2,
                                            const RadialGrid& grid, double tol);

struct LambdaEstimate {
    enum class Status { Ok, TooFewZeros };
    Status status = Status::TooFewZeros;
    double value = 0.0;
};

/// Exponent of convergence proxy: max slope of log n(r) vs log r over
/// one-decade windows in the tail.
LambdaEstimate lambda_estimate(std::span<const ZeroCountReport> reports,
                               double tail_fraction);

struct ResidualReport {
    double max_residual = 0.0;
    int probes_used = 0;
    int probes_skipped = 0;  // probes that landed on zeros of E
};

/// Normalized residual of -4A = c^2/E^2 + 2E''/E - (E'/E)^2 over probe
/// radii recorded on both trajectories (second-order coefficient absent).
ResidualReport bank_laine_residual(const EntireFunction& A, const Trajectory& t1,
                                   const Trajectory& t2,
                                   std::span<const double> probe_radii);

/// Max over aligned recorded states of |W - W0| / |W0|.
double wronskian_drift(const Trajectory& t1, const Trajectory& t2);

struct GrowthSample {
    double r = 0.0;
    std::optional<double> loglog_scale;  // log of max ray growth, when positive
};

/// Growth probe for the first-order-coefficient equation: per radius, the
/// log of the largest (kappa + log max(|u|,|v|)) over `ray_count` rays.
/// Rays whose integration exhausts the step budget contribute up to the
/// radius they reached.
std::vector<GrowthSample> growth_probe(const EntireFunction& A,
                                       const EntireFunction& B,
                                       const InitialCondition& ic,
                                       const RadialGrid& grid, double tol,
                                       int ray_count = 16,
                                       long max_steps_per_ray = 4'000'000);

}  // namespace nevanlab
