#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "nevanlab/common.hpp"

namespace nevanlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Maps an angle into (-pi, pi].
inline double wrap_angle(double phi) {
    double w = std::remainder(phi, kTwoPi);
    if (w <= -kPi) w = kPi;
    return w;
}

/// A complex value stored as (log of modulus, phase). Magnitudes up to
/// e^(e^40) stay representable. log_mod == -inf marks an exact zero,
/// which compares equal regardless of phase.
struct LogComplex {
    double log_mod = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex zero() { return {}; }

    static LogComplex from_polar(double log_mod, double phase) {
        return {log_mod, wrap_angle(phase)};
    }

    static LogComplex from_complex(std::complex<double> w) {
        double m = std::abs(w);
        if (m == 0.0) return zero();
        return {std::log(m), wrap_angle(std::arg(w))};
    }

    static LogComplex from_real(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x < 0.0 ? kPi : 0.0};
    }

    bool is_zero() const { return std::isinf(log_mod) && log_mod < 0.0; }

    /// Converts back to an ordinary complex value; throws when the
    /// modulus does not fit in a double.
    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        if (log_mod > 709.0)
            throw UnsupportedRangeError("LogComplex::to_complex: modulus exceeds double range");
        return std::polar(std::exp(log_mod), phase);
    }

    friend bool operator==(const LogComplex& a, const LogComplex& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.log_mod == b.log_mod && a.phase == b.phase;
    }
};

inline LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return {a.log_mod + b.log_mod, wrap_angle(a.phase + b.phase)};
}

inline LogComplex lc_neg(const LogComplex& a) {
    if (a.is_zero()) return a;
    return {a.log_mod, wrap_angle(a.phase + kPi)};
}

/// Addition by factoring out the larger modulus, so the residual sum is
/// O(1). Relative error stays within a few machine epsilons except next
/// to exact cancellation, where the result collapses to the exact zero.
inline LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& big = (a.log_mod >= b.log_mod) ? a : b;
    const LogComplex& small = (a.log_mod >= b.log_mod) ? b : a;
    const double ratio = std::exp(small.log_mod - big.log_mod);
    const std::complex<double> s =
        std::polar(1.0, big.phase) + std::polar(ratio, small.phase);
    const double m = std::abs(s);
    // Below this floor the residual is indistinguishable from rounding noise.
    if (m <= 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + ratio))
        return LogComplex::zero();
    return {big.log_mod + std::log(m), wrap_angle(std::arg(s))};
}

inline LogComplex lc_sub(const LogComplex& a, const LogComplex& b) {
    return lc_add(a, lc_neg(b));
}

inline LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) throw DomainError("lc_div: division by exact zero");
    if (a.is_zero()) return a;
    return {a.log_mod - b.log_mod, wrap_angle(a.phase - b.phase)};
}

/// Strictly increasing radii, all positive.
struct RadialGrid {
    std::vector<double> radii;

    RadialGrid() = default;
    explicit RadialGrid(std::vector<double> rs);

    static RadialGrid geometric(double r_min, double r_max, int points);
    static RadialGrid linear(double r_min, double r_max, int points);

    std::size_t size() const { return radii.size(); }
    bool empty() const { return radii.empty(); }
    double front() const { return radii.front(); }
    double back() const { return radii.back(); }
    /// log10(r_max / r_min)
    double decades() const;
};

/// Parameters for quadrature / extrema search on the circle |z| = r.
struct CircleSampling {
    double r = 1.0;
    int initial_count = 512;  // >= 16, power of two
    double refine_tol = 1e-9;

    void validate() const;
};

/// Mean of log+|f| over the circle, by composite Simpson with dyadic
/// refinement until successive estimates agree to refine_tol*(1+|est|).
/// `f_theta` must return f(r e^{i theta}) for the circle fixed by the caller.
double circle_integral_logplus(const std::function<LogComplex(double)>& f_theta,
                               const CircleSampling& s, int max_doublings = 14);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square deviation
};

/// Least-squares line through (xs, ys). Needs >= 3 strictly increasing xs.
LineFit fit_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace nevanlab
