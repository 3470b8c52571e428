#include <cmath>
#include <complex>

#include "detail/dd.hpp"
#include "nevanlab/functions.hpp"

namespace nevanlab::detail {

namespace {

// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x) {
    const double nearest = std::round(x);
    if (nearest <= 0.0 && std::abs(x - nearest) < 1e-9) return 0.0;
    return 1.0 / std::tgamma(x);
}

LogComplex ddc_to_lc(const DDC& v) {
    const double re = to_double(v.re), im = to_double(v.im);
    const double m = std::hypot(re, im);
    if (m == 0.0) return LogComplex::zero();
    return {std::log(m), wrap_angle(std::atan2(im, re))};
}

}  // namespace

// The series region ends where cancellation against the peak term
// ~e^{r^rho} would destroy the decay-sector values; beyond it the
// standard large-|z| expansion takes over.
double ml_series_radius(double rho) {
    if (rho == 1.0) return 17.0;  // exact-recurrence path carries further
    return std::min(40.0, std::pow(20.0, 1.0 / rho));
}

LogComplex ml_series(double rho, double r, double theta) {
    const double alpha = 1.0 / rho;
    const std::complex<double> z = std::polar(r, theta);
    const DDC zd = ddc(z);
    DDC term = ddc(1.0);  // z^n / Gamma(alpha n + 1), n = 0
    DDC sum = term;
    double peak = 1.0;
    int small_run = 0;
    for (int n = 0; n < 900; ++n) {
        if (rho == 1.0) {
            term = ddc_div(ddc_mul(term, zd), static_cast<double>(n) + 1.0);
        } else {
            const double ratio =
                std::exp(std::lgamma(alpha * n + 1.0) - std::lgamma(alpha * (n + 1) + 1.0));
            term = ddc_mul(ddc_mul(term, zd), ratio);
        }
        sum = ddc_add(sum, term);
        const double m = ddc_mag(term);
        peak = std::max(peak, m);
        // The sum may cancel down to ~1e-17 of the peak, so the tail has
        // to be driven far below the peak before stopping.
        if (m < 1e-30 * peak) {
            if (++small_run >= 3) return ddc_to_lc(sum);
        } else {
            small_run = 0;
        }
    }
    throw UnsupportedRangeError("mittag-leffler series did not terminate");
}

LogComplex ml_asymptotic(double rho, double r, double theta) {
    const double alpha = 1.0 / rho;
    if (!(alpha < 2.0))
        throw UnsupportedRangeError(
            "mittag-leffler: large-|z| evaluation supported only for order > 1/2");
    // Exponential branches: (1/alpha) exp(z^{1/alpha}) on every sheet whose
    // rotated argument lies within alpha*pi of the positive axis.
    LogComplex acc = LogComplex::zero();
    const double pow_r = std::pow(r, 1.0 / alpha);
    for (int n = -1; n <= 1; ++n) {
        const double psi = theta + kTwoPi * n;
        const double limit = alpha * kPi + (n == 0 ? 1e-12 : -1e-9);
        if (std::abs(psi) > limit) continue;
        acc = lc_add(acc, LogComplex{pow_r * std::cos(psi / alpha) - std::log(alpha),
                                     wrap_angle(pow_r * std::sin(psi / alpha))});
    }
    // Algebraic tail: -sum_k z^{-k} / Gamma(1 - alpha k).
    const std::complex<double> zinv = 1.0 / std::polar(r, theta);
    std::complex<double> p = 1.0, tail = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 40; ++k) {
        p *= zinv;
        const double rg = rgamma(1.0 - alpha * k);
        if (rg == 0.0) continue;  // pole of Gamma: the term vanishes
        const std::complex<double> term = -p * rg;
        const double m = std::abs(term);
        if (m > prev_mag) break;  // divergent tail reached its optimal index
        tail += term;
        prev_mag = m;
        if (m < 1e-18) break;
    }
    return lc_add(acc, LogComplex::from_complex(tail));
}

}  // namespace nevanlab::detail
