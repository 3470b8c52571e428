#include <array>
#include <cmath>

#include "detail/dd.hpp"
#include "nevanlab/functions.hpp"

namespace nevanlab::detail {

namespace {

// Ai(0) and Ai'(0) split to double-double precision; the Maclaurin sum
// cancels down from terms ~e^{2|zeta|} larger than the result, so the
// constants need more than one double of accuracy.
const DD kAi0 = {0.3550280538878172, 2.05233632436212e-17};
const DD kAip0 = {-0.2588194037928068, 2.522243111610832e-17};

LogComplex ddc_to_lc(const DDC& v) {
    const double re = to_double(v.re), im = to_double(v.im);
    const double m = std::hypot(re, im);
    if (m == 0.0) return LogComplex::zero();
    return {std::log(m), wrap_angle(std::atan2(im, re))};
}

// Coefficients u_k of the large-|z| expansion.
const std::array<double, 24>& airy_u() {
    static const std::array<double, 24> u = [] {
        std::array<double, 24> a{};
        a[0] = 1.0;
        for (std::size_t k = 0; k + 1 < a.size(); ++k)
            a[k + 1] = a[k] * (6.0 * k + 5.0) * (6.0 * k + 1.0) /
                       (72.0 * (static_cast<double>(k) + 1.0));
        return a;
    }();
    return u;
}

// Single-sector expansion, valid for |arg z| <= 2pi/3. Returned in log
// form because Re(-zeta) reaches ~170 at the radii the lab sweeps.
// A fixed term count keeps the computed function smooth in z, so finite
// difference probes do not see truncation-index jumps.
LogComplex airy_asymptotic_sector(double r, double theta) {
    const std::complex<double> zeta =
        (2.0 / 3.0) * std::polar(std::pow(r, 1.5), 1.5 * theta);
    const std::complex<double> inv_zeta = 1.0 / zeta;
    std::complex<double> s = 0.0, p = 1.0;
    const auto& u = airy_u();
    for (int k = 0; k < 16; ++k) {
        s += u[static_cast<std::size_t>(k)] * p;
        p *= -inv_zeta;
    }
    const double log_pref = -0.25 * std::log(r) - 0.5 * std::log(4.0 * kPi);
    return {-zeta.real() + log_pref + std::log(std::abs(s)),
            wrap_angle(-zeta.imag() - 0.25 * theta + std::arg(s))};
}

}  // namespace

LogComplex airy_maclaurin(std::complex<double> z) {
    // Ai(z) = Ai(0) f(z) + Ai'(0) g(z), f and g the standard ODE series.
    const DDC zd = ddc(z);
    const DDC z3 = ddc_mul(ddc_mul(zd, zd), zd);
    DDC f_term = ddc(1.0), g_term = ddc(1.0);
    DDC f_sum = f_term, g_sum = g_term;
    double peak = 1.0;
    for (int k = 0; k < 120; ++k) {
        f_term = ddc_div(ddc_mul(f_term, z3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
        g_term = ddc_div(ddc_mul(g_term, z3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
        f_sum = ddc_add(f_sum, f_term);
        g_sum = ddc_add(g_sum, g_term);
        const double m = std::max(ddc_mag(f_term), ddc_mag(g_term));
        peak = std::max(peak, m);
        if (m < 1e-36 * peak) break;
    }
    const DDC ai = ddc_add(ddc_mul(f_sum, kAi0), ddc_mul(ddc_mul(g_sum, zd), kAip0));
    return ddc_to_lc(ai);
}

LogComplex airy_asymptotic(double r, double theta) {
    const double t = wrap_angle(theta);
    if (std::abs(t) <= 2.0 * kPi / 3.0) return airy_asymptotic_sector(r, t);
    // Near the negative axis, rotate into the good sector:
    // Ai(z) = -e^{2pi i/3} Ai(z e^{2pi i/3}) - e^{-2pi i/3} Ai(z e^{-2pi i/3}).
    const double t_plus = wrap_angle(t + 2.0 * kPi / 3.0);
    const double t_minus = wrap_angle(t - 2.0 * kPi / 3.0);
    const LogComplex rot_plus = LogComplex::from_polar(0.0, kPi + 2.0 * kPi / 3.0);
    const LogComplex rot_minus = LogComplex::from_polar(0.0, kPi - 2.0 * kPi / 3.0);
    return lc_add(lc_mul(rot_plus, airy_asymptotic_sector(r, t_plus)),
                  lc_mul(rot_minus, airy_asymptotic_sector(r, t_minus)));
}

}  // namespace nevanlab::detail
