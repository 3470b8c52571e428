#pragma once

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used by series evaluators whose plain-double summation would lose the
// result to cancellation against terms ~e^30 larger than the sum.

#include <cmath>
#include <complex>

namespace nevanlab::detail {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD dd(double x) { return {x, 0.0}; }
inline double to_double(const DD& x) { return x.hi + x.lo; }

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(const DD& a, double b) {
    double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    double q2 = r / b;
    return quick_two_sum(q1, q2);
}

struct DDC {
    DD re, im;
};

inline DDC ddc(std::complex<double> z) { return {dd(z.real()), dd(z.imag())}; }

inline DDC ddc_add(const DDC& a, const DDC& b) {
    return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline DDC ddc_mul(const DDC& a, const DDC& b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline DDC ddc_mul(const DDC& a, double b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline DDC ddc_mul(const DDC& a, const DD& b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline DDC ddc_div(const DDC& a, double b) { return {dd_div(a.re, b), dd_div(a.im, b)}; }

inline double ddc_mag(const DDC& a) {
    return std::hypot(a.re.hi, a.im.hi);
}

inline std::complex<double> ddc_to_complex(const DDC& a) {
    return {to_double(a.re), to_double(a.im)};
}

}  // namespace nevanlab::detail
