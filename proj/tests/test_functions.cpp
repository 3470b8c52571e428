#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nevanlab/functions.hpp"

using namespace nevanlab;

namespace {

// |log_mod difference| measured against 1 + |log_mod|, the natural scale
// for log-domain agreement.
void check_lc(const LogComplex& got, double log_mod, double phase, double tol) {
    REQUIRE(!got.is_zero());
    CHECK(std::abs(got.log_mod - log_mod) <= tol * (1.0 + std::abs(log_mod)));
    CHECK(std::abs(wrap_angle(got.phase - phase)) <= tol * (1.0 + std::abs(log_mod)));
}

}  // namespace

TEST_CASE("exp evaluator is the definition") {
    const EntireFunction f = make_exp();
    const double r = 3.7, th = 2.1;
    const LogComplex v = f.evaluate(r, th);
    CHECK(v.log_mod == r * std::cos(th));
    CHECK(v.phase == wrap_angle(r * std::sin(th)));
}

TEST_CASE("expexp log-modulus is exactly e^r on the positive axis") {
    const EntireFunction f = make_expexp();
    const LogComplex v = f.evaluate(10.0, 0.0);
    CHECK(v.log_mod == std::exp(10.0));
    CHECK(v.phase == 0.0);
}

TEST_CASE("polynomial evaluator (descending coefficients)") {
    // z^2 at 2e^{i pi/3}
    const EntireFunction f = make_polynomial({1.0, 0.0, 0.0});
    const LogComplex v = f.evaluate(2.0, kPi / 3.0);
    CHECK(v.log_mod == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(v.phase == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
    // value at the origin is the constant term
    const EntireFunction g = make_polynomial({2.0, -3.0, 0.25});
    CHECK(g.evaluate(0.0, 0.0).log_mod == doctest::Approx(std::log(0.25)));
}

TEST_CASE("single-term exp polynomial matches exp bit for bit") {
    const EntireFunction e = make_exp();
    const EntireFunction p = make_exp_polynomial({{1.0, 1.0}});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rd(0.0, 30.0), td(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        const double r = rd(rng), th = td(rng);
        const LogComplex a = e.evaluate(r, th), b = p.evaluate(r, th);
        CHECK(a.log_mod == b.log_mod);
        CHECK(a.phase == b.phase);
    }
}

TEST_CASE("cosh-like exp polynomial at a real point") {
    // e^z + e^{-z} at z = 2: 2 cosh 2
    const EntireFunction f = make_exp_polynomial({{1.0, 1.0}, {1.0, -1.0}});
    const LogComplex v = f.evaluate(2.0, 0.0);
    CHECK(v.log_mod == doctest::Approx(std::log(2.0 * std::cosh(2.0))).epsilon(1e-14));
    CHECK(v.phase == 0.0);
}

TEST_CASE("bank-laine coefficient values and metadata") {
    const EntireFunction f = bank_laine_coefficient();
    CHECK(f.evaluate(0.0, 0.0).log_mod == doctest::Approx(std::log(0.9375)).epsilon(1e-14));
    const LogComplex v = f.evaluate(1.0, kPi);
    CHECK(v.log_mod == doctest::Approx(std::log(std::exp(-1.0) - 0.0625)).epsilon(1e-12));
    CHECK(std::abs(v.phase) < 1e-15);
    REQUIRE(f.metadata().order.has_value());
    CHECK(f.metadata().order->value == 1.0);
    CHECK(f.metadata().order->source == Provenance::Paper);
    REQUIRE(f.metadata().alpha.has_value());
    CHECK(f.metadata().alpha->value == doctest::Approx(1.0 / kPi));
}

TEST_CASE("gap series example: exponents, flags, partial-sum oracle") {
    const EntireFunction f = gap_series_example();
    const auto& gs = std::get<EntireFunction::GapSeries>(f.kind());
    REQUIRE(gs.exponent_prefix.size() >= 8);
    CHECK(gs.exponent_prefix[3] == 8);  // 2^3
    CHECK(gs.fabry);
    CHECK(gs.fejer);
    // Fabry: lambda_n / n grows without bound along the stored prefix.
    for (std::size_t n = 2; n < gs.exponent_prefix.size(); ++n)
        CHECK(static_cast<double>(gs.exponent_prefix[n]) / n >=
              static_cast<double>(gs.exponent_prefix[n - 1]) / (n - 1));
    const std::size_t last = gs.exponent_prefix.size() - 1;
    CHECK(static_cast<double>(gs.exponent_prefix[last]) / last >
          100.0 * gs.exponent_prefix[1]);
    // Fejer: partial sums of 1/lambda_n stay under 2.
    double s = 0.0;
    for (long long lam : gs.exponent_prefix) s += 1.0 / static_cast<double>(lam);
    CHECK(s < 2.0);

    // Partial-sum oracle at z = 1: sum of 1/(2^n)! for 2^n in {1,2,4,8,16,...}.
    long double oracle = 0.0L;
    for (int n = 0; n <= 5; ++n) {
        const long long lam = 1LL << n;
        long double fact = 1.0L;
        for (long long k = 2; k <= lam; ++k) fact *= k;
        oracle += 1.0L / fact;
    }
    const LogComplex v = f.evaluate(1.0, 0.0);
    CHECK(v.log_mod ==
          doctest::Approx(static_cast<double>(std::log(oracle))).epsilon(1e-12));
    CHECK(v.phase == 0.0);
}

TEST_CASE("airy at the origin matches the closed form") {
    // Ai(0) = 3^{-2/3} / Gamma(2/3)
    const double closed = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const EntireFunction f = make_airy();
    CHECK(f.evaluate(0.0, 0.0).log_mod == doctest::Approx(std::log(closed)).epsilon(1e-13));
    CHECK(std::exp(f.evaluate(0.0, 0.0).log_mod) == doctest::Approx(0.3550280538878172));
}

TEST_CASE("airy evaluator against independent reference values") {
    // Reference values computed with mpmath at 40 digits.
    const EntireFunction f = make_airy();
    struct Ref {
        double r, theta, log_mod, phase;
    };
    const Ref refs[] = {
        {1.5, 0.0, -2.6345744347069734, 0.0},
        {2.0, kPi, -1.48101203240464526, 0.0},
        {2.8284271247461903, kPi / 4.0, -2.74896007448747681, -3.10844806857538424},
        {5.0, 2.214297435588181, 5.67530429118046235, 0.777809711017488939},
        {7.0, 0.3, -12.8745929030337283, 0.840020124665923769},
        {7.0, 2.0, 10.477095170962018, -2.24151934302563728},
        {7.0, 2.9, 2.62674499169767412, -1.75189857376033615},
        {6.5, 1.1, -0.859131123662470982, 1.28441462836713136},
        {12.0, 0.7, -15.6771001985423399, 0.921138329997571341},
        {25.0, 2.2, 80.2205774525252582, 0.0289708563492510557},
        {40.0, 2.0943951023931953, 166.467489538380829, -0.523598775598356919},
        {40.0, 0.0, -170.842951070866107, 0.0},
        {40.0, kPi, -3.08055136217300892, kPi},
        {33.0, -2.6, 89.6043591523105809, 1.69482707643839852},
    };
    for (const Ref& ref : refs) {
        INFO("r=", ref.r, " theta=", ref.theta);
        check_lc(f.evaluate(ref.r, ref.theta), ref.log_mod, ref.phase, 1e-9);
    }
}

TEST_CASE("airy regimes agree on the overlap ring") {
    for (double r : {6.0, 6.5, 7.0, 7.5, 8.0}) {
        for (int k = 0; k < 32; ++k) {
            const double theta = kTwoPi * k / 32.0;
            const LogComplex a = detail::airy_maclaurin(std::polar(r, wrap_angle(theta)));
            const LogComplex b = detail::airy_asymptotic(r, wrap_angle(theta));
            INFO("r=", r, " theta=", theta);
            CHECK(std::abs(a.log_mod - b.log_mod) <= 1e-8 * (1.0 + std::abs(a.log_mod)));
            CHECK(std::abs(wrap_angle(a.phase - b.phase)) <=
                  1e-8 * (1.0 + std::abs(a.log_mod)));
        }
    }
}

TEST_CASE("airy satisfies its equation under central differences") {
    // |Ai'' - z Ai| / (1 + |Ai| |z|) < 1e-6 at random points, h = 1e-4.
    const EntireFunction f = make_airy();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> rd(0.05, 10.0), td(-kPi, kPi);
    const double h = 1e-4;
    for (int i = 0; i < 100; ++i) {
        const double r = rd(rng), th = td(rng);
        const std::complex<double> z = std::polar(r, th);
        auto ai = [&](std::complex<double> w) {
            return f.evaluate(std::abs(w), std::arg(w)).to_complex();
        };
        const std::complex<double> fm = ai(z - h), f0 = ai(z), fp = ai(z + h);
        const std::complex<double> second = (fp - 2.0 * f0 + fm) / (h * h);
        const double resid = std::abs(second - z * f0) / (1.0 + std::abs(f0) * std::abs(z));
        INFO("z=", z.real(), "+", z.imag(), "i");
        CHECK(resid < 1e-6);
    }
}

TEST_CASE("mittag-leffler against independent reference values") {
    // Reference values computed with mpmath at 60+ digits.
    struct Ref {
        double rho, r, theta, log_mod, phase;
    };
    const Ref refs[] = {
        // rho = 1.5 (alpha = 2/3)
        {1.5, 40.0, kPi, -4.65796602227908676, 0.0},
        {1.5, 10.0, kPi, -3.22536652761026003, 0.0},
        {1.5, 15.0, 0.0, 58.5002153012194308, 0.0},
        {1.5, 15.0, 2.0, -3.67424929947672111, 1.18094802930659182},
        {1.5, 10.0, kPi / 2.0, -3.28597767599615168, 1.63776386943698388},
        {1.5, 5.0, kPi / 4.0, 4.68398193086771915, -2.23770960811754617},
        {1.5, 30.0, 0.5, 120.634214675397596, -1.09265804884328425},
        // rho = 0.75 (alpha = 4/3)
        {0.75, 40.0, kPi, -5.05095229562382807, kPi},
        {0.75, 40.0, 0.0, 15.6177325038620368, 0.0},
        {0.75, 40.0, kPi / 3.0, 10.9591445311978898, -1.31954407862776301},
        {0.75, 40.0, 2.8, -5.07827915285070474, -2.81538476310449493},
        {0.75, 20.0, kPi / 2.0, 3.33120596948000803, 2.45464215003967343},
        {0.75, 60.0, 0.0, 21.2705646453355834, 0.0},
        {0.75, 60.0, 2.8, -5.47284284184808408, -2.78917250183309502},
        // rho = 1 must be exp
        {1.0, 15.0, kPi, -15.0, 0.0},
    };
    for (const Ref& ref : refs) {
        const EntireFunction f = make_mittag_leffler(ref.rho);
        INFO("rho=", ref.rho, " r=", ref.r, " theta=", ref.theta);
        check_lc(f.evaluate(ref.r, ref.theta), ref.log_mod, ref.phase, 2e-5);
    }
}

TEST_CASE("mittag-leffler with rho = 1 agrees with exp to 1e-10 in log_mod") {
    const EntireFunction ml = make_mittag_leffler(1.0);
    const EntireFunction e = make_exp();
    for (double r : {0.5, 2.0, 8.0, 15.0, 17.5, 20.0}) {
        for (int k = 0; k < 16; ++k) {
            const double th = kTwoPi * k / 16.0;
            const LogComplex a = ml.evaluate(r, th), b = e.evaluate(r, th);
            INFO("r=", r, " theta=", th);
            CHECK(std::abs(a.log_mod - b.log_mod) <= 1e-10 * std::max(1.0, std::abs(b.log_mod)));
            CHECK(std::abs(wrap_angle(a.phase - b.phase)) <= 1e-9);
        }
    }
}

TEST_CASE("mittag-leffler branches agree near the series boundary") {
    for (double rho : {0.75, 1.2, 1.5, 2.0}) {
        const double rs = detail::ml_series_radius(rho);
        const double r = std::min(rs, 39.0);
        for (int k = 0; k < 12; ++k) {
            const double th = wrap_angle(kTwoPi * k / 12.0);
            const LogComplex a = detail::ml_series(rho, r, th);
            const LogComplex b = detail::ml_asymptotic(rho, r, th);
            INFO("rho=", rho, " r=", r, " theta=", th);
            CHECK(std::abs(a.log_mod - b.log_mod) <= 2e-4 * (1.0 + std::abs(a.log_mod)));
        }
    }
}

TEST_CASE("mittag-leffler unsupported range raises") {
    const EntireFunction f = make_mittag_leffler(0.4);  // order below 1/2
    CHECK_THROWS_AS(f.evaluate(300.0, 0.1), UnsupportedRangeError);
    CHECK_THROWS_AS(make_mittag_leffler(-1.0), ConfigError);
}

TEST_CASE("schwarz reflection for real-coefficient catalog entries") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> td(0.01, kPi - 0.01);
    const EntireFunction fs[] = {
        make_exp(),        make_expexp(),       make_airy(),
        make_polynomial({1.0, -2.0, 0.5}),      make_mittag_leffler(1.5),
        bank_laine_coefficient(),               gap_series_example(),
    };
    for (const auto& f : fs) {
        for (int i = 0; i < 25; ++i) {
            const double th = td(rng);
            const double r = (f.id() == "expexp") ? 3.0 : 9.0;
            const LogComplex a = f.evaluate(r, th);
            const LogComplex b = f.evaluate(r, -th);
            INFO(f.id(), " theta=", th);
            CHECK(std::abs(a.log_mod - b.log_mod) <= 1e-10 * (1.0 + std::abs(a.log_mod)));
            CHECK(std::abs(wrap_angle(a.phase + b.phase)) <= 1e-8 * (1.0 + std::abs(a.log_mod)));
        }
    }
}

TEST_CASE("parse_function grammar") {
    CHECK(parse_function("exp").id() == "exp");
    CHECK(parse_function("airy").id() == "airy");
    CHECK(parse_function("banklaine").id() == "banklaine");
    CHECK(parse_function("gap:fabry").id() == "gap:fabry");
    CHECK(std::get<EntireFunction::MittagLeffler>(parse_function("ml:1.5").kind()).rho ==
          1.5);
    const auto poly =
        std::get<EntireFunction::Polynomial>(parse_function("poly:1,0,0,-0.0625").kind());
    REQUIRE(poly.coeffs.size() == 4);
    CHECK(poly.coeffs[3] == -0.0625);
    const auto ep =
        std::get<EntireFunction::ExpPolynomial>(parse_function("exppoly:1@1,1@-1").kind());
    REQUIRE(ep.terms.size() == 2);
    CHECK(ep.terms[1].second == -1.0);
    // expshift:-1 is e^z - 1
    const EntireFunction es = parse_function("expshift:-1");
    CHECK(es.evaluate(0.0, 0.0).is_zero());
    CHECK_THROWS_AS(parse_function("nope"), ConfigError);
    CHECK_THROWS_AS(parse_function("poly:abc"), ConfigError);
    CHECK_THROWS_AS(parse_function("ml:0"), ConfigError);
}

TEST_CASE("metadata provenance tags are stored") {
    const EntireFunction ml = make_mittag_leffler(1.5);
    REQUIRE(ml.metadata().xi.has_value());
    CHECK(ml.metadata().xi->value == doctest::Approx(1.0 - 1.0 / 3.0));
    CHECK(ml.metadata().xi->source == Provenance::Paper);
    const EntireFunction airy = make_airy();
    REQUIRE(airy.metadata().lower_order.has_value());
    CHECK(airy.metadata().lower_order->value == 1.5);
    CHECK(airy.metadata().lower_order->source == Provenance::Paper);
}
