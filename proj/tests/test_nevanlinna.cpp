#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nevanlab/nevanlinna.hpp"

using namespace nevanlab;

namespace {

CircleSampling default_sampling() {
    CircleSampling s;
    s.initial_count = 512;
    s.refine_tol = 1e-9;
    return s;
}

std::vector<CharacteristicSample> sweep(const EntireFunction& f, double rmin,
                                        double rmax, int points) {
    return characteristic_sweep(f, RadialGrid::geometric(rmin, rmax, points),
                                default_sampling());
}

}  // namespace

TEST_CASE("characteristic of e^z: T = r/pi, logM = r, logL = -r") {
    const EntireFunction f = make_exp();
    const RadialGrid grid(std::vector<double>{1.0, kPi, 10.0});
    const auto samples = characteristic_sweep(f, grid, default_sampling());
    REQUIRE(samples.size() == 3);
    for (const auto& s : samples) {
        CHECK(s.T == doctest::Approx(s.r / kPi).epsilon(1e-7));
        CHECK(s.logM == doctest::Approx(s.r).epsilon(1e-9));
        CHECK(s.logL == doctest::Approx(-s.r).epsilon(1e-9));
        CHECK(s.ratio == doctest::Approx(kPi).epsilon(1e-6));
    }
}

TEST_CASE("characteristic of exp(e^z): logM is e^r exactly") {
    const EntireFunction f = make_expexp();
    const RadialGrid grid(std::vector<double>{10.0});
    const auto samples = characteristic_sweep(f, grid, default_sampling());
    CHECK(samples[0].logM == std::exp(10.0));
    // T ~ e^r (2 pi^3 r)^{-1/2}: the saddle-point constant, cross-checked
    // against an independent scipy quadrature (896.74 at r = 10).
    CHECK(samples[0].T ==
          doctest::Approx(std::exp(10.0) / std::sqrt(2.0 * std::pow(kPi, 3.0) * 10.0))
              .epsilon(0.05));
    CHECK(samples[0].T == doctest::Approx(896.7375922652).epsilon(1e-6));
}

TEST_CASE("bounded function: T = 0 and the ratio is undefined") {
    const EntireFunction f = make_constant(0.5);
    const auto samples = sweep(f, 1.0, 100.0, 9);
    for (const auto& s : samples) {
        CHECK(s.T == 0.0);
        CHECK(!s.ratio_defined());
        CHECK(s.logM == doctest::Approx(std::log(0.5)));
    }
}

TEST_CASE("per-sample growth inequalities hold along a doubling grid") {
    // T(r) <= log+ M(r) and logM(r) <= 3 T(2r) + eps; logL <= logM.
    std::vector<double> radii;
    for (int k = 0; k <= 6; ++k) radii.push_back(1.5 * std::pow(2.0, k));
    const RadialGrid grid(radii);
    for (const char* id : {"exp", "airy", "gap:fabry", "poly:1,0,-2"}) {
        const auto samples =
            characteristic_sweep(parse_function(id), grid, default_sampling());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            INFO(id, " r=", samples[i].r);
            CHECK(samples[i].T >= 0.0);
            CHECK(samples[i].T <= std::max(0.0, samples[i].logM) + 1e-6);
            CHECK(samples[i].logL <= samples[i].logM + 1e-12);
            if (i + 1 < samples.size()) {
                CHECK(samples[i].logM <= 3.0 * samples[i + 1].T + 1e-6);
            }
        }
    }
}

TEST_CASE("order estimates: exp, polynomial, airy") {
    {
        const auto s = sweep(make_exp(), 1.0, 100.0, 40);
        const OrderEstimates est = order_estimates(s, 0.5);
        CHECK(est.rho_hat == doctest::Approx(1.0).epsilon(0.02));
        CHECK(est.mu_hat == doctest::Approx(1.0).epsilon(0.02));
    }
    {
        // T of a polynomial grows like deg * log r; the log-log slope decays
        // like 1/log r, so push the grid far out.
        const auto s = sweep(make_polynomial({1.0, 0.0, 0.0}), 1e6, 1e12, 40);
        const OrderEstimates est = order_estimates(s, 0.5);
        CHECK(std::abs(est.rho_hat) < 0.05);
    }
    {
        const auto s = sweep(make_airy(), 15.0, 40.0, 24);
        const OrderEstimates est = order_estimates(s, 0.6);
        CHECK(est.rho_hat == doctest::Approx(1.5).epsilon(0.04));
    }
    {
        const auto s = sweep(make_exp(), 1.0, 10.0, 7);
        CHECK_THROWS_AS(order_estimates(s, 0.5), PreconditionError);
    }
}

TEST_CASE("petrenko deviation: exp, airy, gap series") {
    {
        const auto s = sweep(make_exp(), 1.0, 100.0, 40);
        const DeviationEstimate d = petrenko_deviation(s, 0.5);
        CHECK(d.beta_minus == doctest::Approx(kPi).epsilon(0.02));
        CHECK(d.beta_plus == doctest::Approx(kPi).epsilon(0.02));
        CHECK(d.beta_minus <= d.beta_plus);
        CHECK(d.beta_minus >= 1.0 - 0.02);
    }
    {
        const auto s = sweep(make_airy(), 5.0, 40.0, 40);
        const DeviationEstimate d = petrenko_deviation(s, 0.35);
        CHECK(d.beta_minus == doctest::Approx(3.0 * kPi / 4.0).epsilon(0.10));
        CHECK(d.tail_window.second == doctest::Approx(40.0));
    }
    {
        const auto s = sweep(gap_series_example(), 2.0, 40.0, 40);
        const DeviationEstimate d = petrenko_deviation(s, 0.4);
        CHECK(d.beta_minus == doctest::Approx(1.0).epsilon(0.15));
    }
    {
        const auto s = sweep(make_constant(0.5), 1.0, 100.0, 12);
        CHECK_THROWS_AS(petrenko_deviation(s, 0.5), PreconditionError);
    }
}

TEST_CASE("alpha regularity: exp, mittag-leffler 0.75, polynomial") {
    {
        const auto s = sweep(make_exp(), 1.0, 100.0, 40);
        const AlphaRegularity a = alpha_regularity(s, 0.5);
        CHECK(a.alpha_hat == doctest::Approx(1.0 / kPi).epsilon(0.01));
        CHECK(a.dispersion < 0.01);
    }
    {
        const auto s = sweep(make_mittag_leffler(0.75), 5.0, 40.0, 40);
        const AlphaRegularity a = alpha_regularity(s, 0.35);
        CHECK(a.alpha_hat == doctest::Approx(1.0 / (kPi * 0.75)).epsilon(0.10));
    }
    {
        const auto s = sweep(make_polynomial({2.0, 0.0, 1.0}), 10.0, 1e4, 30);
        const AlphaRegularity a = alpha_regularity(s, 0.5);
        CHECK(a.alpha_hat == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("xi estimates: polynomial 1, cosh-like 0, mittag-leffler 2/3, exp 1/2") {
    // Slope threshold 8 separates polynomial degrees from exponential rates
    // only once r max is large enough that even near-boundary rays show
    // rates above it; 400 puts the marginal band below one grid cell.
    const RadialGrid grid = RadialGrid::geometric(1.0, 400.0, 64);
    {
        const XiEstimate e = xi_estimate(make_polynomial({1.0, 1.0}), 128, grid);
        CHECK(e.xi == 1.0);
    }
    {
        const XiEstimate e =
            xi_estimate(make_exp_polynomial({{1.0, 1.0}, {1.0, -1.0}}), 128, grid);
        CHECK(e.xi <= 0.05);
    }
    {
        const XiEstimate e = xi_estimate(make_mittag_leffler(1.5), 192, grid);
        CHECK(e.xi == doctest::Approx(2.0 / 3.0).epsilon(0.075));
    }
    {
        const XiEstimate e = xi_estimate(make_exp(), 256, grid);
        CHECK(e.xi == doctest::Approx(0.5).epsilon(0.04));
    }
    CHECK_THROWS_AS(xi_estimate(make_exp(), 32, grid), PreconditionError);
    CHECK_THROWS_AS(xi_estimate(make_exp(), 128, RadialGrid::geometric(1.0, 10.0, 16)),
                    PreconditionError);
}

TEST_CASE("xi is invariant under rotation of the function") {
    const RadialGrid grid = RadialGrid::geometric(1.0, 400.0, 64);
    const EntireFunction base = make_mittag_leffler(1.5);
    const XiEstimate e0 = xi_estimate(base, 128, grid);
    for (double phi : {0.37, 1.41, 2.9}) {
        const XiEstimate er = xi_estimate(base.rotated(phi), 128, grid);
        CHECK(std::abs(er.xi - e0.xi) <= 1.0 / 128.0 + 1e-12);
    }
}

TEST_CASE("theta_arc: exp gives pi, large constants fill the circle") {
    CHECK(theta_arc(make_exp(), 3.0, 512) == doctest::Approx(kPi).epsilon(1e-5));
    CHECK(theta_arc(make_exp(), 17.0, 512) == doctest::Approx(kPi).epsilon(1e-5));
    CHECK(std::isinf(theta_arc(make_constant(2.0), 1.0, 512)));
    // |z^3| = 8 > 1 on the whole circle of radius 2
    CHECK(std::isinf(theta_arc(make_polynomial({1.0, 0.0, 0.0, 0.0}), 2.0, 512)));
    // |1/2| < 1 everywhere: no arc at all
    CHECK(theta_arc(make_constant(0.5), 1.0, 512) == 0.0);
    CHECK_THROWS_AS(theta_arc(make_exp(), 1.0, 128), PreconditionError);
}

TEST_CASE("arc-length growth identity for e^z stays constant in r") {
    // With theta(t) = pi for all t, log log M(r) - pi * int_{r0}^{r/2} dt/(t theta)
    // equals log(2 r0) independently of r.
    const EntireFunction f = make_exp();
    const double r0 = 2.0;
    auto integral_to = [&](double upper) {
        const int n = 400;
        double acc = 0.0;
        double prev_t = r0, prev_v = 1.0 / (r0 * theta_arc(f, r0, 512));
        for (int i = 1; i <= n; ++i) {
            const double t = r0 * std::pow(upper / r0, static_cast<double>(i) / n);
            const double v = 1.0 / (t * theta_arc(f, t, 512));
            acc += 0.5 * (prev_v + v) * (t - prev_t);
            prev_t = t;
            prev_v = v;
        }
        return acc;
    };
    const double expected = std::log(2.0 * r0);
    for (double r : {10.0, 30.0, 100.0}) {
        const double loglogM = std::log(r);  // log M(r, e^z) = r
        const double value = loglogM - kPi * integral_to(r / 2.0);
        CHECK(value == doctest::Approx(expected).epsilon(1e-3));
    }
}
