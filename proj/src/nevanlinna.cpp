#include "nevanlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>

namespace nevanlab {

namespace {

constexpr double kGolden = 0.6180339887498948;

double log_mod_at(const EntireFunction& f, double r, double theta) {
    return f.evaluate(r, theta).log_mod;
}

// Golden-section refinement of an extremum bracketed by three samples.
// `sign` is +1 for a maximum, -1 for a minimum.
double refine_extremum(const EntireFunction& f, double r, double lo, double hi,
                       double sign, double angle_tol) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = sign * log_mod_at(f, r, x1);
    double f2 = sign * log_mod_at(f, r, x2);
    while (b - a > angle_tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = sign * log_mod_at(f, r, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = sign * log_mod_at(f, r, x2);
        }
    }
    return sign * std::max(f1, f2);
}

std::vector<const CharacteristicSample*> tail_of(
    std::span<const CharacteristicSample> samples, double tail_fraction) {
    if (samples.empty()) throw PreconditionError("empty sample list");
    const std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * samples.size())));
    std::vector<const CharacteristicSample*> tail;
    for (std::size_t i = samples.size() - keep; i < samples.size(); ++i)
        tail.push_back(&samples[i]);
    return tail;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(i);
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
}

}  // namespace

std::vector<CharacteristicSample> characteristic_sweep(const EntireFunction& f,
                                                       const RadialGrid& grid,
                                                       const CircleSampling& params) {
    if (grid.empty()) throw PreconditionError("characteristic_sweep: empty grid");
    std::vector<CharacteristicSample> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double r = grid.radii[i];
        CircleSampling s = params;
        s.r = r;
        double T;
        try {
            T = circle_integral_logplus(
                [&](double theta) { return f.evaluate(r, theta); }, s);
        } catch (ConvergenceError& e) {
            throw ConvergenceError("characteristic_sweep at r=" + std::to_string(r) +
                                       ": " + e.what(),
                                   e.best, e.gap);
        }
        const int n = s.initial_count;
        const double h = kTwoPi / n;
        double best_max = -std::numeric_limits<double>::infinity();
        double best_min = std::numeric_limits<double>::infinity();
        int arg_max = 0, arg_min = 0;
        for (int j = 0; j < n; ++j) {
            const double v = log_mod_at(f, r, h * j);
            if (v > best_max) {
                best_max = v;
                arg_max = j;
            }
            if (v < best_min) {
                best_min = v;
                arg_min = j;
            }
        }
        const double logM = std::max(
            best_max,
            refine_extremum(f, r, h * (arg_max - 1), h * (arg_max + 1), +1.0, 1e-6));
        const double logL = std::min(
            best_min,
            refine_extremum(f, r, h * (arg_min - 1), h * (arg_min + 1), -1.0, 1e-6));
        CharacteristicSample cs;
        cs.r = r;
        cs.T = std::max(0.0, T);
        cs.logM = logM;
        cs.logL = logL;
        cs.ratio = cs.T > 0.0 ? logM / cs.T : std::numeric_limits<double>::quiet_NaN();
        out[i] = cs;
    });
    return out;
}

OrderEstimates order_estimates(std::span<const CharacteristicSample> samples,
                               double tail_fraction) {
    if (samples.size() < 8) throw PreconditionError("order_estimates: need >= 8 samples");
    std::vector<double> lx, ly;
    for (const auto* s : tail_of(samples, tail_fraction)) {
        if (s->T <= 0.0) continue;  // skipped per contract
        lx.push_back(std::log(s->r));
        ly.push_back(std::log(s->T));
    }
    if (lx.size() < 8)
        throw PreconditionError("order_estimates: fewer than 8 usable samples (T > 0)");
    // Sliding one-decade windows realize limsup (max) and liminf (min).
    const double decade = std::log(10.0);
    std::vector<double> slopes;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < lx.size() && lx[j + 1] - lx[i] <= decade * (1.0 + 1e-9)) ++j;
        if (j - i + 1 < 4) continue;
        if (lx[j] - lx[i] < 0.9 * decade) continue;
        slopes.push_back(fit_slope(std::span(lx).subspan(i, j - i + 1),
                                   std::span(ly).subspan(i, j - i + 1))
                             .slope);
    }
    if (slopes.empty())
        slopes.push_back(fit_slope(lx, ly).slope);  // tail shorter than a decade
    OrderEstimates est;
    est.rho_hat = *std::max_element(slopes.begin(), slopes.end());
    est.mu_hat = *std::min_element(slopes.begin(), slopes.end());
    return est;
}

DeviationEstimate petrenko_deviation(std::span<const CharacteristicSample> samples,
                                     double tail_fraction) {
    auto tail = tail_of(samples, tail_fraction);
    DeviationEstimate est;
    est.beta_minus = std::numeric_limits<double>::infinity();
    est.beta_plus = -std::numeric_limits<double>::infinity();
    for (const auto* s : tail) {
        if (!(s->T > 0.0))
            throw PreconditionError("petrenko_deviation: tail sample with T <= 0 at r=" +
                                    std::to_string(s->r));
        const double ratio = s->logM / s->T;
        est.per_r_ratios.emplace_back(s->r, ratio);
        est.beta_minus = std::min(est.beta_minus, ratio);
        est.beta_plus = std::max(est.beta_plus, ratio);
    }
    if (est.per_r_ratios.empty()) throw PreconditionError("petrenko_deviation: empty tail");
    est.tail_window = {tail.front()->r, tail.back()->r};
    return est;
}

AlphaRegularity alpha_regularity(std::span<const CharacteristicSample> samples,
                                 double tail_fraction) {
    std::vector<double> vals;
    for (const auto* s : tail_of(samples, tail_fraction))
        if (s->logM > 0.0) vals.push_back(s->T / s->logM);
    if (vals.empty())
        throw PreconditionError("alpha_regularity: no tail samples with logM > 0");
    AlphaRegularity reg;
    reg.alpha_hat = quantile(vals, 0.5);
    reg.dispersion = quantile(vals, 0.75) - quantile(vals, 0.25);
    return reg;
}

XiEstimate xi_estimate(const EntireFunction& f, int theta_count,
                       const RadialGrid& grid, double slope_threshold) {
    if (theta_count < 64) throw PreconditionError("xi_estimate: theta_count must be >= 64");
    if (grid.decades() < 1.5 - 1e-9)
        throw PreconditionError("xi_estimate: grid must span at least 1.5 decades");
    // Fit over the top decade of the grid.
    const double r_lo = grid.back() / 10.0;
    std::vector<double> lx;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.radii[i] >= r_lo * (1.0 - 1e-12)) {
            lx.push_back(std::log(grid.radii[i]));
            idx.push_back(i);
        }
    }
    XiEstimate est;
    est.theta_grid_size = theta_count;
    est.slope_threshold = slope_threshold;
    est.classification.assign(theta_count, 0);
    est.slopes.assign(theta_count, 0.0);
    const double log_rmax = std::log(grid.back());
    parallel_for(static_cast<std::size_t>(theta_count), [&](std::size_t k) {
        const double theta = kTwoPi * static_cast<double>(k) / theta_count;
        std::vector<double> ly(lx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const LogComplex v = f.evaluate(grid.radii[idx[j]], theta);
            ly[j] = v.is_zero() ? 0.0 : std::max(0.0, v.log_mod);
        }
        const double slope = fit_slope(lx, ly).slope;
        est.slopes[k] = slope;
        const bool size_ok = ly.back() < slope_threshold * log_rmax * 2.0;
        est.classification[k] = (slope < slope_threshold && size_ok) ? 1 : 0;
    });
    int bounded = 0;
    for (char c : est.classification) bounded += c;
    est.xi = static_cast<double>(bounded) / theta_count;
    return est;
}

double theta_arc(const EntireFunction& f, double r, int theta_count) {
    if (theta_count < 256) throw PreconditionError("theta_arc: theta_count must be >= 256");
    std::vector<char> inside(theta_count);
    bool any_in = false, any_out = false;
    for (int j = 0; j < theta_count; ++j) {
        const LogComplex v = f.evaluate(r, kTwoPi * j / theta_count);
        inside[j] = (!v.is_zero() && v.log_mod > 0.0) ? 1 : 0;
        (inside[j] ? any_in : any_out) = true;
    }
    if (!any_out) return std::numeric_limits<double>::infinity();
    if (!any_in) return 0.0;
    // Bisect each sign change of log|f| to locate arc endpoints.
    auto crossing = [&](double a, double b) {
        double fa = log_mod_at(f, r, a);
        for (int it = 0; it < 60 && b - a > 1e-6; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = log_mod_at(f, r, m);
            if ((fa > 0.0) == (fm > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    const double h = kTwoPi / theta_count;
    std::vector<std::pair<double, bool>> edges;  // (angle, entering D)
    for (int j = 0; j < theta_count; ++j) {
        const int jn = (j + 1) % theta_count;
        if (inside[j] != inside[jn])
            edges.emplace_back(crossing(h * j, h * (j + 1)), inside[jn] == 1);
    }
    double longest = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!edges[e].second) continue;  // want an entry edge
        const auto& exit = edges[(e + 1) % edges.size()];
        double len = exit.first - edges[e].first;
        if (len <= 0.0) len += kTwoPi;
        longest = std::max(longest, len);
    }
    return longest;
}

}  // namespace nevanlab
