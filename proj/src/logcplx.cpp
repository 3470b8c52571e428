#include "nevanlab/logcplx.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace nevanlab {

unsigned worker_thread_count() {
    static const unsigned cached = [] {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("NEVANLAB_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
        }
        return hw;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(worker_thread_count(), n);
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

RadialGrid::RadialGrid(std::vector<double> rs) : radii(std::move(rs)) {
    if (radii.empty()) throw ConfigError("RadialGrid: empty");
    if (radii.front() <= 0.0) throw ConfigError("RadialGrid: radii must be positive");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw ConfigError("RadialGrid: radii must be strictly increasing");
}

RadialGrid RadialGrid::geometric(double r_min, double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw ConfigError("RadialGrid::geometric: need 0 < r_min < r_max and points >= 2");
    std::vector<double> rs(points);
    const double q = std::log(r_max / r_min);
    for (int i = 0; i < points; ++i)
        rs[i] = r_min * std::exp(q * static_cast<double>(i) / (points - 1));
    rs.front() = r_min;
    rs.back() = r_max;
    return RadialGrid(std::move(rs));
}

RadialGrid RadialGrid::linear(double r_min, double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw ConfigError("RadialGrid::linear: need 0 < r_min < r_max and points >= 2");
    std::vector<double> rs(points);
    for (int i = 0; i < points; ++i)
        rs[i] = r_min + (r_max - r_min) * static_cast<double>(i) / (points - 1);
    rs.front() = r_min;
    rs.back() = r_max;
    return RadialGrid(std::move(rs));
}

double RadialGrid::decades() const {
    return std::log10(radii.back() / radii.front());
}

void CircleSampling::validate() const {
    if (!(r > 0.0)) throw ConfigError("CircleSampling: r must be positive");
    if (initial_count < 16 || (initial_count & (initial_count - 1)) != 0)
        throw ConfigError("CircleSampling: initial_count must be a power of two >= 16");
    if (!(refine_tol > 0.0)) throw ConfigError("CircleSampling: refine_tol must be positive");
}

namespace {

double logplus(const LogComplex& v) {
    if (v.is_zero()) return 0.0;
    return std::max(0.0, v.log_mod);
}

// Composite Simpson over the full circle with periodic wrap-around.
double simpson_mean(const std::vector<double>& g) {
    const std::size_t n = g.size();
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; j += 2)
        acc += g[j] + 4.0 * g[j + 1] + g[(j + 2) % n];
    const double h = kTwoPi / static_cast<double>(n);
    return acc * h / 3.0 / kTwoPi;
}

}  // namespace

double circle_integral_logplus(const std::function<LogComplex(double)>& f_theta,
                               const CircleSampling& s, int max_doublings) {
    s.validate();
    std::size_t n = static_cast<std::size_t>(s.initial_count);
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j)
        g[j] = logplus(f_theta(kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
    double prev = simpson_mean(g);
    for (int depth = 0; depth < max_doublings; ++depth) {
        std::vector<double> g2(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            g2[2 * j] = g[j];
            g2[2 * j + 1] = logplus(
                f_theta(kTwoPi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n))));
        }
        g.swap(g2);
        n *= 2;
        const double cur = simpson_mean(g);
        const double gap = std::abs(cur - prev);
        if (gap < s.refine_tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw ConvergenceError("circle_integral_logplus: no convergence after max doublings",
                           prev, std::abs(prev - simpson_mean(g)));
}

LineFit fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() < 3 || xs.size() != ys.size())
        throw PreconditionError("fit_slope: need at least 3 points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1])
            throw PreconditionError("fit_slope: xs must be strictly increasing");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += d * d;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace nevanlab
