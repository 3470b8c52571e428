#include "nevanlab/odelab.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nevanlab {

namespace {

using Cplx = std::complex<double>;

constexpr double kRenormHi = 4.85165195409790278e8;   // e^20
constexpr double kRenormLo = 2.06115362243855783e-9;  // e^-20

struct Rhs {
    const EntireFunction* A;
    const EntireFunction* B;  // null for the second-order-coefficient-free equation

    // y = (f, f'); returns dy/dz.
    std::array<Cplx, 2> operator()(Cplx z, const std::array<Cplx, 2>& y) const {
        const double r = std::abs(z);
        const double th = (r == 0.0) ? 0.0 : std::arg(z);
        const Cplx a = A->evaluate(r, th).to_complex();
        Cplx fpp;
        if (B) {
            const Cplx b = B->evaluate(r, th).to_complex();
            fpp = -b * y[0] - a * y[1];
        } else {
            fpp = -a * y[0];
        }
        return {y[1], fpp};
    }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
    std::array<Cplx, 2> y;
    double err;  // max-norm of the embedded error estimate
};

// One DOPRI5 step along the parametrization z(s) = z0 + dir-dependent map.
// `dz` maps a parameter increment to the complex tangent at parameter s.
template <typename ZofS>
StepResult dopri5_step(const Rhs& rhs, const ZofS& zof, double s, double h,
                       const std::array<Cplx, 2>& y) {
    auto f = [&](double sp, const std::array<Cplx, 2>& yp) {
        auto [z, dz] = zof(sp);
        auto d = rhs(z, yp);
        return std::array<Cplx, 2>{d[0] * dz, d[1] * dz};
    };
    const auto k1 = f(s, y);
    auto yt = [&](std::initializer_list<std::pair<double, const std::array<Cplx, 2>*>> terms) {
        std::array<Cplx, 2> out = y;
        for (const auto& [w, k] : terms) {
            out[0] += h * w * (*k)[0];
            out[1] += h * w * (*k)[1];
        }
        return out;
    };
    const auto k2 = f(s + c2 * h, yt({{a21, &k1}}));
    const auto k3 = f(s + c3 * h, yt({{a31, &k1}, {a32, &k2}}));
    const auto k4 = f(s + c4 * h, yt({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const auto k5 = f(s + c5 * h, yt({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const auto k6 =
        f(s + h, yt({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    StepResult res;
    res.y = yt({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const auto k7 = f(s + h, res.y);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Cplx de = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
        err = std::max(err, std::abs(de));
    }
    res.err = err;
    return res;
}

void renormalize(std::array<Cplx, 2>& y, double& kappa) {
    const double m = std::max(std::abs(y[0]), std::abs(y[1]));
    if (m == 0.0) return;
    if (m > kRenormHi || m < kRenormLo) {
        const int k = std::ilogb(m);
        for (auto& c : y)
            c = {std::ldexp(c.real(), -k), std::ldexp(c.imag(), -k)};
        kappa += k * M_LN2;
    }
}

struct Segment {
    // z(s) and dz/ds over s in [s0, s1]; |dz/ds| = arc_rate.
    std::function<std::pair<Cplx, Cplx>(double)> zof;
    double s0, s1;
    double arc_rate;
    std::vector<double> stops;  // parameter values to record (sorted, within (s0, s1])
    bool is_circle = false;
};

class Integrator {
public:
    Integrator(const Rhs& rhs, const IntegrateOptions& opt, double scale_r)
        : rhs_(rhs), opt_(opt), min_arc_(1e-12 * std::max(scale_r, 1.0)) {}

    long steps() const { return steps_; }
    bool budget_exhausted() const { return budget_exhausted_; }

    // Advances state through a segment; invokes record(state) at each stop.
    // Returns false if the step budget ran out mid-segment.
    bool run(Segment& seg, std::array<Cplx, 2>& y, double& kappa, Cplx& z_out,
             const std::function<void(const SolverState&)>& record) {
        double s = seg.s0;
        std::size_t next_stop = 0;
        double h = std::min(0.01 / std::max(seg.arc_rate, 1e-12),
                            (seg.s1 - seg.s0) / 8.0);
        h = std::max(h, 1e-300);
        double prev_quality = 1.0;
        while (s < seg.s1 - 1e-14 * std::max(1.0, std::abs(seg.s1))) {
            if (steps_ >= opt_.max_steps) {
                budget_exhausted_ = true;
                z_out = seg.zof(s).first;
                return false;
            }
            bool capped = false;
            double target = seg.s1;
            if (next_stop < seg.stops.size()) target = std::min(target, seg.stops[next_stop]);
            if (s + h >= target) {
                h = target - s;
                capped = true;
            }
            const double harc = h * seg.arc_rate;
            if (!capped && harc < min_arc_)
                throw StiffnessError("integrate_path: step size underflow",
                                     seg.zof(s).first);
            ++steps_;
            StepResult st = dopri5_step(rhs_, seg.zof, s, h, y);
            const double scale =
                std::max({1.0, std::abs(y[0]), std::abs(y[1]), std::abs(st.y[0]),
                          std::abs(st.y[1])});
            const double quality = st.err / (scale * opt_.tol * harc);
            if (quality <= 1.0) {
                s += h;
                y = st.y;
                renormalize(y, kappa);
                if (next_stop < seg.stops.size() &&
                    s >= seg.stops[next_stop] - 1e-14 * std::max(1.0, std::abs(s))) {
                    SolverState rec;
                    rec.z = seg.zof(s).first;
                    rec.u = y[0];
                    rec.v = y[1];
                    rec.kappa = kappa;
                    record(rec);
                    ++next_stop;
                }
                double fac = 0.9 * std::pow(std::max(quality, 1e-10), -0.14) *
                             std::pow(std::max(prev_quality, 1e-10), 0.08);
                prev_quality = quality;
                h *= std::clamp(fac, 0.2, 6.0);
            } else {
                h *= std::clamp(0.9 * std::pow(quality, -0.2), 0.1, 0.9);
            }
        }
        z_out = seg.zof(seg.s1).first;
        return true;
    }

private:
    Rhs rhs_;
    IntegrateOptions opt_;
    double min_arc_;
    long steps_ = 0;
    bool budget_exhausted_ = false;
};

Trajectory integrate_impl(const EntireFunction& A, const EntireFunction* B,
                          std::array<Cplx, 2> y, double kappa, const PathSpec& path,
                          const IntegrateOptions& opt) {
    if (!(opt.tol >= 1e-13 && opt.tol <= 1e-6))
        throw PreconditionError("integrate_path: tol must lie in [1e-13, 1e-6]");
    if (!(path.r_start >= 0.0 && path.r_end > path.r_start))
        throw PreconditionError("integrate_path: need 0 <= r_start < r_end");
    if (path.then_circle && opt.circle_samples < 4)
        throw PreconditionError("integrate_path: circle_samples too small");

    Rhs rhs{&A, B};
    Integrator integ(rhs, opt, path.r_end);
    Trajectory traj;
    const Cplx dir = std::polar(1.0, path.theta);
    renormalize(y, kappa);

    auto push_ray = [&](const SolverState& st) {
        traj.ray_states.push_back(st);
        traj.ray_radii.push_back(std::abs(st.z));
    };
    {
        SolverState st;
        st.z = path.r_start * dir;
        st.u = y[0];
        st.v = y[1];
        st.kappa = kappa;
        push_ray(st);
    }

    Segment ray;
    ray.zof = [dir](double s) { return std::pair<Cplx, Cplx>{s * dir, dir}; };
    ray.s0 = path.r_start;
    ray.s1 = path.r_end;
    ray.arc_rate = 1.0;
    for (double r : opt.ray_stops)
        if (r > path.r_start && r < path.r_end) ray.stops.push_back(r);
    ray.stops.push_back(path.r_end);
    std::sort(ray.stops.begin(), ray.stops.end());
    ray.stops.erase(std::unique(ray.stops.begin(), ray.stops.end()), ray.stops.end());

    Cplx z_now;
    const bool ray_done = integ.run(ray, y, kappa, z_now, push_ray);
    traj.reached_r = std::abs(z_now);

    if (ray_done && path.then_circle) {
        const int n = opt.circle_samples;
        SolverState first;
        first.z = z_now;
        first.u = y[0];
        first.v = y[1];
        first.kappa = kappa;
        traj.circle_states.push_back(first);
        traj.circle_r = path.r_end;

        Segment circle;
        const double r = path.r_end, th0 = path.theta;
        circle.zof = [r, th0](double t) {
            const Cplx z = std::polar(r, th0 + t);
            return std::pair<Cplx, Cplx>{z, Cplx(0.0, 1.0) * z};
        };
        circle.s0 = 0.0;
        circle.s1 = kTwoPi;
        circle.arc_rate = r;
        circle.is_circle = true;
        for (int j = 1; j < n; ++j) circle.stops.push_back(kTwoPi * j / n);
        circle.stops.push_back(kTwoPi);
        integ.run(circle, y, kappa, z_now,
                  [&](const SolverState& st) {
                      if (traj.circle_states.size() < static_cast<std::size_t>(n))
                          traj.circle_states.push_back(st);
                      else
                          traj.monodromy = st;  // state after the full turn
                  });
    }
    traj.steps = integ.steps();
    traj.budget_exhausted = integ.budget_exhausted();
    return traj;
}

}  // namespace

Trajectory integrate_path(const EntireFunction& A, const EntireFunction* B,
                          const InitialCondition& ic, const PathSpec& path,
                          const IntegrateOptions& opt) {
    return integrate_impl(A, B, {ic.f0, ic.fp0}, 0.0, path, opt);
}

Trajectory integrate_from(const EntireFunction& A, const EntireFunction* B,
                          const SolverState& from, const PathSpec& path,
                          const IntegrateOptions& opt) {
    PathSpec p = path;
    p.r_start = std::abs(from.z);
    p.theta = (p.r_start == 0.0) ? path.theta : std::arg(from.z);
    return integrate_impl(A, B, {from.u, from.v}, from.kappa, p, opt);
}

LogComplex wronskian(const SolverState& s1, const SolverState& s2) {
    if (std::abs(s1.z - s2.z) > 1e-9 * (1.0 + std::abs(s1.z)))
        throw PreconditionError("wronskian: states are at different points");
    const Cplx w = s1.u * s2.v - s1.v * s2.u;
    if (w == Cplx(0.0, 0.0)) return LogComplex::zero();
    return {std::log(std::abs(w)) + s1.kappa + s2.kappa, wrap_angle(std::arg(w))};
}

std::vector<LogComplex> product_on_circle(const Trajectory& t1, const Trajectory& t2,
                                          double r, int min_samples) {
    if (t1.circle_states.empty() || t2.circle_states.empty())
        throw PreconditionError("product_on_circle: trajectories lack circle samples");
    if (t1.circle_states.size() != t2.circle_states.size())
        throw PreconditionError("product_on_circle: sample counts differ");
    if (static_cast<int>(t1.circle_states.size()) < min_samples)
        throw PreconditionError("product_on_circle: fewer samples than requested");
    if (std::abs(t1.circle_r - r) > 1e-9 * r || std::abs(t2.circle_r - r) > 1e-9 * r)
        throw PreconditionError("product_on_circle: radius mismatch");
    std::vector<LogComplex> e(t1.circle_states.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (std::abs(t1.circle_states[j].z - t2.circle_states[j].z) > 1e-9 * r)
            throw PreconditionError("product_on_circle: samples not aligned");
        e[j] = lc_mul(t1.circle_states[j].log_f(), t2.circle_states[j].log_f());
        if (e[j].is_zero())
            throw RefinementNeeded("product_on_circle: exact zero of E on a sample", 0.0);
    }
    return e;
}

ZeroCountReport zero_count(std::span<const LogComplex> samples, double r) {
    if (samples.size() < 4) throw PreconditionError("zero_count: too few samples");
    double winding = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const auto& a = samples[j];
        const auto& b = samples[(j + 1) % samples.size()];
        if (a.is_zero() || b.is_zero())
            throw PreconditionError("zero_count: zero sample in input");
        const double step = wrap_angle(b.phase - a.phase);
        if (std::abs(step) >= kPi / 2.0)
            throw RefinementNeeded("zero_count: phase step >= pi/2", winding);
        winding += step;
    }
    winding /= kTwoPi;
    ZeroCountReport rep;
    rep.r = r;
    rep.winding_raw = winding;
    const long n = std::lround(winding);
    if (std::abs(winding - static_cast<double>(n)) >= 1e-3)
        throw RefinementNeeded("zero_count: winding not close to an integer", winding);
    if (n < 0)
        throw PreconditionError("zero_count: negative winding for an entire function");
    rep.n = static_cast<int>(n);
    rep.N = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

namespace {

// Counts zeros of E = f1 f2 inside |z| = r by continuing both solutions
// from their states at radius `from_r` and winding around the circle.
// Doubles the sample count on refinement requests; perturbs the radius
// when a sample lands on a zero of E.
struct PairCounter {
    const EntireFunction* A;
    const EntireFunction* B;
    double tol;
    // Ray states of both solutions at matching radii.
    std::vector<double> base_radii;
    std::vector<SolverState> s1, s2;

    int count_at(double r, int hint_samples) const {
        const std::size_t i = index_below(r);
        double use_r = r;
        for (int attempt = 0; attempt < 4; ++attempt) {
            int samples = hint_samples;
            for (int doubling = 0; doubling < 8; ++doubling) {
                try {
                    auto e = circle_samples(s1[i], s2[i], use_r, samples);
                    return zero_count(e, use_r).n;
                } catch (RefinementNeeded&) {
                    samples *= 2;
                    if (samples > (1 << 20)) break;
                }
            }
            // Either persistent refinement failure or an on-circle zero:
            // nudge the radius (zeros are isolated) and retry.
            use_r = use_r * (1.0 + 1e-6);
        }
        throw ConvergenceError("counting: no stable winding at r=" + std::to_string(r),
                               0.0, 0.0);
    }

    std::vector<LogComplex> circle_samples(const SolverState& a, const SolverState& b,
                                           double r, int samples) const {
        IntegrateOptions opt;
        opt.tol = tol;
        opt.circle_samples = samples;
        PathSpec path;
        path.r_end = r;
        path.then_circle = true;
        Trajectory t1 = integrate_from(*A, B, a, path, opt);
        Trajectory t2 = integrate_from(*A, B, b, path, opt);
        return product_on_circle(t1, t2, r, samples);
    }

    std::size_t index_below(double r) const {
        std::size_t i = 0;
        for (std::size_t k = 0; k < base_radii.size(); ++k)
            if (base_radii[k] < r * (1.0 - 1e-12)) i = k;
        return i;
    }
};

}  // namespace

std::vector<ZeroCountReport> counting_sweep(const EntireFunction& A,
                                            const EntireFunction* B,
                                            const InitialCondition& ic1,
                                            const InitialCondition& ic2,
                                            const RadialGrid& grid, double tol) {
    if (grid.empty()) throw PreconditionError("counting_sweep: empty grid");
    if (ic1.f0 * ic2.f0 == Cplx(0.0, 0.0))
        throw PreconditionError("counting_sweep: E(0) = 0 for the chosen initial conditions");

    // One outward ray pass per solution, recording states at grid radii.
    IntegrateOptions ray_opt;
    ray_opt.tol = tol;
    ray_opt.ray_stops.assign(grid.radii.begin(), grid.radii.end());
    PathSpec ray;
    ray.r_end = grid.back();
    Trajectory t1 = integrate_path(A, B, ic1, ray, ray_opt);
    Trajectory t2 = integrate_path(A, B, ic2, ray, ray_opt);
    if (t1.ray_radii.size() != t2.ray_radii.size())
        throw ConvergenceError("counting_sweep: ray passes disagree", 0.0, 0.0);

    PairCounter counter{&A, B, tol, t1.ray_radii, t1.ray_states, t2.ray_states};

    std::vector<int> counts(grid.size());
    int hint = 64;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        counts[i] = counter.count_at(grid.radii[i], hint);
        hint = std::max(64, 8 * (counts[i] + 4));
        // keep powers of two so dyadic doubling stays aligned
        int p = 64;
        while (p < hint) p *= 2;
        hint = p;
        if (i > 0 && counts[i] < counts[i - 1])
            throw ConvergenceError("counting_sweep: n(r) decreased along the grid",
                                   counts[i], counts[i] - counts[i - 1]);
    }

    // Piecewise-constant n(t): refine jump radii, then integrate n(t)/t.
    struct Piece {
        double lo, hi;
        int n;
    };
    std::vector<Piece> pieces;
    std::function<void(double, int, double, int, int)> refine =
        [&](double lo, int nlo, double hi, int nhi, int depth) {
            if (nhi == nlo) {
                pieces.push_back({lo, hi, nlo});
                return;
            }
            if ((hi - lo) / hi < 1e-3 || depth > 24 || nhi - nlo > 2) {
                // Unresolved jumps: spread them log-uniformly inside the gap.
                const int jumps = nhi - nlo;
                double a = lo;
                for (int k = 1; k <= jumps; ++k) {
                    const double b =
                        lo * std::pow(hi / lo, static_cast<double>(k) / (jumps + 1));
                    pieces.push_back({a, b, nlo + k - 1});
                    a = b;
                }
                pieces.push_back({a, hi, nhi});
                return;
            }
            const double mid = std::sqrt(lo * hi);
            const int nmid = counter.count_at(mid, std::max(64, 8 * (nhi + 4)));
            refine(lo, nlo, mid, nmid, depth + 1);
            refine(mid, nmid, hi, nhi, depth + 1);
        };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        refine(grid.radii[i], counts[i], grid.radii[i + 1], counts[i + 1], 0);

    std::vector<ZeroCountReport> reports(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ZeroCountReport rep;
        rep.r = grid.radii[i];
        rep.n = counts[i];
        rep.winding_raw = counts[i];
        double N = 0.0;
        for (const Piece& p : pieces) {
            if (p.lo >= rep.r * (1.0 - 1e-12)) break;
            N += p.n * std::log(std::min(p.hi, rep.r) / p.lo);
        }
        rep.N = N;
        reports[i] = rep;
    }
    return reports;
}

LambdaEstimate lambda_estimate(std::span<const ZeroCountReport> reports,
                               double tail_fraction) {
    std::vector<double> lx, ly;
    const std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * reports.size())));
    std::size_t usable = 0;
    for (std::size_t i = reports.size() - std::min(keep, reports.size());
         i < reports.size(); ++i) {
        if (reports[i].n >= 5) ++usable;
        if (reports[i].n >= 1) {
            lx.push_back(std::log(reports[i].r));
            ly.push_back(std::log(static_cast<double>(reports[i].n)));
        }
    }
    LambdaEstimate est;
    if (usable < 3) return est;  // TooFewZeros
    const double decade = std::log(10.0);
    std::vector<double> slopes;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < lx.size() && lx[j + 1] - lx[i] <= decade * (1.0 + 1e-9)) ++j;
        if (j - i + 1 < 4 || lx[j] - lx[i] < 0.9 * decade) continue;
        slopes.push_back(fit_slope(std::span(lx).subspan(i, j - i + 1),
                                   std::span(ly).subspan(i, j - i + 1))
                             .slope);
    }
    if (slopes.empty() && lx.size() >= 3) slopes.push_back(fit_slope(lx, ly).slope);
    if (slopes.empty()) return est;
    est.status = LambdaEstimate::Status::Ok;
    est.value = *std::max_element(slopes.begin(), slopes.end());
    return est;
}

ResidualReport bank_laine_residual(const EntireFunction& A, const Trajectory& t1,
                                   const Trajectory& t2,
                                   std::span<const double> probe_radii) {
    if (t1.ray_states.empty() || t2.ray_states.empty())
        throw PreconditionError("bank_laine_residual: empty trajectories");
    const LogComplex c = wronskian(t1.ray_states.front(), t2.ray_states.front());
    if (c.is_zero())
        throw PreconditionError(
            "bank_laine_residual: dependent solutions (zero wronskian)");
    auto find_state = [](const Trajectory& t, double r) -> const SolverState* {
        for (std::size_t i = 0; i < t.ray_radii.size(); ++i)
            if (std::abs(t.ray_radii[i] - r) <= 1e-9 * (1.0 + r)) return &t.ray_states[i];
        return nullptr;
    };
    ResidualReport rep;
    for (double r : probe_radii) {
        const SolverState* s1 = find_state(t1, r);
        const SolverState* s2 = find_state(t2, r);
        if (!s1 || !s2)
            throw PreconditionError("bank_laine_residual: probe radius not recorded");
        if (s1->u == Cplx(0.0, 0.0) || s2->u == Cplx(0.0, 0.0)) {
            ++rep.probes_skipped;  // probe on a zero of E
            continue;
        }
        const double r_abs = std::abs(s1->z);
        const double th = std::arg(s1->z);
        const Cplx a = A.evaluate(r_abs, th).to_complex();
        const Cplx r1 = s1->v / s1->u, r2 = s2->v / s2->u;
        const Cplx e_ratio1 = r1 + r2;           // E'/E
        const Cplx e_ratio2 = 2.0 * r1 * r2 - 2.0 * a;  // E''/E for this equation
        const LogComplex log_e = lc_mul(s1->log_f(), s2->log_f());
        const LogComplex c_over_e = lc_div(c, log_e);
        const LogComplex log_c2_over_e2 = lc_mul(c_over_e, c_over_e);
        if (log_c2_over_e2.log_mod > 700.0) {
            ++rep.probes_skipped;  // effectively a zero of E
            continue;
        }
        const Cplx c2e2 = log_c2_over_e2.to_complex();
        const Cplx lhs = -4.0 * a;
        const Cplx rhs_val = c2e2 + 2.0 * e_ratio2 - e_ratio1 * e_ratio1;
        const double resid = std::abs(lhs - rhs_val) / (1.0 + 4.0 * std::abs(a));
        rep.max_residual = std::max(rep.max_residual, resid);
        ++rep.probes_used;
    }
    if (rep.probes_used == 0)
        throw PreconditionError("bank_laine_residual: every probe sat on a zero of E");
    return rep;
}

double wronskian_drift(const Trajectory& t1, const Trajectory& t2) {
    if (t1.ray_states.size() != t2.ray_states.size() || t1.ray_states.empty())
        throw PreconditionError("wronskian_drift: trajectories not aligned");
    const LogComplex w0 = wronskian(t1.ray_states.front(), t2.ray_states.front());
    if (w0.is_zero()) throw PreconditionError("wronskian_drift: zero initial wronskian");
    double drift = 0.0;
    auto scan = [&](const std::vector<SolverState>& a, const std::vector<SolverState>& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            const LogComplex w = wronskian(a[i], b[i]);
            const Cplx rel = lc_div(w, w0).to_complex() - 1.0;
            drift = std::max(drift, std::abs(rel));
        }
    };
    scan(t1.ray_states, t2.ray_states);
    scan(t1.circle_states, t2.circle_states);
    return drift;
}

std::vector<GrowthSample> growth_probe(const EntireFunction& A,
                                       const EntireFunction& B,
                                       const InitialCondition& ic,
                                       const RadialGrid& grid, double tol,
                                       int ray_count, long max_steps_per_ray) {
    if (grid.empty()) throw PreconditionError("growth_probe: empty grid");
    if (ray_count < 4) throw PreconditionError("growth_probe: too few rays");
    // Per ray: kappa + log max(|u|,|v|) at each reached grid radius.
    std::vector<std::vector<double>> ray_scale(
        ray_count, std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN()));
    parallel_for(static_cast<std::size_t>(ray_count), [&](std::size_t k) {
        IntegrateOptions opt;
        opt.tol = tol;
        opt.max_steps = max_steps_per_ray;
        opt.ray_stops.assign(grid.radii.begin(), grid.radii.end());
        PathSpec path;
        path.theta = kTwoPi * static_cast<double>(k) / ray_count;
        path.r_end = grid.back();
        Trajectory t = integrate_path(A, &B, ic, path, opt);
        for (std::size_t i = 0; i < t.ray_radii.size(); ++i) {
            // match recorded radius to grid slot
            for (std::size_t g = 0; g < grid.size(); ++g) {
                if (std::abs(t.ray_radii[i] - grid.radii[g]) <=
                    1e-9 * (1.0 + grid.radii[g])) {
                    const SolverState& st = t.ray_states[i];
                    const double m = std::max(std::abs(st.u), std::abs(st.v));
                    if (m > 0.0)
                        ray_scale[k][g] = st.kappa + std::log(m);
                    break;
                }
            }
        }
    });
    std::vector<GrowthSample> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out[g].r = grid.radii[g];
        double best = -std::numeric_limits<double>::infinity();
        bool any = false;
        for (int k = 0; k < ray_count; ++k) {
            const double v = ray_scale[static_cast<std::size_t>(k)][g];
            if (!std::isnan(v)) {
                best = std::max(best, v);
                any = true;
            }
        }
        if (any && best > 0.0) out[g].loglog_scale = std::log(best);
    }
    return out;
}

}  // namespace nevanlab
