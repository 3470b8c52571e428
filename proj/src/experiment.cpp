#include "nevanlab/experiment.hpp"

#include <charconv>
#include <cmath>
#include <random>

namespace nevanlab {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

RadialGrid ExperimentConfig::make_grid() const {
    int n = points;
    if (n <= 0) {
        if (spacing == "geometric")
            n = std::max(2, static_cast<int>(std::ceil(
                                points_per_decade * std::log10(rmax / rmin))) +
                                1);
        else
            n = 64;
    }
    if (spacing == "geometric") return RadialGrid::geometric(rmin, rmax, n);
    if (spacing == "linear") return RadialGrid::linear(rmin, rmax, n);
    throw ConfigError("spacing must be 'geometric' or 'linear'");
}

CircleSampling ExperimentConfig::make_sampling() const {
    CircleSampling s;
    s.initial_count = circle_count;
    s.refine_tol = refine_tol;
    s.r = 1.0;
    s.validate();
    return s;
}

json ExperimentConfig::to_json() const {
    json j;
    j["command"] = command;
    if (!fn.empty()) j["fn"] = fn;
    if (!A.empty()) j["A"] = A;
    if (!B.empty()) j["B"] = B;
    j["rmin"] = rmin;
    j["rmax"] = rmax;
    j["points"] = points;
    j["points_per_decade"] = points_per_decade;
    j["spacing"] = spacing;
    j["circle_count"] = circle_count;
    j["refine_tol"] = refine_tol;
    j["ode_tol"] = ode_tol;
    j["tail_fraction"] = tail_fraction;
    j["theta_count"] = theta_count;
    j["slope_threshold"] = slope_threshold;
    j["ic1"] = ic1;
    j["ic2"] = ic2;
    if (!intervals.empty()) j["intervals"] = intervals;
    j["seed"] = seed;
    j["random_ics"] = random_ics;
    if (mu) j["mu"] = *mu;
    if (alpha) j["alpha"] = *alpha;
    if (beta) j["beta"] = *beta;
    if (xi) j["xi"] = *xi;
    if (beta_plus) j["beta_plus"] = *beta_plus;
    if (rho) j["rho"] = *rho;
    if (bound_N) j["N"] = *bound_N;
    return j;
}

void ExperimentConfig::apply_json(const json& j) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("fn", fn);
    get("A", A);
    get("B", B);
    get("rmin", rmin);
    get("rmax", rmax);
    get("points", points);
    get("points_per_decade", points_per_decade);
    get("spacing", spacing);
    get("circle_count", circle_count);
    get("refine_tol", refine_tol);
    get("ode_tol", ode_tol);
    get("tail_fraction", tail_fraction);
    get("theta_count", theta_count);
    get("slope_threshold", slope_threshold);
    get("ic1", ic1);
    get("ic2", ic2);
    get("intervals", intervals);
    get("seed", seed);
    get("random_ics", random_ics);
    for (const char* key : {"mu", "alpha", "beta", "xi", "beta_plus", "rho"}) {
        if (!j.contains(key)) continue;
        const double v = j.at(key).get<double>();
        if (std::string(key) == "mu") mu = v;
        else if (std::string(key) == "alpha") alpha = v;
        else if (std::string(key) == "beta") beta = v;
        else if (std::string(key) == "xi") xi = v;
        else if (std::string(key) == "beta_plus") beta_plus = v;
        else rho = v;
    }
    if (j.contains("N")) bound_N = j.at("N").get<int>();
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_double(row[i]);
        out += "\n";
    }
    return out;
}

std::string to_plot(const std::string& xlabel, const std::string& ylabel,
                    const std::vector<std::pair<double, double>>& points) {
    std::string out = "# " + xlabel + " " + ylabel + "\n";
    for (const auto& [x, y] : points)
        out += format_double(x) + " " + format_double(y) + "\n";
    return out;
}

namespace {

json base_json(const ExperimentConfig& cfg) {
    json j;
    j["version"] = kVersion;
    j["config"] = cfg.to_json();
    return j;
}

json number_or_string(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::vector<CharacteristicSample> sweep_for(const ExperimentConfig& cfg,
                                            const std::string& id) {
    const EntireFunction f = parse_function(id);
    return characteristic_sweep(f, cfg.make_grid(), cfg.make_sampling());
}

InitialCondition ic_from(const std::vector<double>& v) {
    if (v.size() == 2) return {{v[0], 0.0}, {v[1], 0.0}};
    if (v.size() == 4) return {{v[0], v[1]}, {v[2], v[3]}};
    throw ConfigError("initial condition needs 2 (real) or 4 (complex) numbers");
}

}  // namespace

json verdict_to_json(const TheoremVerdict& v) {
    json j;
    j["theorem"] = theorem_name(v.id);
    j["inputs"] = json::object();
    for (const auto& [k, val] : v.inputs) j["inputs"][k] = number_or_string(val);
    j["predicted_bound"] = number_or_string(v.predicted_bound);
    j["hypothesis_satisfied"] = v.hypothesis_satisfied;
    if (v.measured) j["measured"] = number_or_string(*v.measured);
    if (v.conclusion_consistent) j["conclusion_consistent"] = *v.conclusion_consistent;
    return j;
}

CommandOutput run_characteristic(const ExperimentConfig& cfg) {
    if (cfg.fn.empty()) throw ConfigError("characteristic: --fn is required");
    const auto samples = sweep_for(cfg, cfg.fn);
    std::vector<std::vector<double>> rows;
    for (const auto& s : samples) {
        const double alpha_inst = s.logM != 0.0 ? s.T / s.logM
                                                : std::numeric_limits<double>::quiet_NaN();
        rows.push_back({s.r, s.T, s.logM, s.logL, s.ratio, alpha_inst});
    }
    CommandOutput out;
    out.primary = to_csv({"r", "T", "logM", "logL", "ratio_logM_over_T", "alpha_inst"}, rows);
    return out;
}

CommandOutput run_deviation(const ExperimentConfig& cfg) {
    if (cfg.fn.empty()) throw ConfigError("deviation: --fn is required");
    const auto samples = sweep_for(cfg, cfg.fn);
    const DeviationEstimate dev = petrenko_deviation(samples, cfg.tail_fraction);
    const AlphaRegularity reg = alpha_regularity(samples, cfg.tail_fraction);
    const OrderEstimates ord = order_estimates(samples, cfg.tail_fraction);
    json j = base_json(cfg);
    j["beta_minus"] = dev.beta_minus;
    j["beta_plus"] = dev.beta_plus;
    j["alpha_hat"] = reg.alpha_hat;
    j["dispersion"] = reg.dispersion;
    j["rho_hat"] = ord.rho_hat;
    j["mu_hat"] = ord.mu_hat;
    j["window"] = {dev.tail_window.first, dev.tail_window.second};
    CommandOutput out;
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_xi(const ExperimentConfig& cfg) {
    if (cfg.fn.empty()) throw ConfigError("xi: --fn is required");
    const EntireFunction f = parse_function(cfg.fn);
    const XiEstimate est =
        xi_estimate(f, cfg.theta_count, cfg.make_grid(), cfg.slope_threshold);
    json j = base_json(cfg);
    j["xi"] = est.xi;
    j["theta_count"] = est.theta_grid_size;
    j["slope_threshold"] = est.slope_threshold;
    CommandOutput out;
    if (!cfg.table_out.empty()) {
        std::string table = "# theta slope bounded\n";
        for (int k = 0; k < est.theta_grid_size; ++k) {
            table += format_double(kTwoPi * k / est.theta_grid_size) + " " +
                     format_double(est.slopes[k]) + " " +
                     (est.classification[k] ? "1" : "0") + "\n";
        }
        out.side_files.emplace_back(cfg.table_out, table);
        j["per_direction_table"] = cfg.table_out;
    }
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_density(const ExperimentConfig& cfg) {
    const IntervalSet set = IntervalSet::parse(cfg.intervals);
    const RadialGrid grid = cfg.make_grid();
    const DensityLimits lim = density_limits(set, grid);
    json j = base_json(cfg);
    j["upper_dens"] = lim.upper_dens;
    j["lower_dens"] = lim.lower_dens;
    j["upper_logdens"] = lim.upper_logdens;
    j["lower_logdens"] = lim.lower_logdens;
    CommandOutput out;
    if (!cfg.table_out.empty()) {
        std::vector<std::vector<double>> rows;
        for (double r : grid.radii) {
            if (!(r > 1.0)) continue;
            const DensityPoint p = density_profile(set, r);
            rows.push_back({r, p.dens, p.logdens});
        }
        out.side_files.emplace_back(cfg.table_out,
                                    to_csv({"r", "dens", "logdens"}, rows));
        j["profile_table"] = cfg.table_out;
    }
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_oscillate(const ExperimentConfig& cfg) {
    if (cfg.A.empty()) throw ConfigError("oscillate: --A is required");
    const EntireFunction A = parse_function(cfg.A);
    const RadialGrid grid = cfg.make_grid();
    const InitialCondition ic1 = ic_from(cfg.ic1);
    const InitialCondition ic2 = ic_from(cfg.ic2);

    const auto reports = counting_sweep(A, nullptr, ic1, ic2, grid, cfg.ode_tol);
    const LambdaEstimate lam = lambda_estimate(reports, cfg.tail_fraction);

    // Residual probes along the ray, away from the origin.
    IntegrateOptions opt;
    opt.tol = cfg.ode_tol;
    const double probe_max = std::min(cfg.rmax, 5.0);
    std::vector<double> probes;
    for (int i = 1; i <= 20; ++i) probes.push_back(probe_max * i / 20.0);
    opt.ray_stops = probes;
    PathSpec path;
    path.r_end = cfg.rmax;
    const Trajectory t1 = integrate_path(A, nullptr, ic1, path, opt);
    const Trajectory t2 = integrate_path(A, nullptr, ic2, path, opt);
    const ResidualReport resid = bank_laine_residual(A, t1, t2, probes);
    const double drift = wronskian_drift(t1, t2);

    json j = base_json(cfg);
    if (lam.status == LambdaEstimate::Status::Ok)
        j["lambda_hat"] = lam.value;
    else
        j["lambda_hat"] = "too_few_zeros";
    j["bank_laine_residual"] = resid.max_residual;
    j["residual_probes_used"] = resid.probes_used;
    j["wronskian_drift"] = drift;
    j["n_final"] = reports.empty() ? 0 : reports.back().n;

    // Verdicts from measured growth data of the coefficient.
    try {
        const auto samples = sweep_for(cfg, cfg.A);
        const OrderEstimates ord = order_estimates(samples, cfg.tail_fraction);
        const AlphaRegularity reg = alpha_regularity(samples, cfg.tail_fraction);
        const DeviationEstimate dev = petrenko_deviation(samples, cfg.tail_fraction);
        std::optional<double> measured;
        if (lam.status == LambdaEstimate::Status::Ok) measured = lam.value;
        json verdicts = json::array();
        verdicts.push_back(verdict_to_json(
            assemble_verdict(TheoremId::BankLaine66, {{"rho", ord.rho_hat}}, measured)));
        verdicts.push_back(verdict_to_json(assemble_verdict(
            TheoremId::Thm12,
            {{"alpha", std::min(1.0, reg.alpha_hat)},
             {"beta", cfg.beta.value_or(0.0)},
             {"rho", ord.rho_hat},
             {"mu", ord.mu_hat}},
            measured)));
        verdicts.push_back(verdict_to_json(assemble_verdict(
            TheoremId::Cor23,
            {{"beta_plus", dev.beta_plus}, {"rho", ord.rho_hat}, {"mu", ord.mu_hat}},
            measured)));
        if (ord.rho_hat >= 0.5 && ord.rho_hat < 1.0)
            verdicts.push_back(verdict_to_json(
                assemble_verdict(TheoremId::Rossi77, {{"rho", ord.rho_hat}}, measured)));
        j["verdicts"] = verdicts;
    } catch (const Error& e) {
        j["verdicts"] = json::array();
        j["verdict_note"] = e.what();
    }

    // Randomized-IC repeats: growth of n(r_max) for seeded random pairs.
    if (cfg.random_ics > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        json rand_runs = json::array();
        for (int k = 0; k < cfg.random_ics; ++k) {
            InitialCondition r1{{dist(rng), dist(rng)}, {dist(rng), dist(rng)}};
            InitialCondition r2{{dist(rng), dist(rng)}, {dist(rng), dist(rng)}};
            if (std::abs(r1.f0) < 0.1) r1.f0 += 0.5;
            if (std::abs(r2.f0) < 0.1) r2.f0 += 0.5;
            const auto rr = counting_sweep(A, nullptr, r1, r2, grid, cfg.ode_tol);
            json run;
            run["n_final"] = rr.back().n;
            const LambdaEstimate rl = lambda_estimate(rr, cfg.tail_fraction);
            if (rl.status == LambdaEstimate::Status::Ok) run["lambda_hat"] = rl.value;
            rand_runs.push_back(run);
        }
        j["random_ic_runs"] = rand_runs;
    }

    CommandOutput out;
    std::vector<std::vector<double>> rows;
    for (const auto& rep : reports)
        rows.push_back({rep.r, static_cast<double>(rep.n), rep.winding_raw, rep.N});
    const std::string table_path =
        cfg.table_out.empty() ? "n_table.csv" : cfg.table_out;
    out.side_files.emplace_back(table_path, to_csv({"r", "n", "winding", "N"}, rows));
    j["n_table"] = table_path;
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_growth(const ExperimentConfig& cfg) {
    if (cfg.A.empty() || cfg.B.empty()) throw ConfigError("growth: --A and --B are required");
    const EntireFunction A = parse_function(cfg.A);
    const EntireFunction B = parse_function(cfg.B);
    const RadialGrid grid = cfg.make_grid();
    const InitialCondition ic = ic_from(cfg.ic1);

    const auto probe = growth_probe(A, B, ic, grid, cfg.ode_tol);

    // Slopes of the order proxy over the top and the previous decade.
    std::vector<double> lx, ly;
    for (const auto& g : probe)
        if (g.loglog_scale) {
            lx.push_back(std::log(g.r));
            ly.push_back(*g.loglog_scale);
        }
    auto window_slope = [&](double r_lo, double r_hi) -> std::optional<double> {
        std::vector<double> wx, wy;
        for (std::size_t i = 0; i < lx.size(); ++i)
            if (lx[i] >= std::log(r_lo) - 1e-12 && lx[i] <= std::log(r_hi) + 1e-12) {
                wx.push_back(lx[i]);
                wy.push_back(ly[i]);
            }
        if (wx.size() < 3) return std::nullopt;
        return fit_slope(wx, wy).slope;
    };
    const auto slope_top = window_slope(grid.back() / 2.0, grid.back());
    const auto slope_prev = window_slope(grid.back() / 8.0, grid.back() / 4.0);

    // Measured hypothesis inputs.
    const XiEstimate xiA = xi_estimate(A, cfg.theta_count, grid, cfg.slope_threshold);
    const auto samplesB = sweep_for(cfg, cfg.B);
    const DeviationEstimate devB = petrenko_deviation(samplesB, cfg.tail_fraction);
    const OrderEstimates ordB = order_estimates(samplesB, cfg.tail_fraction);

    double coeff_order_max = 0.0;
    try {
        const auto samplesA = sweep_for(cfg, cfg.A);
        coeff_order_max = std::max(order_estimates(samplesA, cfg.tail_fraction).rho_hat,
                                   ordB.rho_hat);
    } catch (const Error&) {
        coeff_order_max = ordB.rho_hat;
    }

    std::map<std::string, double> common = {
        {"xi_A", xiA.xi},
        {"coeff_order_max", coeff_order_max},
    };
    if (slope_prev) common["slope_prev"] = *slope_prev;
    std::optional<double> measured = slope_top;

    auto verdict_with = [&](TheoremId id, std::map<std::string, double> extra) {
        extra.insert(common.begin(), common.end());
        return verdict_to_json(assemble_verdict(id, extra, measured));
    };

    json j = base_json(cfg);
    j["verdicts"] = json::array({
        verdict_with(TheoremId::Thm33, {{"beta_minus_B", devB.beta_minus}}),
        verdict_with(TheoremId::Thm35, {{"mu_B", ordB.mu_hat}}),
        verdict_with(TheoremId::Cond18, {{"mu_B", ordB.mu_hat}}),
    });
    if (slope_top) j["slope_top"] = *slope_top;
    if (slope_prev) j["slope_prev"] = *slope_prev;
    j["finite_order_signature"] =
        slope_top && slope_prev && (*slope_top - *slope_prev < 0.3);

    // Bounded-on-ray-zero check: sign of kappa + log max(|u|,|v|) at r_max.
    {
        IntegrateOptions opt;
        opt.tol = cfg.ode_tol;
        PathSpec path;
        path.r_end = grid.back();
        const Trajectory t = integrate_path(A, &B, ic, path, opt);
        const SolverState& last = t.ray_states.back();
        const double m = std::max(std::abs(last.u), std::abs(last.v));
        const double scale = m > 0.0 ? last.kappa + std::log(m)
                                     : -std::numeric_limits<double>::infinity();
        j["ray0_final_scale"] = number_or_string(scale);
        j["ray0_bounded"] = scale <= 0.0;
        j["ray0_log_f"] = number_or_string(last.log_f().is_zero()
                                               ? -std::numeric_limits<double>::infinity()
                                               : last.log_f().log_mod);
    }

    CommandOutput out;
    std::vector<std::pair<double, double>> pts;
    for (const auto& g : probe)
        if (g.loglog_scale) pts.emplace_back(std::log(g.r), *g.loglog_scale);
    const std::string table_path =
        cfg.table_out.empty() ? "order_proxy.txt" : cfg.table_out;
    out.side_files.emplace_back(table_path, to_plot("log_r", "loglog_scale", pts));
    j["order_proxy_table"] = table_path;
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_bounds(const ExperimentConfig& cfg) {
    json j = base_json(cfg);
    json table = json::object();
    if (cfg.mu) {
        table["petrenko_bound"] = number_or_string(petrenko_bound(*cfg.mu));
        if (*cfg.mu >= 0.5 && *cfg.mu < 1.0)
            table["rossi_bound"] = number_or_string(rossi_bound(*cfg.mu));
        if (cfg.bound_N)
            table["be_bound"] = number_or_string(be_bound(*cfg.bound_N, *cfg.mu));
    }
    if (cfg.rho) {
        const BankLaineResult b = bank_laine_bound(*cfg.rho);
        table["bank_laine_bound"] = number_or_string(b.value);
        table["bank_laine_applicable"] = b.applicable;
        if (b.infinite_for_small_order) table["bank_laine_note"] = "lambda(E) infinite below order 1/2";
        if (*cfg.rho >= 0.5 && *cfg.rho < 1.0)
            table["rossi_bound"] = number_or_string(rossi_bound(*cfg.rho));
    }
    if (cfg.alpha)
        table["thm12_bound"] =
            number_or_string(thm12_bound(*cfg.alpha, cfg.beta.value_or(0.0)));
    if (cfg.beta_plus)
        table["cor23_bound"] = number_or_string(cor23_bound(*cfg.beta_plus));
    if (cfg.xi) {
        table["thm33_threshold"] = number_or_string(thm33_threshold(*cfg.xi));
        table["thm35_threshold"] = number_or_string(thm35_threshold(*cfg.xi));
        table["cond18_threshold"] = number_or_string(cond18_threshold(*cfg.xi));
    }
    if (table.empty())
        throw ConfigError("bounds: provide at least one of --mu --rho --alpha --beta-plus --xi");
    j["bounds"] = table;
    CommandOutput out;
    out.primary = j.dump(2) + "\n";
    return out;
}

CommandOutput run_report(const ExperimentConfig& cfg) {
    if (cfg.fn.empty()) throw ConfigError("report: --fn is required");
    CommandOutput out;
    ExperimentConfig sub = cfg;
    sub.command = "characteristic";
    out.side_files.emplace_back("characteristic.csv", run_characteristic(sub).primary);
    sub.command = "deviation";
    out.side_files.emplace_back("deviation.json", run_deviation(sub).primary);

    const auto samples = sweep_for(cfg, cfg.fn);
    std::vector<std::pair<double, double>> ratio_pts;
    for (const auto& s : samples)
        if (s.ratio_defined()) ratio_pts.emplace_back(s.r, s.ratio);
    out.side_files.emplace_back("ratio_vs_r.txt", to_plot("r", "logM_over_T", ratio_pts));

    if (!cfg.A.empty()) {
        ExperimentConfig osc = cfg;
        osc.command = "oscillate";
        osc.table_out = "n_vs_r.csv";
        const CommandOutput o = run_oscillate(osc);
        out.side_files.emplace_back("oscillate.json", o.primary);
        for (const auto& f : o.side_files) out.side_files.push_back(f);
        std::vector<std::pair<double, double>> n_pts;
        const auto reports =
            counting_sweep(parse_function(cfg.A), nullptr, ic_from(cfg.ic1),
                           ic_from(cfg.ic2), cfg.make_grid(), cfg.ode_tol);
        for (const auto& rep : reports)
            n_pts.emplace_back(rep.r, static_cast<double>(rep.n));
        out.side_files.emplace_back("n_vs_r.txt", to_plot("r", "n", n_pts));
    }
    if (!cfg.A.empty() && !cfg.B.empty()) {
        const auto probe = growth_probe(parse_function(cfg.A), parse_function(cfg.B),
                                        ic_from(cfg.ic1), cfg.make_grid(), cfg.ode_tol);
        std::vector<std::pair<double, double>> pts;
        for (const auto& g : probe)
            if (g.loglog_scale) pts.emplace_back(std::log(g.r), *g.loglog_scale);
        out.side_files.emplace_back("loglog_growth_vs_logr.txt",
                                    to_plot("log_r", "loglog_scale", pts));
    }
    json j = base_json(cfg);
    json files = json::array();
    for (const auto& f : out.side_files) files.push_back(f.first);
    j["files"] = files;
    out.primary = j.dump(2) + "\n";
    return out;
}

}  // namespace nevanlab
