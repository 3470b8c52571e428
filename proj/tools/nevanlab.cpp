// Command-line front end: function selection, experiment configuration,
// CSV/JSON emission, and plot-data files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nevanlab/experiment.hpp"

namespace {

using nevanlab::CommandOutput;
using nevanlab::ExperimentConfig;

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("--rmin", cfg.rmin, "smallest radius");
    cmd->add_option("--rmax", cfg.rmax, "largest radius");
    cmd->add_option("--points", cfg.points, "grid size (0 derives from per-decade density)");
    cmd->add_option("--points-per-decade", cfg.points_per_decade, "geometric grid density");
    cmd->add_option("--spacing", cfg.spacing, "geometric|linear");
    cmd->add_option("--circle-count", cfg.circle_count, "initial circle sample count");
    cmd->add_option("--refine-tol", cfg.refine_tol, "quadrature refinement tolerance");
    cmd->add_option("--tol", cfg.ode_tol, "ODE local error per unit arc");
    cmd->add_option("--tail-fraction", cfg.tail_fraction, "fraction of the grid used as tail");
    cmd->add_option("--theta-count", cfg.theta_count, "angular grid size");
    cmd->add_option("--slope-threshold", cfg.slope_threshold, "xi classification threshold");
    cmd->add_option("--seed", cfg.seed, "seed for randomized experiments");
    cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
    cmd->add_option("--table", cfg.table_out, "secondary table output path");
}

void write_output(const ExperimentConfig& cfg, const CommandOutput& out) {
    namespace fs = std::filesystem;
    fs::path base = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out).parent_path();
    for (const auto& [name, contents] : out.side_files) {
        fs::path p(name);
        if (p.is_relative() && !base.empty()) p = base / p;
        if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
        std::ofstream f(p, std::ios::binary);
        f << contents;
    }
    if (cfg.out.empty()) {
        std::cout << out.primary;
    } else {
        fs::path p(cfg.out);
        if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
        std::ofstream f(p, std::ios::binary);
        f << out.primary;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nevanlab: growth, deviation and oscillation laboratory for entire functions"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    auto* c_char = app.add_subcommand("characteristic", "T, logM, logL sweep as CSV");
    c_char->add_option("--fn", cfg.fn, "function id")->required();
    add_common_flags(c_char, cfg, config_path);

    auto* c_dev = app.add_subcommand("deviation", "Petrenko deviations and regularity");
    c_dev->add_option("--fn", cfg.fn, "function id")->required();
    add_common_flags(c_dev, cfg, config_path);

    auto* c_xi = app.add_subcommand("xi", "angular measure of polynomially bounded directions");
    c_xi->add_option("--fn", cfg.fn, "function id")->required();
    add_common_flags(c_xi, cfg, config_path);

    auto* c_den = app.add_subcommand("density", "densities of an interval set");
    c_den->add_option("--intervals", cfg.intervals, "a1:b1,a2:b2,...")->required();
    add_common_flags(c_den, cfg, config_path);

    auto* c_osc = app.add_subcommand("oscillate", "zero counting for f'' + A f = 0");
    c_osc->add_option("--A", cfg.A, "coefficient id")->required();
    c_osc->add_option("--ic1", cfg.ic1, "first solution initial condition")->expected(2, 4);
    c_osc->add_option("--ic2", cfg.ic2, "second solution initial condition")->expected(2, 4);
    c_osc->add_option("--random-ics", cfg.random_ics, "extra seeded random IC pairs");
    add_common_flags(c_osc, cfg, config_path);

    auto* c_gro = app.add_subcommand("growth", "order proxy for f'' + A f' + B f = 0");
    c_gro->add_option("--A", cfg.A, "first-order coefficient id")->required();
    c_gro->add_option("--B", cfg.B, "zeroth-order coefficient id")->required();
    c_gro->add_option("--ic", cfg.ic1, "initial condition")->expected(2, 4);
    add_common_flags(c_gro, cfg, config_path);

    auto* c_bnd = app.add_subcommand("bounds", "closed-form theorem bound table");
    double mu = 0, alpha = 0, beta = 0, xi = 0, beta_plus = 0, rho = 0;
    int N = 0;
    auto* o_mu = c_bnd->add_option("--mu", mu, "lower order");
    auto* o_alpha = c_bnd->add_option("--alpha", alpha, "regularity constant");
    auto* o_beta = c_bnd->add_option("--beta", beta, "exceptional-set lower log-density");
    auto* o_xi = c_bnd->add_option("--xi", xi, "bounded-direction measure");
    auto* o_bp = c_bnd->add_option("--beta-plus", beta_plus, "upper deviation (inf allowed)");
    auto* o_rho = c_bnd->add_option("--rho", rho, "order");
    auto* o_N = c_bnd->add_option("--N", N, "unbounded component count");
    add_common_flags(c_bnd, cfg, config_path);

    auto* c_rep = app.add_subcommand("report", "bundle of CSV/JSON/plot-data files");
    c_rep->add_option("--fn", cfg.fn, "function id")->required();
    c_rep->add_option("--A", cfg.A, "coefficient id for oscillation outputs");
    c_rep->add_option("--B", cfg.B, "coefficient id for growth outputs");
    add_common_flags(c_rep, cfg, config_path);

    // Config file loads first so explicit flags override it: values land in
    // cfg before the parse, and CLI11 only overwrites fields that were given.
    try {
        for (int i = 1; i + 1 < argc || i < argc; ++i) {
            std::string arg = argv[i];
            std::string path;
            if (arg == "--config" && i + 1 < argc)
                path = argv[i + 1];
            else if (arg.rfind("--config=", 0) == 0)
                path = arg.substr(9);
            if (!path.empty()) {
                std::ifstream f(path);
                if (!f) throw nevanlab::ConfigError("cannot open config file " + path);
                nlohmann::json j;
                f >> j;
                cfg.apply_json(j);
                break;
            }
        }
    } catch (const nevanlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_bnd->parsed()) {
            if (o_mu->count()) cfg.mu = mu;
            if (o_alpha->count()) cfg.alpha = alpha;
            if (o_beta->count()) cfg.beta = beta;
            if (o_xi->count()) cfg.xi = xi;
            if (o_bp->count()) cfg.beta_plus = beta_plus;
            if (o_rho->count()) cfg.rho = rho;
            if (o_N->count()) cfg.bound_N = N;
        }

        CommandOutput out;
        if (c_char->parsed()) {
            cfg.command = "characteristic";
            out = nevanlab::run_characteristic(cfg);
        } else if (c_dev->parsed()) {
            cfg.command = "deviation";
            out = nevanlab::run_deviation(cfg);
        } else if (c_xi->parsed()) {
            cfg.command = "xi";
            out = nevanlab::run_xi(cfg);
        } else if (c_den->parsed()) {
            cfg.command = "density";
            out = nevanlab::run_density(cfg);
        } else if (c_osc->parsed()) {
            cfg.command = "oscillate";
            out = nevanlab::run_oscillate(cfg);
        } else if (c_gro->parsed()) {
            cfg.command = "growth";
            out = nevanlab::run_growth(cfg);
        } else if (c_bnd->parsed()) {
            cfg.command = "bounds";
            out = nevanlab::run_bounds(cfg);
        } else if (c_rep->parsed()) {
            cfg.command = "report";
            out = nevanlab::run_report(cfg);
        }
        write_output(cfg, out);
        return 0;
    } catch (const nevanlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nevanlab::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const nevanlab::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const nevanlab::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const nevanlab::StiffnessError& e) {
        std::cerr << "stiffness: " << e.what() << "\n";
        return 3;
    } catch (const nevanlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
