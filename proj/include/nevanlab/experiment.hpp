#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nevanlab/bounds.hpp"
#include "nevanlab/densities.hpp"
#include "nevanlab/functions.hpp"
#include "nevanlab/nevanlinna.hpp"
#include "nevanlab/odelab.hpp"

namespace nevanlab {

/// Shortest round-trip decimal representation (to_chars); "inf"/"nan" for
/// the non-finite values. This is what keeps repeated runs byte-identical.
std::string format_double(double x);

/// Resolved experiment configuration; identical config + seed means
/// byte-identical output.
struct ExperimentConfig {
    std::string command;
    std::string fn;  // subject function for scalar experiments
    std::string A;   // zeroth/first-order coefficient
    std::string B;   // zeroth-order coefficient of the two-term equation
    double rmin = 1.0;
    double rmax = 40.0;
    int points = 0;  // 0 = derive from points_per_decade
    int points_per_decade = 48;
    std::string spacing = "geometric";
    int circle_count = 512;
    double refine_tol = 1e-9;
    double ode_tol = 1e-10;
    double tail_fraction = 0.5;
    int theta_count = 256;
    double slope_threshold = 8.0;
    std::vector<double> ic1{1.0, 0.0};
    std::vector<double> ic2{1.0, 1.0};
    std::string intervals;
    std::string out;        // output path ("" = stdout)
    std::string table_out;  // secondary table path
    unsigned long long seed = 0;
    int random_ics = 0;
    // bounds inputs
    std::optional<double> mu, alpha, beta, xi, beta_plus, rho;
    std::optional<int> bound_N;

    RadialGrid make_grid() const;
    CircleSampling make_sampling() const;
    nlohmann::json to_json() const;
    void apply_json(const nlohmann::json& j);  // config file; flags override later
};

struct CommandOutput {
    // Primary payload plus optional side files (path -> contents).
    std::string primary;
    std::vector<std::pair<std::string, std::string>> side_files;
};

CommandOutput run_characteristic(const ExperimentConfig& cfg);
CommandOutput run_deviation(const ExperimentConfig& cfg);
CommandOutput run_xi(const ExperimentConfig& cfg);
CommandOutput run_density(const ExperimentConfig& cfg);
CommandOutput run_oscillate(const ExperimentConfig& cfg);
CommandOutput run_growth(const ExperimentConfig& cfg);
CommandOutput run_bounds(const ExperimentConfig& cfg);
CommandOutput run_report(const ExperimentConfig& cfg);

nlohmann::json verdict_to_json(const TheoremVerdict& v);

/// CSV helper with a fixed column order.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

/// Two-column plot data with a '#'-prefixed header line.
std::string to_plot(const std::string& xlabel, const std::string& ylabel,
                    const std::vector<std::pair<double, double>>& points);

}  // namespace nevanlab
