#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nevanlab/functions.hpp"
#include "nevanlab/logcplx.hpp"

namespace nevanlab {

/// Per-radius growth record. ratio = logM/T is NaN while T == 0.
struct CharacteristicSample {
    double r = 0.0;
    double T = 0.0;     // Nevanlinna characteristic, nats
    double logM = 0.0;  // log max modulus
    double logL = 0.0;  // log min modulus
    double ratio = std::numeric_limits<double>::quiet_NaN();

    bool ratio_defined() const { return !std::isnan(ratio); }
};

/// T by circle quadrature (proximity integral only; exact for entire f),
/// logM / logL by dense sampling plus golden-section refinement.
std::vector<CharacteristicSample> characteristic_sweep(const EntireFunction& f,
                                                       const RadialGrid& grid,
                                                       const CircleSampling& params);

struct OrderEstimates {
    double rho_hat = 0.0;  // limsup proxy: max slope over decade windows
    double mu_hat = 0.0;   // liminf proxy: min slope
};

OrderEstimates order_estimates(std::span<const CharacteristicSample> samples,
                               double tail_fraction);

struct DeviationEstimate {
    double beta_minus = 0.0;
    double beta_plus = 0.0;
    std::pair<double, double> tail_window{0.0, 0.0};
    std::vector<std::pair<double, double>> per_r_ratios;
};

DeviationEstimate petrenko_deviation(std::span<const CharacteristicSample> samples,
                                     double tail_fraction);

struct AlphaRegularity {
    double alpha_hat = 0.0;   // median of T/logM over the tail
    double dispersion = 0.0;  // interquartile range
};

AlphaRegularity alpha_regularity(std::span<const CharacteristicSample> samples,
                                 double tail_fraction);

struct XiEstimate {
    double xi = 0.0;
    int theta_grid_size = 0;
    std::vector<char> classification;  // 1 = polynomially bounded direction
    std::vector<double> slopes;        // fitted slope of log+|f| vs log r
    double slope_threshold = 8.0;
};

/// Fraction of directions along which log+|f(r e^{i theta})| grows at most
/// like a fixed multiple of log r over the top decade of the grid.
XiEstimate xi_estimate(const EntireFunction& f, int theta_count,
                       const RadialGrid& grid, double slope_threshold = 8.0);

/// Angular length of the longest arc of {theta : |f(r e^{i theta})| > 1};
/// +infinity when the whole circle qualifies, 0 when no point does.
double theta_arc(const EntireFunction& f, double r, int theta_count);

}  // namespace nevanlab
