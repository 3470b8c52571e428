#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nevanlab/logcplx.hpp"

namespace nevanlab {

/// Finite union of intervals inside [1, inf); construction sorts, clips
/// to [1, inf) and merges overlaps.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<std::pair<double, double>> intervals);

    /// Grammar: "a1:b1,a2:b2,...". Empty string means the empty set.
    static IntervalSet parse(const std::string& spec);

    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

    /// Lebesgue measure of the set intersected with [1, r].
    double measure_upto(double r) const;
    /// Integral of dt/t over the set intersected with [1, r].
    double log_measure_upto(double r) const;

private:
    std::vector<std::pair<double, double>> intervals_;
};

struct DensityPoint {
    double dens = 0.0;
    double logdens = 0.0;
};

/// Finite-r density quotients; exact closed-form interval sums.
DensityPoint density_profile(const IntervalSet& set, double r);

struct DensityLimits {
    double upper_dens = 0.0;
    double lower_dens = 0.0;
    double upper_logdens = 0.0;
    double lower_logdens = 0.0;
};

/// Max/min of the profile over the tail half of the grid, with interval
/// endpoints inserted so crest and trough radii are sampled exactly.
DensityLimits density_limits(const IntervalSet& set, const RadialGrid& grid);

}  // namespace nevanlab
