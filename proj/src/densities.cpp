#include "nevanlab/densities.hpp"

#include <algorithm>
#include <cmath>

namespace nevanlab {

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals) {
    for (auto& [a, b] : intervals) {
        if (!(a < b)) throw ConfigError("IntervalSet: need a < b in every interval");
        a = std::max(a, 1.0);
        if (!(a < b)) continue;  // fell entirely below 1
        intervals_.push_back({a, b});
    }
    std::sort(intervals_.begin(), intervals_.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : intervals_) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    intervals_ = std::move(merged);
}

IntervalSet IntervalSet::parse(const std::string& spec) {
    std::vector<std::pair<double, double>> ivs;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        const std::string tok =
            spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const std::size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw ConfigError("IntervalSet: expected a:b in '" + tok + "'");
        char* end = nullptr;
        const double a = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + colon)
            throw ConfigError("IntervalSet: bad number in '" + tok + "'");
        const char* bs = tok.c_str() + colon + 1;
        const double b = std::strtod(bs, &end);
        if (end == bs || *end != '\0')
            throw ConfigError("IntervalSet: bad number in '" + tok + "'");
        ivs.emplace_back(a, b);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return IntervalSet(std::move(ivs));
}

double IntervalSet::measure_upto(double r) const {
    double m = 0.0;
    for (const auto& [a, b] : intervals_) {
        if (a >= r) break;
        m += std::min(b, r) - a;
    }
    return m;
}

double IntervalSet::log_measure_upto(double r) const {
    double m = 0.0;
    for (const auto& [a, b] : intervals_) {
        if (a >= r) break;
        m += std::log(std::min(b, r) / a);
    }
    return m;
}

DensityPoint density_profile(const IntervalSet& set, double r) {
    if (!(r > 1.0)) throw DomainError("density_profile: r must exceed 1");
    return {set.measure_upto(r) / (r - 1.0), set.log_measure_upto(r) / std::log(r)};
}

DensityLimits density_limits(const IntervalSet& set, const RadialGrid& grid) {
    if (grid.decades() < 2.0 - 1e-9)
        throw PreconditionError("density_limits: grid must span at least 2 decades");
    if (!set.empty() && grid.back() <= set.intervals().back().first)
        throw PreconditionError("density_limits: grid must reach past the last interval start");
    // Tail half of the grid plus interval endpoints falling inside it.
    std::vector<double> radii(grid.radii.begin() + grid.size() / 2, grid.radii.end());
    const double tail_lo = radii.front();
    for (const auto& [a, b] : set.intervals()) {
        if (a > tail_lo && a < grid.back()) radii.push_back(a);
        if (b > tail_lo && b < grid.back()) radii.push_back(b);
    }
    std::sort(radii.begin(), radii.end());
    DensityLimits lim;
    lim.lower_dens = lim.lower_logdens = std::numeric_limits<double>::infinity();
    lim.upper_dens = lim.upper_logdens = -std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 1.0)) continue;
        const DensityPoint p = density_profile(set, r);
        lim.upper_dens = std::max(lim.upper_dens, p.dens);
        lim.lower_dens = std::min(lim.lower_dens, p.dens);
        lim.upper_logdens = std::max(lim.upper_logdens, p.logdens);
        lim.lower_logdens = std::min(lim.lower_logdens, p.logdens);
    }
    return lim;
}

}  // namespace nevanlab
