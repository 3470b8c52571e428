#pragma once

#include <map>
#include <optional>
#include <string>

#include "nevanlab/common.hpp"

namespace nevanlab {

/// B(mu): sharp ceiling for the lower deviation of a function of lower
/// order mu. Continuous across the branch point mu = 1/2.
double petrenko_bound(double mu);

/// lambda(E) >= rho when rho is not an integer; for rho < 1/2 the bound
/// is known to be infinite, reported via the note flag.
struct BankLaineResult {
    double value;
    bool applicable;
    bool infinite_for_small_order;
};
BankLaineResult bank_laine_bound(double rho);

/// lambda(E) >= rho/(2 rho - 1) on [1/2, 1); infinite at rho = 1/2.
double rossi_bound(double rho);

/// lambda(E) >= N mu/(2 mu - N) for N/2 <= mu < N.
double be_bound(int N, double mu);

/// lambda(E) >= (1-beta)/(2(1-alpha)); infinite when alpha = 1.
double thm12_bound(double alpha, double beta);

/// Specialization with alpha = 1/beta_plus and beta = 0; beta_plus may be
/// +infinity, in which case the bound degenerates to 1/2.
double cor23_bound(double beta_plus);

double thm33_threshold(double xi);   // 1/(1-xi)
double thm35_threshold(double xi);   // 1/(2(1-xi))
double cond18_threshold(double xi);  // 1/(pi(1-xi))

enum class TheoremId {
    BankLaine66,
    Rossi77,
    BergweilerEremenko88,
    Thm12,
    Cor23,
    Thm33,
    Thm35,
    Cond18,
};

std::string theorem_name(TheoremId id);

struct TheoremVerdict {
    TheoremId id;
    std::map<std::string, double> inputs;
    double predicted_bound = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> measured;
    bool hypothesis_satisfied = false;
    std::optional<bool> conclusion_consistent;  // set only when measurable
};

/// Evaluates the hypothesis predicate and, when a measurement is supplied
/// and the hypothesis holds, whether the measurement is consistent with the
/// predicted conclusion. Lambda bounds use the tolerance measured >=
/// predicted - 0.15; infinite-order conclusions use the unbounded-trending
/// proxy (inputs "slope_prev" and "coeff_order_max", measured = top slope).
TheoremVerdict assemble_verdict(TheoremId id,
                                const std::map<std::string, double>& inputs,
                                std::optional<double> measured);

inline constexpr double kLambdaTolerance = 0.15;

}  // namespace nevanlab
