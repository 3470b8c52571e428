#include "nevanlab/bounds.hpp"

#include <cmath>

namespace nevanlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPiLocal = 3.141592653589793238462643383279502884;

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}
}  // namespace

double petrenko_bound(double mu) {
    require(mu >= 0.0, "petrenko_bound: mu must be nonnegative");
    if (mu == 0.0) return 1.0;
    if (mu <= 0.5) return kPiLocal * mu / std::sin(kPiLocal * mu);
    return kPiLocal * mu;
}

BankLaineResult bank_laine_bound(double rho) {
    require(rho > 0.0, "bank_laine_bound: rho must be positive");
    return {rho, !near_integer(rho), rho < 0.5};
}

double rossi_bound(double rho) {
    require(rho >= 0.5 && rho < 1.0, "rossi_bound: rho must lie in [1/2, 1)");
    if (std::abs(rho - 0.5) < 1e-12) return kInf;
    return rho / (2.0 * rho - 1.0);
}

double be_bound(int N, double mu) {
    require(N >= 1, "be_bound: N must be a positive integer");
    require(mu >= 0.5 * N && mu < N, "be_bound: need N/2 <= mu < N");
    const double denom = 2.0 * mu - N;
    if (denom == 0.0) return kInf;
    return N * mu / denom;
}

double thm12_bound(double alpha, double beta) {
    require(alpha > 0.0 && alpha <= 1.0, "thm12_bound: alpha must lie in (0, 1]");
    require(beta >= 0.0 && beta < 1.0, "thm12_bound: beta must lie in [0, 1)");
    if (alpha == 1.0) return kInf;
    return (1.0 - beta) / (2.0 * (1.0 - alpha));
}

double cor23_bound(double beta_plus) {
    if (std::isinf(beta_plus)) return 0.5;
    require(beta_plus >= 1.0, "cor23_bound: beta_plus must be >= 1");
    const double alpha = 1.0 / beta_plus;
    if (alpha == 1.0) return kInf;
    return thm12_bound(alpha, 0.0);
}

double thm33_threshold(double xi) {
    require(xi >= 0.0 && xi <= 1.0, "thm33_threshold: xi must lie in [0, 1]");
    if (xi == 1.0) return kInf;
    return 1.0 / (1.0 - xi);
}

double thm35_threshold(double xi) {
    require(xi >= 0.0 && xi <= 1.0, "thm35_threshold: xi must lie in [0, 1]");
    if (xi == 1.0) return kInf;
    return 1.0 / (2.0 * (1.0 - xi));
}

double cond18_threshold(double xi) {
    require(xi >= 0.0 && xi <= 1.0, "cond18_threshold: xi must lie in [0, 1]");
    if (xi == 1.0) return kInf;
    return 1.0 / (kPiLocal * (1.0 - xi));
}

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::BankLaine66: return "BankLaine66";
        case TheoremId::Rossi77: return "Rossi77";
        case TheoremId::BergweilerEremenko88: return "BergweilerEremenko88";
        case TheoremId::Thm12: return "Thm12";
        case TheoremId::Cor23: return "Cor23";
        case TheoremId::Thm33: return "Thm33";
        case TheoremId::Thm35: return "Thm35";
        case TheoremId::Cond18: return "Cond18";
    }
    return "unknown";
}

namespace {

double need(const std::map<std::string, double>& in, const std::string& key,
            std::string& missing) {
    auto it = in.find(key);
    if (it == in.end()) {
        missing += missing.empty() ? key : (", " + key);
        return std::numeric_limits<double>::quiet_NaN();
    }
    return it->second;
}

std::optional<double> maybe(const std::map<std::string, double>& in,
                            const std::string& key) {
    auto it = in.find(key);
    if (it == in.end()) return std::nullopt;
    return it->second;
}

// Condition list (1)-(3) shared by the regularity theorem and its corollary.
bool regularity_side_conditions(double alpha, double beta,
                                std::optional<double> rho, std::optional<double> mu,
                                std::string& missing) {
    if (alpha == 1.0) return true;  // the bound is infinite; condition (3) is vacuous
    if (!rho) {
        missing += missing.empty() ? "rho" : ", rho";
        return false;
    }
    if (!near_integer(*rho)) return true;
    if (mu && *mu < *rho - 1e-12) return true;
    return *rho < (1.0 - beta) / (2.0 * (1.0 - alpha)) - 1e-12;
}

// Infinite-order conclusions are testable only through the growth proxy:
// the top-decade slope must clear the previous decade by 0.3 and exceed
// every coefficient order.
std::optional<bool> proxy_consistency(const std::map<std::string, double>& in,
                                      std::optional<double> measured) {
    if (!measured) return std::nullopt;
    auto prev = maybe(in, "slope_prev");
    auto coeff = maybe(in, "coeff_order_max");
    if (!prev || !coeff) return std::nullopt;
    return *measured >= *prev + 0.3 && *measured > *coeff;
}

}  // namespace

TheoremVerdict assemble_verdict(TheoremId id,
                                const std::map<std::string, double>& inputs,
                                std::optional<double> measured) {
    TheoremVerdict v;
    v.id = id;
    v.inputs = inputs;
    v.measured = measured;
    std::string missing;

    auto lambda_consistency = [&](double predicted) -> std::optional<bool> {
        if (!measured) return std::nullopt;
        if (std::isinf(predicted)) return proxy_consistency(inputs, measured);
        return *measured >= predicted - kLambdaTolerance;
    };

    switch (id) {
        case TheoremId::BankLaine66: {
            const double rho = need(inputs, "rho", missing);
            if (!missing.empty()) break;
            const BankLaineResult b = bank_laine_bound(rho);
            v.hypothesis_satisfied = b.applicable;
            v.predicted_bound = b.infinite_for_small_order
                                    ? std::numeric_limits<double>::infinity()
                                    : b.value;
            break;
        }
        case TheoremId::Rossi77: {
            const double rho = need(inputs, "rho", missing);
            if (!missing.empty()) break;
            v.hypothesis_satisfied = rho >= 0.5 && rho < 1.0;
            if (v.hypothesis_satisfied) v.predicted_bound = rossi_bound(rho);
            break;
        }
        case TheoremId::BergweilerEremenko88: {
            const double N = need(inputs, "N", missing);
            const double mu = need(inputs, "mu", missing);
            if (!missing.empty()) break;
            v.hypothesis_satisfied =
                N >= 1.0 && near_integer(N) && mu >= 0.5 * N && mu < N;
            if (v.hypothesis_satisfied)
                v.predicted_bound = be_bound(static_cast<int>(std::lround(N)), mu);
            break;
        }
        case TheoremId::Thm12: {
            const double alpha = need(inputs, "alpha", missing);
            const double beta = need(inputs, "beta", missing);
            if (!missing.empty()) break;
            if (!(alpha > 0.0 && alpha <= 1.0 && beta >= 0.0 && beta < 1.0)) {
                v.hypothesis_satisfied = false;
                break;
            }
            v.hypothesis_satisfied = regularity_side_conditions(
                alpha, beta, maybe(inputs, "rho"), maybe(inputs, "mu"), missing);
            if (!missing.empty()) break;
            if (v.hypothesis_satisfied) v.predicted_bound = thm12_bound(alpha, beta);
            break;
        }
        case TheoremId::Cor23: {
            const double bp = need(inputs, "beta_plus", missing);
            if (!missing.empty()) break;
            if (!std::isinf(bp) && bp < 1.0)
                throw DomainError("Cor23: beta_plus below 1 contradicts the deviation floor");
            const double alpha = std::isinf(bp) ? 0.0 : 1.0 / bp;
            if (alpha == 0.0) {
                v.hypothesis_satisfied = true;
                v.predicted_bound = 0.5;
                break;
            }
            v.hypothesis_satisfied = regularity_side_conditions(
                alpha, 0.0, maybe(inputs, "rho"), maybe(inputs, "mu"), missing);
            if (!missing.empty()) break;
            if (v.hypothesis_satisfied) v.predicted_bound = cor23_bound(bp);
            break;
        }
        case TheoremId::Thm33: {
            const double xi = need(inputs, "xi_A", missing);
            const double bm = need(inputs, "beta_minus_B", missing);
            if (!missing.empty()) break;
            v.predicted_bound = thm33_threshold(xi);
            v.hypothesis_satisfied = xi > 0.0 && bm < v.predicted_bound;
            break;
        }
        case TheoremId::Thm35: {
            const double xi = need(inputs, "xi_A", missing);
            const double mu = need(inputs, "mu_B", missing);
            if (!missing.empty()) break;
            v.predicted_bound = thm35_threshold(xi);
            v.hypothesis_satisfied = xi > 0.0 && mu < v.predicted_bound;
            break;
        }
        case TheoremId::Cond18: {
            const double xi = need(inputs, "xi_A", missing);
            const double mu = need(inputs, "mu_B", missing);
            if (!missing.empty()) break;
            v.predicted_bound = cond18_threshold(xi);
            v.hypothesis_satisfied = xi > 0.0 && mu >= 0.5 && mu < v.predicted_bound;
            break;
        }
    }
    if (!missing.empty())
        throw ConfigError("assemble_verdict(" + theorem_name(id) +
                          "): missing inputs: " + missing);

    if (v.hypothesis_satisfied && measured) {
        switch (id) {
            case TheoremId::Thm33:
            case TheoremId::Thm35:
            case TheoremId::Cond18:
                v.conclusion_consistent = proxy_consistency(inputs, measured);
                break;
            default:
                v.conclusion_consistent = lambda_consistency(v.predicted_bound);
                break;
        }
    }
    return v;
}

}  // namespace nevanlab
