#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nevanlab/logcplx.hpp"

namespace nevanlab {

enum class Provenance { Paper, Derived };

struct TaggedValue {
    double value;
    Provenance source;
};

struct FunctionMetadata {
    std::optional<TaggedValue> order;
    std::optional<TaggedValue> lower_order;
    std::optional<TaggedValue> alpha;
    std::optional<TaggedValue> xi;
};

/// Catalog entry: an entire function with an overflow-proof evaluator and
/// optional reference metadata for tests.
class EntireFunction {
public:
    struct Polynomial {
        std::vector<double> coeffs;  // descending powers
    };
    struct ExpPolynomial {
        std::vector<std::pair<double, double>> terms;  // (coeff, frequency)
    };
    struct Exp {};
    struct ExpExp {};
    struct Airy {};
    struct MittagLeffler {
        double rho;  // order; evaluator realizes E_{1/rho}
    };
    struct GapSeries {
        // Catalog instance: sum_n z^(2^n) / (2^n)!  with exponents 2^n.
        std::vector<long long> exponent_prefix;
        bool fabry = false;
        bool fejer = false;
    };
    struct Shifted {
        std::shared_ptr<const EntireFunction> base;
        double shift;
    };

    using Kind = std::variant<Polynomial, ExpPolynomial, Exp, ExpExp, Airy,
                              MittagLeffler, GapSeries, Shifted>;

    EntireFunction(Kind kind, std::string id)
        : kind_(std::move(kind)), id_(std::move(id)) {}

    /// f(r e^{i theta}) in log-polar form.
    LogComplex evaluate(double r, double theta) const;

    /// Same function precomposed with z -> z e^{i phi}.
    EntireFunction rotated(double phi) const;

    const Kind& kind() const { return kind_; }
    const std::string& id() const { return id_; }
    const FunctionMetadata& metadata() const { return metadata_; }
    FunctionMetadata& metadata() { return metadata_; }

private:
    Kind kind_;
    std::string id_;
    double rotation_ = 0.0;
    FunctionMetadata metadata_;
};

EntireFunction make_exp();
EntireFunction make_expexp();
EntireFunction make_airy();
EntireFunction make_polynomial(std::vector<double> coeffs);
EntireFunction make_constant(double c);
EntireFunction make_exp_polynomial(std::vector<std::pair<double, double>> terms);
EntireFunction make_mittag_leffler(double rho);
EntireFunction make_shifted(EntireFunction base, double shift);

/// A(z) = e^z - 1/16, the coefficient of the classical oscillation example.
EntireFunction bank_laine_coefficient();

/// g(z) = sum_n z^(2^n)/(2^n)! — both Fabry and Fejer gap flags hold.
EntireFunction gap_series_example();

/// Parses catalog ids: "exp", "expexp", "airy", "ml:1.5", "banklaine",
/// "gap:fabry", "poly:1,0,0", "exppoly:1@1,1@-1", "expshift:-1", "const:2".
EntireFunction parse_function(const std::string& id);

namespace detail {
// Both Airy regimes exposed for the overlap agreement check.
LogComplex airy_maclaurin(std::complex<double> z);
LogComplex airy_asymptotic(double r, double theta);
// Mittag-Leffler branches, exposed for cross-branch agreement tests.
LogComplex ml_series(double rho, double r, double theta);
LogComplex ml_asymptotic(double rho, double r, double theta);
double ml_series_radius(double rho);
}  // namespace detail

}  // namespace nevanlab
