#include "nevanlab/functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace nevanlab {

namespace {

LogComplex eval_exp(double r, double theta) {
    return {r * std::cos(theta), wrap_angle(r * std::sin(theta))};
}

LogComplex eval_expexp(double r, double theta) {
    // exp(e^z): log f = e^z, so log_mod = e^{r cos t} cos(r sin t).
    const double a = r * std::cos(theta);
    if (a > 700.0)
        throw UnsupportedRangeError("expexp: e^{r cos theta} exceeds double range");
    const double m = std::exp(a);
    return {m * std::cos(r * std::sin(theta)), wrap_angle(m * std::sin(r * std::sin(theta)))};
}

LogComplex eval_polynomial(const std::vector<double>& coeffs, double r, double theta) {
    if (coeffs.empty()) return LogComplex::zero();
    const LogComplex z = r == 0.0 ? LogComplex::zero()
                                  : LogComplex::from_polar(std::log(r), theta);
    LogComplex acc = LogComplex::from_real(coeffs.front());
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        acc = lc_add(lc_mul(acc, z), LogComplex::from_real(coeffs[i]));
    return acc;
}

LogComplex exp_term(double coeff, double freq, double r, double theta) {
    if (coeff == 0.0) return LogComplex::zero();
    const double lm = freq * (r * std::cos(theta)) + std::log(std::abs(coeff));
    const double ph = freq * (r * std::sin(theta)) + (coeff < 0.0 ? kPi : 0.0);
    return {lm, wrap_angle(ph)};
}

LogComplex eval_exp_polynomial(const std::vector<std::pair<double, double>>& terms,
                               double r, double theta) {
    LogComplex acc = LogComplex::zero();
    for (const auto& [c, f] : terms) acc = lc_add(acc, exp_term(c, f, r, theta));
    return acc;
}

LogComplex eval_gap_series(double r, double theta) {
    if (r == 0.0) return LogComplex::zero();  // every exponent is >= 1
    const double logr = std::log(r);
    LogComplex acc = LogComplex::zero();
    double max_seen = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 48; ++n) {
        const double lam = std::ldexp(1.0, n);  // 2^n
        const double lm = lam * logr - std::lgamma(lam + 1.0);
        if (lm < max_seen - 30.0) break;  // tail below 1e-13 of the peak term
        max_seen = std::max(max_seen, lm);
        acc = lc_add(acc, LogComplex{lm, wrap_angle(lam * theta)});
    }
    return acc;
}

}  // namespace

LogComplex EntireFunction::evaluate(double r, double theta) const {
    if (!(r >= 0.0)) throw PreconditionError("evaluate: r must be nonnegative");
    const double t = theta + rotation_;
    return std::visit(
        [&](const auto& k) -> LogComplex {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Polynomial>)
                return eval_polynomial(k.coeffs, r, t);
            else if constexpr (std::is_same_v<T, ExpPolynomial>)
                return eval_exp_polynomial(k.terms, r, t);
            else if constexpr (std::is_same_v<T, Exp>)
                return eval_exp(r, t);
            else if constexpr (std::is_same_v<T, ExpExp>)
                return eval_expexp(r, t);
            else if constexpr (std::is_same_v<T, Airy>) {
                const double w = wrap_angle(t);
                return r <= 7.0 ? detail::airy_maclaurin(std::polar(r, w))
                                : detail::airy_asymptotic(r, w);
            } else if constexpr (std::is_same_v<T, MittagLeffler>) {
                return r <= detail::ml_series_radius(k.rho)
                           ? detail::ml_series(k.rho, r, wrap_angle(t))
                           : detail::ml_asymptotic(k.rho, r, wrap_angle(t));
            } else if constexpr (std::is_same_v<T, GapSeries>)
                return eval_gap_series(r, t);
            else {
                static_assert(std::is_same_v<T, Shifted>);
                return lc_add(k.base->evaluate(r, t), LogComplex::from_real(k.shift));
            }
        },
        kind_);
}

EntireFunction EntireFunction::rotated(double phi) const {
    EntireFunction f = *this;
    f.rotation_ += phi;
    return f;
}

EntireFunction make_exp() {
    EntireFunction f(EntireFunction::Exp{}, "exp");
    f.metadata().order = TaggedValue{1.0, Provenance::Derived};
    f.metadata().lower_order = TaggedValue{1.0, Provenance::Derived};
    f.metadata().alpha = TaggedValue{1.0 / kPi, Provenance::Paper};
    f.metadata().xi = TaggedValue{0.5, Provenance::Derived};
    return f;
}

EntireFunction make_expexp() {
    return EntireFunction(EntireFunction::ExpExp{}, "expexp");
}

EntireFunction make_airy() {
    EntireFunction f(EntireFunction::Airy{}, "airy");
    f.metadata().lower_order = TaggedValue{1.5, Provenance::Paper};
    f.metadata().order = TaggedValue{1.5, Provenance::Derived};
    return f;
}

EntireFunction make_polynomial(std::vector<double> coeffs) {
    std::string id = "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        id += (i ? "," : "") + std::to_string(coeffs[i]);
    EntireFunction f(EntireFunction::Polynomial{std::move(coeffs)}, std::move(id));
    f.metadata().order = TaggedValue{0.0, Provenance::Derived};
    f.metadata().xi = TaggedValue{1.0, Provenance::Paper};
    return f;
}

EntireFunction make_constant(double c) { return make_polynomial({c}); }

EntireFunction make_exp_polynomial(std::vector<std::pair<double, double>> terms) {
    EntireFunction f(EntireFunction::ExpPolynomial{std::move(terms)}, "exppoly");
    f.metadata().order = TaggedValue{1.0, Provenance::Derived};
    return f;
}

EntireFunction make_mittag_leffler(double rho) {
    if (!(rho > 0.0)) throw ConfigError("mittag-leffler: order must be positive");
    EntireFunction f(EntireFunction::MittagLeffler{rho}, "ml:" + std::to_string(rho));
    f.metadata().order = TaggedValue{rho, Provenance::Paper};
    f.metadata().lower_order = TaggedValue{rho, Provenance::Derived};
    f.metadata().alpha = TaggedValue{1.0 / (kPi * rho), Provenance::Paper};
    if (rho > 0.5)
        f.metadata().xi = TaggedValue{1.0 - 1.0 / (2.0 * rho), Provenance::Paper};
    return f;
}

EntireFunction make_shifted(EntireFunction base, double shift) {
    std::string id = base.id() + "+" + std::to_string(shift);
    return EntireFunction(
        EntireFunction::Shifted{std::make_shared<EntireFunction>(std::move(base)), shift},
        std::move(id));
}

EntireFunction bank_laine_coefficient() {
    EntireFunction f = make_shifted(make_exp(), -1.0 / 16.0);
    EntireFunction g(f.kind(), "banklaine");
    g.metadata().order = TaggedValue{1.0, Provenance::Paper};
    g.metadata().lower_order = TaggedValue{1.0, Provenance::Derived};
    g.metadata().alpha = TaggedValue{1.0 / kPi, Provenance::Paper};
    return g;
}

EntireFunction gap_series_example() {
    EntireFunction::GapSeries gs;
    for (int n = 0; n <= 16; ++n) gs.exponent_prefix.push_back(1LL << n);
    gs.fabry = true;   // 2^n / n -> infinity
    gs.fejer = true;   // sum 2^{-n} bounded by 2
    EntireFunction f(std::move(gs), "gap:fabry");
    f.metadata().order = TaggedValue{1.0, Provenance::Derived};
    return f;
}

namespace {

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty()) throw ConfigError(what + ": empty value in '" + s + "'");
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError(what + ": bad number '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError(what + ": no values");
    return out;
}

}  // namespace

EntireFunction parse_function(const std::string& id) {
    const std::size_t colon = id.find(':');
    const std::string kind = id.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : id.substr(colon + 1);
    if (kind == "exp") return make_exp();
    if (kind == "expexp") return make_expexp();
    if (kind == "airy") return make_airy();
    if (kind == "banklaine") return bank_laine_coefficient();
    if (kind == "gap") {
        if (args != "fabry") throw ConfigError("unknown gap series '" + id + "'");
        return gap_series_example();
    }
    if (kind == "ml") {
        auto v = parse_doubles(args, "ml");
        if (v.size() != 1) throw ConfigError("ml: expected one order parameter");
        return make_mittag_leffler(v[0]);
    }
    if (kind == "poly") return make_polynomial(parse_doubles(args, "poly"));
    if (kind == "const") {
        auto v = parse_doubles(args, "const");
        if (v.size() != 1) throw ConfigError("const: expected one value");
        return make_constant(v[0]);
    }
    if (kind == "expshift") {
        auto v = parse_doubles(args, "expshift");
        if (v.size() != 1) throw ConfigError("expshift: expected one shift value");
        return make_shifted(make_exp(), v[0]);
    }
    if (kind == "exppoly") {
        std::vector<std::pair<double, double>> terms;
        std::size_t pos = 0;
        while (pos <= args.size()) {
            std::size_t comma = args.find(',', pos);
            std::string tok =
                args.substr(pos, comma == std::string::npos ? comma : comma - pos);
            std::size_t at = tok.find('@');
            if (at == std::string::npos)
                throw ConfigError("exppoly: term must look like coeff@frequency");
            auto c = parse_doubles(tok.substr(0, at), "exppoly coeff");
            auto f = parse_doubles(tok.substr(at + 1), "exppoly frequency");
            if (c.size() != 1 || f.size() != 1)
                throw ConfigError("exppoly: term must look like coeff@frequency");
            terms.emplace_back(c[0], f[0]);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (terms.empty()) throw ConfigError("exppoly: no terms");
        return make_exp_polynomial(std::move(terms));
    }
    throw ConfigError("unknown function id '" + id + "'");
}

}  // namespace nevanlab
