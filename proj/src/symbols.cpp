#include "htz/symbols.hpp"

#include "htz/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace htz {

RadialSymbol::RadialSymbol(std::vector<Monomial> terms) {
    std::map<Rational, Rational> by_exponent;
    for (auto& t : terms) {
        if (t.exponent < 0) {
            throw Error(ErrorKind::NegativeExponent,
                        "negative exponent " + to_string(t.exponent));
        }
        by_exponent[t.exponent] += t.coeff;
    }
    for (auto& [exp, coeff] : by_exponent) {
        if (coeff != 0) terms_.push_back({coeff, exp});
    }
}

RadialSymbol RadialSymbol::constant(const Rational& c) { return RadialSymbol({{c, 0}}); }

RadialSymbol RadialSymbol::monomial(const Rational& coeff, const Rational& exponent) {
    return RadialSymbol({{coeff, exponent}});
}

bool RadialSymbol::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent == 0);
}

Rational RadialSymbol::min_exponent() const {
    return terms_.empty() ? Rational(0) : terms_.front().exponent;
}

RadialSymbol RadialSymbol::operator+(const RadialSymbol& other) const {
    std::vector<Monomial> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return RadialSymbol(std::move(all));
}

RadialSymbol RadialSymbol::operator-(const RadialSymbol& other) const {
    return *this + other * Rational(-1);
}

RadialSymbol RadialSymbol::operator*(const Rational& scale) const {
    std::vector<Monomial> out = terms_;
    for (auto& t : out) t.coeff *= scale;
    return RadialSymbol(std::move(out));
}

RadialSymbol RadialSymbol::shifted(const Rational& beta) const {
    std::vector<Monomial> out = terms_;
    for (auto& t : out) t.exponent += beta;
    return RadialSymbol(std::move(out));
}

double RadialSymbol::evaluate(double r) const {
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.coeff.get_d() * std::pow(r, t.exponent.get_d());
    return acc;
}

namespace {

void require_convergent(const RadialSymbol& f, const Rational& z) {
    if (!f.is_zero() && z + f.min_exponent() <= 0) {
        throw Error(ErrorKind::DivergentMellin,
                    "Mellin integral diverges at z = " + to_string(z));
    }
}

}  // namespace

Rational mellin_eval(const RadialSymbol& f, const Rational& z) {
    require_convergent(f, z);
    Rational acc = 0;
    for (const auto& t : f.terms()) acc += t.coeff / (z + t.exponent);
    return acc;
}

double mellin_quadrature(const RadialSymbol& f, double z, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
    }
    if (!f.is_zero() && z + f.min_exponent().get_d() <= 0.0) {
        throw Error(ErrorKind::DivergentMellin,
                    "Mellin integral diverges at z = " + std::to_string(z));
    }
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    const auto integrand = [&](double r) { return f.evaluate(r) * std::pow(r, z - 1.0); };

    constexpr unsigned max_depth = 20;
    double error = 0.0;
    double l1 = 0.0;
    double value = Rule::integrate(integrand, 0.0, 1.0, max_depth, tol, &error, &l1);
    if (error > tol && l1 > 1.0) {
        // Boost's tolerance is relative to the L1 norm; tighten for an absolute target.
        value = Rule::integrate(integrand, 0.0, 1.0, max_depth, tol / l1, &error, &l1);
    }
    if (!(error <= tol) || !std::isfinite(value)) {
        throw Error(ErrorKind::NonConvergence,
                    "quadrature error estimate " + std::to_string(error) + " exceeds " +
                        std::to_string(tol));
    }
    return value;
}

nlohmann::json to_json(const RadialSymbol& f) {
    auto out = nlohmann::json::array();
    for (const auto& t : f.terms()) {
        out.push_back({{"coeff", to_string(t.coeff)}, {"exp", to_string(t.exponent)}});
    }
    return out;
}

RadialSymbol radial_from_json(const nlohmann::json& j) {
    std::vector<Monomial> terms;
    for (const auto& rec : j) {
        terms.push_back({parse_rational(rec.at("coeff").get<std::string>()),
                         parse_rational(rec.at("exp").get<std::string>())});
    }
    return RadialSymbol(std::move(terms));
}

}  // namespace htz
