#pragma once

#include "htz/exactmath.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace htz {

// One term c * r^alpha of a radial symbol.
struct Monomial {
    Rational coeff;
    Rational exponent;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Radial function f(r) = sum_j c_j r^{alpha_j} on [0, 1].
//
// Canonical form: exponents are pairwise distinct and nonnegative, terms are
// sorted by increasing exponent and carry nonzero coefficients. The empty
// term list is the zero symbol. Structural equality is therefore functional
// equality.
class RadialSymbol {
public:
    RadialSymbol() = default;

    // Combines like terms, drops zeros and sorts. Throws NegativeExponent.
    explicit RadialSymbol(std::vector<Monomial> terms);

    static RadialSymbol constant(const Rational& c);
    static RadialSymbol monomial(const Rational& coeff, const Rational& exponent);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Rational min_exponent() const;

    RadialSymbol operator+(const RadialSymbol& other) const;
    RadialSymbol operator-(const RadialSymbol& other) const;
    RadialSymbol operator*(const Rational& scale) const;

    // r^beta * f
    RadialSymbol shifted(const Rational& beta) const;

    double evaluate(double r) const;

    friend bool operator==(const RadialSymbol&, const RadialSymbol&) = default;

private:
    std::vector<Monomial> terms_;
};

// e^{i p theta} * phi(r)
struct QuasiSymbol {
    int degree = 0;
    RadialSymbol radial;

    friend bool operator==(const QuasiSymbol&, const QuasiSymbol&) = default;
};

struct MellinSample {
    Rational argument;
    Rational value;

    friend bool operator==(const MellinSample&, const MellinSample&) = default;
};

// Grammar (whitespace-insensitive):
//   symbol   := ['+'|'-'] term (('+'|'-') term)*
//   term     := coeff | coeff ['*'] rpart | rpart
//   coeff    := INT ['/' INT]
//   rpart    := 'r' ['^' exponent]
//   exponent := INT ['/' INT] | '{' INT ['/' INT] '}'
RadialSymbol parse_radial(std::string_view text);

// Inverse of parse_radial on canonical symbols, e.g. "-1/2*r^{1/2} + 2*r^3".
std::string render(const RadialSymbol& f);

// Exact Mellin transform  int_0^1 f(r) r^{z-1} dr = sum_j c_j / (z + alpha_j).
// Throws DivergentMellin unless z > -alpha_min.
Rational mellin_eval(const RadialSymbol& f, const Rational& z);

// Adaptive Gauss-Kronrod quadrature of the same integral, used as an
// independent numerical oracle. Throws DivergentMellin or NonConvergence.
double mellin_quadrature(const RadialSymbol& f, double z, double tol);

// [{"coeff": "a/b", "exp": "c/d"}, ...]
nlohmann::json to_json(const RadialSymbol& f);
RadialSymbol radial_from_json(const nlohmann::json& j);

}  // namespace htz
