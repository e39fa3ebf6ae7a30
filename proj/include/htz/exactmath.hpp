#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htz {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator. Every constructor path in this project goes through rat() or
// parse_rational(), which canonicalize.
using Rational = mpq_class;

Rational rat(long numerator, long denominator = 1);

// Accepts "a", "-a", "a/b" with b != 0 (whitespace not allowed).
Rational parse_rational(std::string_view text);

// Canonical text form: "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

using RatVector = std::vector<Rational>;

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix from_rows(const std::vector<RatVector>& rows);
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c);
    const Rational& operator()(std::size_t r, std::size_t c) const;

    RatVector row(std::size_t r) const;
    RatMatrix transpose() const;

    // Vertical concatenation; column counts must agree.
    RatMatrix stacked(const RatMatrix& below) const;

    RatVector operator*(const RatVector& v) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

bool is_zero(const RatVector& v);

// Exact rank by pivoted Gaussian elimination over Q.
std::size_t rank(const RatMatrix& m);

// Basis of the right nullspace. Each vector is scaled so that its first
// nonzero entry is 1; the basis is empty iff the nullspace is {0}.
std::vector<RatVector> nullspace(const RatMatrix& m);

// A rational function of an integer variable, given by sampling.
// std::nullopt marks a pole at that integer.
using SampledFunction = std::function<std::optional<Rational>(long)>;

// Decides lhs(k) == rhs(k) as rational functions, given that the
// cross-multiplied numerator difference has degree <= degree_bound.
// Samples k = start, start+1, ... skipping poles of either side until
// degree_bound + 1 points are compared. Throws PoleAtSample if
// max_skips consecutive integers are all poles.
bool verify_rational_identity(const SampledFunction& lhs, const SampledFunction& rhs,
                              std::size_t degree_bound, long start = 0,
                              std::size_t max_skips = 1000);

}  // namespace htz
