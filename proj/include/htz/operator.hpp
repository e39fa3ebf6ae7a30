#pragma once

#include "htz/exactmath.hpp"
#include "htz/symbols.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace htz {

// Harmonic Bergman basis element e_q: z^q for q >= 0, conj(z)^{-q} for q < 0.
struct BasisIndex {
    int q = 0;

    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

// Image of e_q under T_{e^{ip theta} phi}: the operator maps e_q to a multiple
// of e_{q+p}, with coefficient 2(|q+p|+1) * mellin(phi, |q| + |q+p| + 2).
std::pair<BasisIndex, Rational> apply(int p, const RadialSymbol& phi, BasisIndex q);

// Truncated operator on the window |q| <= K.
//
// Columns with |q_in| <= K - margin are exactly the columns of the untruncated
// operator; every decision in this library reads only those columns.
class OperatorMatrix {
public:
    using Key = std::pair<int, int>;  // (row, col)

    OperatorMatrix(int K, int margin);

    int K() const noexcept { return K_; }
    int margin() const noexcept { return margin_; }
    int exact_radius() const noexcept { return K_ - margin_; }

    const std::map<Key, Rational>& entries() const noexcept { return entries_; }
    Rational at(int row, int col) const;

    // Zero values are not stored.
    void set(int row, int col, const Rational& value);

    friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

private:
    int K_;
    int margin_;
    std::map<Key, Rational> entries_;
};

// Throws TruncationTooSmall if K < |degree|.
OperatorMatrix build_matrix(const QuasiSymbol& sym, int K);

// Product A*B; margins add. Throws MismatchedTruncation on different K.
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

// A*B - B*A.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Entrywise A - B; margin is the larger of the two.
OperatorMatrix subtract(const OperatorMatrix& a, const OperatorMatrix& b);

// Throws EmptyExactRegion if margin >= K.
bool is_zero_on_exact_region(const OperatorMatrix& m);

// First nonzero exact-region entry, if any.
std::optional<std::pair<OperatorMatrix::Key, Rational>> first_exact_nonzero(
    const OperatorMatrix& m);

struct MatrixEntry {
    int row = 0;
    int col = 0;
    Rational value;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

struct ToeplitzTest {
    bool toeplitz = false;

    // Toeplitz verdict
    bool zero_operator = false;  // all exact entries vanish; degree is meaningless
    int degree = 0;
    std::vector<MellinSample> samples;  // sorted by argument
    std::optional<RadialSymbol> matched;

    // NotToeplitz verdict: two entries that cannot come from one symbol
    std::optional<std::pair<MatrixEntry, MatrixEntry>> witness;
    std::string reason;
};

// Decides whether the exact region of m is the matrix of some T_{e^{id theta} h}.
//
// All nonzero entries must lie on one band row - col = d, and each entry
// (q+d, q) determines mellin(h, |q| + |q+d| + 2) = entry / (2(|q+d|+1)).
// Columns that determine the same Mellin argument must agree. The recovered
// samples are matched, up to a scalar, against the supplied dictionary.
// Throws EmptyExactRegion.
ToeplitzTest is_toeplitz(const OperatorMatrix& m,
                         const std::vector<RadialSymbol>& dictionary = {});

nlohmann::json to_json(const OperatorMatrix& m);
nlohmann::json to_json(const ToeplitzTest& t);

}  // namespace htz
