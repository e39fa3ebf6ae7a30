#pragma once

#include "htz/exactmath.hpp"
#include "htz/operator.hpp"
#include "htz/symbols.hpp"

#include <json.hpp>

#include <vector>

namespace htz {

// Commutation problem for T_{e^{ip theta} r^n}, n = (2m+1)p, against
// T_{e^{is theta} psi} with psi = sum_j c_j r^{s+2jp}, 0 <= j <= m.
//
// Rows of A, B, C are the conditions coming from conj(z)^k for 0 <= k < s,
// s <= k < p and p <= k < p+s respectively; columns are indexed by j.
struct CommutantSystem {
    int p = 0;
    int s = 0;
    int m = 0;
    int n = 0;
    RatMatrix A;  // s x (m+1)
    RatMatrix B;  // (p-s) x (m+1)
    RatMatrix C;  // s x (m+1)

    RatMatrix AB() const { return A.stacked(B); }
    RatMatrix ABC() const { return A.stacked(B).stacked(C); }
};

// Throws InvalidDegrees unless p > s >= 1 and m >= 0.
CommutantSystem build_blocks(int p, int s, int m);

// a_{s-l,j} == c_{p+l,j} for 1 <= l < s, and c_{p,j} == -b_{s,j} / (p+n+2).
bool check_block_identities(const CommutantSystem& sys);

// F(z) = prod_{i=1..m} (z/2p + i) / prod_{i=0..m} (z/2p + s/p + i)
//      = sum_j weights_j / (z - poles_j),   poles_j = -(2s + 2jp).
struct PartialFractionRay {
    std::vector<Rational> poles;
    std::vector<Rational> weights;
};

// Finite-product form of F, evaluated exactly.
Rational gamma_ratio(int p, int s, int m, const Rational& z);

// Residues of F at its simple poles. The result is checked against the
// product form at m+2 sample points before it is returned.
PartialFractionRay partial_fraction_ray(int p, int s, int m);

// Rows of the commutation conditions [T_{e^{ip theta} phi}, T_{e^{is theta} psi}] e_q = 0
// for psi = sum_j c_j r^{exponents_j}. Columns follow the exponent list.
struct AnsatzSystem {
    int p = 0;
    int s = 0;
    RadialSymbol phi;
    std::vector<Rational> exponents;
    std::vector<int> indices;   // basis index q of each row
    std::size_t degree_bound = 0;  // polynomial degree of each tail family in q
    RatMatrix matrix;
};

// Coefficient of e_{q+p+s} in [T_{p,phi}, T_{s,psi}] e_q.
Rational commutator_coefficient(int p, const RadialSymbol& phi, int s, const RadialSymbol& psi,
                                int q);

// Boundary indices |q| <= |p|+|s| are enumerated; on each tail q > |p|+|s| and
// q < -(|p|+|s|) the condition is a rational function of q whose cross-
// multiplied numerator has degree <= degree_bound, so degree_bound + 1 samples
// per tail exhaust it. Throws InvalidDegrees (p or s zero), DuplicateExponents,
// NegativeExponent, InvalidArgument (empty list).
AnsatzSystem generate_ansatz_equations(int p, int s, const RadialSymbol& phi,
                                       const std::vector<Rational>& exponents);

// The th7 setting: phi = r^{(2m+1)p}.
AnsatzSystem generate_ansatz_equations(int p, int s, int m,
                                       const std::vector<Rational>& exponents);

RadialSymbol symbol_from_coefficients(const std::vector<Rational>& exponents,
                                      const RatVector& coefficients);

enum class Verdict { Trivial, Family };
enum class Prediction { Trivial, Exists };

struct CommutantResult {
    int p = 0;
    int s = 0;
    int m = 0;
    int n = 0;
    int K = 0;
    Verdict verdict = Verdict::Trivial;
    std::vector<RatVector> coefficients;  // certified nullspace basis
    std::vector<RadialSymbol> symbols;
    std::size_t rank_AB = 0;
    std::size_t rank_ABC = 0;
    std::size_t ansatz_rank = 0;
    std::size_t ansatz_unknowns = 0;
    std::size_t degree_bound = 0;
    std::size_t uncertified = 0;  // nullspace vectors rejected by the commutator check
    bool ray_in_nullspace = false;  // (S) annihilates the partial-fraction ray

    std::size_t dimension() const { return coefficients.size(); }
};

// Throws InvalidDegrees, TruncationTooSmall (K < 2(p+s)+4).
CommutantResult solve_commutant(int p, int s, int m, int K = 40);

// Same, over a caller-chosen exponent set.
CommutantResult solve_commutant(int p, int s, int m, int K, const std::vector<Rational>& exponents);

// Default exponent set {s + 2jp : 0 <= j <= count-1}.
std::vector<Rational> progression_exponents(int p, int s, int count);

// Verdict predicted by the inequality p >= m+1 alone.
Prediction classify_th7(int p, int s, int m);

std::string_view to_string(Verdict v);
std::string_view to_string(Prediction v);

nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const RatVector& v);
nlohmann::json to_json(const CommutantSystem& sys);
nlohmann::json to_json(const PartialFractionRay& ray);
nlohmann::json to_json(const CommutantResult& result);

}  // namespace htz
