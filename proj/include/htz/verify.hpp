#pragma once

#include "htz/exactmath.hpp"
#include "htz/symbols.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace htz {

struct CaseRow {
    std::string label;    // parameter tuple, e.g. "p=2 s=1 m=2"
    bool passed = true;
    bool skipped = false;  // hypothesis not met; not counted as a failure
    std::string outcome;  // what was observed
    std::string witness;  // for failures: the exact entry or equation that failed
};

struct GridReport {
    std::string suite;
    std::map<std::string, std::string> parameters;  // ranges / ansatz description
    std::vector<CaseRow> cases;
    double wall_ms = 0.0;

    std::size_t cases_run() const { return cases.size(); }
    std::size_t failure_count() const;
    bool passed() const { return failure_count() == 0; }

    void add(CaseRow row) { cases.push_back(std::move(row)); }
};

// Timing is omitted unless requested so that reports are reproducible.
nlohmann::json to_json(const GridReport& report, bool include_timing = false);
std::string to_csv(const GridReport& report);

// compose(T_{e^{ip theta} phi}, T_psi) is Toeplitz exactly for constant psi,
// in which case the recovered symbol is c * phi.
GridReport verify_product_theorem(int p, const RadialSymbol& phi,
                                  const std::vector<RadialSymbol>& psis, int K);

// [T_{e^{ip theta} phi}, T_psi] vanishes exactly for constant psi.
GridReport verify_radial_commutation(int p, const RadialSymbol& phi,
                                     const std::vector<RadialSymbol>& psis, int K);

// [T_{e^{ip theta} phi}, T_{e^{ip theta} psi}] vanishes iff phi, psi are proportional.
GridReport verify_same_degree(int p, const RadialSymbol& phi, const RadialSymbol& psi, int K);

bool proportional(const RadialSymbol& a, const RadialSymbol& b);

// phi = r^alpha of degree p against degree s >= p: the scalar condition
// (k-p+1)/(2k-p+2+alpha) = (s-k+1)/(2s-2k+p+2+alpha) on p <= k <= s, and the
// commutant over the ansatz {alpha + 2j : 0 <= j <= extra}.
GridReport verify_monomial_small_degree(int p, int s, const Rational& alpha, int K,
                                        int extra = 4);

// Smallest k in [p, s] where the scalar condition above fails, if any.
std::optional<int> monomial_condition_failure(int p, int s, const Rational& alpha);

// Commutant of T_{e^{ip theta} phi} within span{r^e : e in exponents}, degree s,
// has dimension <= 1.
GridReport verify_uniqueness(int p, int s, const RadialSymbol& phi,
                             const std::vector<Rational>& exponents, int K);

// Unified action formula against the four case-split formulas.
GridReport verify_case_formulas(int q_max, int p_max, int exponent_max);

GridReport verify_identity_law(int K_max);

// solve_commutant against classify_th7 for 2 <= p <= p_max, 1 <= s < p, 0 <= m <= m_max.
GridReport verify_dichotomy(int p_max, int m_max, int K);

// Printed block identities, rank(A;B) = p and rank(A;B;C) = rank(A;B).
GridReport verify_block_identities(int p_max, int m_max);

// Family dimensions on the dichotomy grid, and their stability when the
// ansatz gains m+3 further exponents s+2jp.
GridReport verify_uniqueness_grid(int p_max, int m_max, int K);

struct GridConfig {
    std::string suite;
    int p_max = 6;
    int m_max = 6;
    int q_max = 64;
    int K = 40;
    std::optional<Rational> alpha;  // th6 only; default sweeps {1, 2, 1/2, 3}
};

std::vector<std::string> suite_names();

// Throws UnknownSuite.
GridReport run_grid(const GridConfig& config);

}  // namespace htz
