#include "htz/verify.hpp"

#include "htz/commutant.hpp"
#include "htz/error.hpp"
#include "htz/operator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

namespace htz {

std::size_t GridReport::failure_count() const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [](const CaseRow& c) { return !c.passed; }));
}

nlohmann::json to_json(const GridReport& report, bool include_timing) {
    auto cases = nlohmann::json::array();
    auto failures = nlohmann::json::array();
    for (const auto& c : report.cases) {
        cases.push_back({{"case", c.label},
                         {"passed", c.passed},
                         {"skipped", c.skipped},
                         {"outcome", c.outcome}});
        if (!c.passed) failures.push_back({{"case", c.label}, {"witness", c.witness}});
    }
    nlohmann::json out = {{"suite", report.suite},
                          {"parameters", report.parameters},
                          {"cases_run", report.cases_run()},
                          {"passed", report.passed()},
                          {"failures", failures},
                          {"cases", cases}};
    if (include_timing) out["wall_ms"] = report.wall_ms;
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const GridReport& report) {
    std::ostringstream os;
    os << "suite,case,passed,skipped,outcome,witness\n";
    for (const auto& c : report.cases) {
        os << csv_field(report.suite) << ',' << csv_field(c.label) << ','
           << (c.passed ? "true" : "false") << ',' << (c.skipped ? "true" : "false") << ','
           << csv_field(c.outcome) << ',' << csv_field(c.witness) << '\n';
    }
    return os.str();
}

namespace {

class Timer {
public:
    explicit Timer(GridReport& report)
        : report_(report), start_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        report_.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
    }

private:
    GridReport& report_;
    std::chrono::steady_clock::time_point start_;
};

std::string entry_text(const OperatorMatrix::Key& key, const Rational& v) {
    return "entry(" + std::to_string(key.first) + "," + std::to_string(key.second) +
           ") = " + to_string(v);
}

std::string describe(const ToeplitzTest& t) {
    if (t.toeplitz) {
        if (t.zero_operator) return "Toeplitz (zero operator)";
        std::string s = "Toeplitz degree " + std::to_string(t.degree);
        if (t.matched) s += ", h = " + render(*t.matched);
        return s;
    }
    return "NotToeplitz: " + t.reason;
}

std::string witness_text(const ToeplitzTest& t) {
    if (!t.witness) return t.reason;
    const auto& [a, b] = *t.witness;
    return "entry(" + std::to_string(a.row) + "," + std::to_string(a.col) + ") = " +
           to_string(a.value) + " vs entry(" + std::to_string(b.row) + "," +
           std::to_string(b.col) + ") = " + to_string(b.value);
}

// Hypothesis of the product theorem on the sampled range k = 0..K.
std::optional<int> mellin_zero_on_progression(const RadialSymbol& phi, int p, int K) {
    for (int k = 0; k <= K; ++k) {
        if (mellin_eval(phi, Rational(2 * k + std::abs(p) + 2)) == 0) return k;
    }
    return std::nullopt;
}

}  // namespace

GridReport verify_product_theorem(int p, const RadialSymbol& phi,
                                  const std::vector<RadialSymbol>& psis, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "product";
    report.parameters = {{"p", std::to_string(p)},
                         {"phi", render(phi)},
                         {"K", std::to_string(K)},
                         {"hypothesis_range", "k = 0.." + std::to_string(K)}};
    if (p == 0) throw Error(ErrorKind::InvalidDegrees, "product theorem needs p != 0");

    const auto t_phi = build_matrix({p, phi}, K);
    for (const auto& psi : psis) {
        CaseRow row;
        row.label = "p=" + std::to_string(p) + " phi=" + render(phi) + " psi=" + render(psi);
        if (auto k = mellin_zero_on_progression(phi, p, K)) {
            row.skipped = true;
            row.outcome = "HypothesisViolated: mellin(phi) vanishes at k = " + std::to_string(*k);
            report.add(std::move(row));
            continue;
        }
        const auto product = compose(t_phi, build_matrix({0, psi}, K));
        const ToeplitzTest test = is_toeplitz(product, {phi});
        row.outcome = describe(test);
        if (psi.is_constant()) {
            const Rational c = psi.is_zero() ? Rational(0) : psi.terms().front().coeff;
            const RadialSymbol expected = phi * c;
            const bool ok = test.toeplitz &&
                            (expected.is_zero() ? test.zero_operator
                                                : (test.degree == p && test.matched &&
                                                   *test.matched == expected));
            row.passed = ok;
            if (!ok) row.witness = "expected Toeplitz with h = " + render(expected) + ", got " +
                                   describe(test);
        } else {
            row.passed = !test.toeplitz;
            if (!row.passed) row.witness = "non-constant psi but product is " + describe(test);
            else row.witness = witness_text(test);
        }
        report.add(std::move(row));
    }
    return report;
}

GridReport verify_radial_commutation(int p, const RadialSymbol& phi,
                                     const std::vector<RadialSymbol>& psis, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "radial-commutation";
    report.parameters = {{"p", std::to_string(p)}, {"phi", render(phi)}, {"K", std::to_string(K)}};
    if (p == 0) throw Error(ErrorKind::InvalidDegrees, "radial commutation needs p != 0");

    const auto t_phi = build_matrix({p, phi}, K);
    for (const auto& psi : psis) {
        CaseRow row;
        row.label = "p=" + std::to_string(p) + " phi=" + render(phi) + " psi=" + render(psi);
        if (phi.is_constant()) {
            row.skipped = true;
            row.outcome = "HypothesisViolated: phi is constant";
            report.add(std::move(row));
            continue;
        }
        const auto nonzero = first_exact_nonzero(commutator(t_phi, build_matrix({0, psi}, K)));
        row.outcome = nonzero ? "nonzero commutator" : "zero commutator";
        if (nonzero) row.witness = entry_text(nonzero->first, nonzero->second);
        row.passed = psi.is_constant() == !nonzero;
        if (!row.passed && !nonzero) row.witness = "commutator vanishes for non-constant psi";
        report.add(std::move(row));
    }
    return report;
}

bool proportional(const RadialSymbol& a, const RadialSymbol& b) {
    if (a.is_zero() || b.is_zero()) return true;
    if (a.terms().size() != b.terms().size()) return false;
    const Rational ratio = a.terms().front().coeff / b.terms().front().coeff;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        if (a.terms()[i].exponent != b.terms()[i].exponent) return false;
        if (a.terms()[i].coeff != ratio * b.terms()[i].coeff) return false;
    }
    return true;
}

GridReport verify_same_degree(int p, const RadialSymbol& phi, const RadialSymbol& psi, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "same-degree";
    report.parameters = {{"p", std::to_string(p)}, {"K", std::to_string(K)}};

    CaseRow row;
    row.label = "p=" + std::to_string(p) + " phi=" + render(phi) + " psi=" + render(psi);
    const bool prop = proportional(phi, psi);
    const auto nonzero =
        first_exact_nonzero(commutator(build_matrix({p, phi}, K), build_matrix({p, psi}, K)));
    row.outcome = std::string(nonzero ? "nonzero commutator" : "zero commutator") +
                  (prop ? "; proportional" : "; not proportional");
    if (nonzero) row.witness = entry_text(nonzero->first, nonzero->second);
    row.passed = prop == !nonzero;
    if (!row.passed && !nonzero) row.witness = "commutator vanishes for non-proportional symbols";
    report.add(std::move(row));
    return report;
}

std::optional<int> monomial_condition_failure(int p, int s, const Rational& alpha) {
    for (int k = p; k <= s; ++k) {
        const Rational lhs = Rational(k - p + 1) / (2 * k - p + 2 + alpha);
        const Rational rhs = Rational(s - k + 1) / (2 * s - 2 * k + p + 2 + alpha);
        if (lhs != rhs) return k;
    }
    return std::nullopt;
}

GridReport verify_monomial_small_degree(int p, int s, const Rational& alpha, int K, int extra) {
    if (p < 1 || s < p) {
        throw Error(ErrorKind::InvalidDegrees, "need 1 <= p <= s");
    }
    if (alpha <= 0) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");

    GridReport report;
    Timer timer(report);
    report.suite = "th6";
    std::vector<Rational> exponents;
    for (int j = 0; j <= extra; ++j) exponents.push_back(alpha + 2 * j);
    report.parameters = {{"p", std::to_string(p)},
                         {"s", std::to_string(s)},
                         {"alpha", to_string(alpha)},
                         {"K", std::to_string(K)},
                         {"ansatz", "r^{alpha+2j}, 0 <= j <= " + std::to_string(extra)}};
    const std::string base = "p=" + std::to_string(p) + " s=" + std::to_string(s) +
                             " alpha=" + to_string(alpha);

    CaseRow scalar;
    scalar.label = base + " scalar-condition";
    const auto failing_k = monomial_condition_failure(p, s, alpha);
    if (p < s) {
        scalar.passed = failing_k.has_value();
        scalar.outcome = failing_k ? "fails at k = " + std::to_string(*failing_k)
                                   : "holds on [p, s]";
        if (!scalar.passed) scalar.witness = "condition holds for every k in [p, s]";
    } else {
        scalar.passed = !failing_k;
        scalar.outcome = failing_k ? "fails at k = " + std::to_string(*failing_k)
                                   : "holds on [p, s]";
        if (!scalar.passed) scalar.witness = "condition fails at k = " + std::to_string(*failing_k);
    }
    report.add(std::move(scalar));

    CaseRow ansatz;
    ansatz.label = base + " ansatz";
    const RadialSymbol phi = RadialSymbol::monomial(1, alpha);
    const AnsatzSystem sys = generate_ansatz_equations(p, s, phi, exponents);
    const auto basis = nullspace(sys.matrix);
    ansatz.outcome = "nullspace dimension " + std::to_string(basis.size());
    if (p < s) {
        ansatz.passed = basis.empty();
        if (!ansatz.passed) {
            ansatz.witness = "nonzero commutant " + render(symbol_from_coefficients(exponents, basis[0]));
        }
    } else {
        const RadialSymbol expected = RadialSymbol::monomial(1, alpha);
        const bool ray = basis.size() == 1 && symbol_from_coefficients(exponents, basis[0]) == expected;
        bool certified = false;
        if (ray) {
            certified = is_zero_on_exact_region(
                commutator(build_matrix({p, phi}, K), build_matrix({s, expected}, K)));
        }
        ansatz.passed = ray && certified;
        if (ray) ansatz.outcome += ", family {c*" + render(expected) + "}";
        if (!ansatz.passed) {
            ansatz.witness = ray ? "commutator of r^alpha with itself is nonzero"
                                 : "nullspace is not the ray of r^alpha";
        }
    }
    report.add(std::move(ansatz));
    return report;
}

GridReport verify_uniqueness(int p, int s, const RadialSymbol& phi,
                             const std::vector<Rational>& exponents, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "uniqueness";
    std::string ansatz_text;
    for (const auto& e : exponents) ansatz_text += (ansatz_text.empty() ? "" : ",") + to_string(e);
    report.parameters = {{"p", std::to_string(p)},
                         {"s", std::to_string(s)},
                         {"phi", render(phi)},
                         {"K", std::to_string(K)},
                         {"ansatz", "{" + ansatz_text + "}"}};

    CaseRow row;
    row.label = "p=" + std::to_string(p) + " s=" + std::to_string(s) + " phi=" + render(phi) +
                " ansatz-size=" + std::to_string(exponents.size());
    const AnsatzSystem sys = generate_ansatz_equations(p, s, phi, exponents);
    const auto basis = nullspace(sys.matrix);
    const auto t_phi = build_matrix({p, phi}, K);
    std::size_t certified = 0;
    for (const auto& v : basis) {
        if (is_zero_on_exact_region(
                commutator(t_phi, build_matrix({s, symbol_from_coefficients(exponents, v)}, K)))) {
            ++certified;
        }
    }
    row.outcome = "dimension " + std::to_string(basis.size()) + ", certified " +
                  std::to_string(certified);
    row.passed = basis.size() <= 1 && certified == basis.size();
    if (!row.passed) {
        row.witness = basis.size() > 1 ? "commutant dimension " + std::to_string(basis.size())
                                       : "nullspace vector failed the commutator check";
    }
    report.add(std::move(row));
    return report;
}

GridReport verify_case_formulas(int q_max, int p_max, int exponent_max) {
    GridReport report;
    Timer timer(report);
    report.suite = "case-formulas";
    report.parameters = {{"q_max", std::to_string(q_max)},
                         {"p", "1.." + std::to_string(p_max)},
                         {"exponents", "0.." + std::to_string(exponent_max)}};

    for (int e = 0; e <= exponent_max; ++e) {
        const RadialSymbol phi = RadialSymbol::monomial(1, e);
        const auto hat = [&](long z) { return mellin_eval(phi, Rational(z)); };

        for (int p = 0; p <= p_max; ++p) {
            CaseRow row;
            row.label = "p=" + std::to_string(p) + " phi=" + render(phi);
            std::size_t checked = 0;
            for (int q = -q_max; q <= q_max && row.passed; ++q) {
                int image = 0;
                Rational printed;
                const int k = std::abs(q);
                if (p == 0) {
                    image = q;
                    printed = 2 * (k + 1) * hat(2 * k + 2);
                } else if (q >= 0) {
                    image = k + p;
                    printed = 2 * (k + p + 1) * hat(2 * k + p + 2);
                } else if (k >= p) {
                    image = -(k - p);
                    printed = 2 * (k - p + 1) * hat(2 * k - p + 2);
                } else {
                    image = p - k;
                    printed = 2 * (p - k + 1) * hat(p + 2);
                }
                const auto [idx, coeff] = apply(p, phi, BasisIndex{q});
                ++checked;
                if (idx.q != image || coeff != printed) {
                    row.passed = false;
                    row.witness = "q=" + std::to_string(q) + ": unified gives e_" +
                                  std::to_string(idx.q) + " * " + to_string(coeff) +
                                  ", case formula gives e_" + std::to_string(image) + " * " +
                                  to_string(printed);
                }
            }
            row.outcome = std::to_string(checked) + " indices compared";
            report.add(std::move(row));
        }
    }
    return report;
}

GridReport verify_identity_law(int K_max) {
    GridReport report;
    Timer timer(report);
    report.suite = "identity";
    report.parameters = {{"K", "0.." + std::to_string(K_max)}};
    for (int K = 0; K <= K_max; ++K) {
        CaseRow row;
        row.label = "K=" + std::to_string(K);
        const auto m = build_matrix({0, RadialSymbol::constant(1)}, K);
        bool ok = m.entries().size() == static_cast<std::size_t>(2 * K + 1);
        for (const auto& [key, v] : m.entries()) {
            if (key.first != key.second || v != 1) {
                ok = false;
                row.witness = entry_text(key, v);
                break;
            }
        }
        row.passed = ok;
        row.outcome = ok ? "identity" : "not identity";
        if (!ok && row.witness.empty()) row.witness = "missing diagonal entries";
        report.add(std::move(row));
    }
    return report;
}

namespace {

std::string tuple_label(int p, int s, int m) {
    return "p=" + std::to_string(p) + " s=" + std::to_string(s) + " m=" + std::to_string(m);
}

}  // namespace

GridReport verify_dichotomy(int p_max, int m_max, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "th7";
    report.parameters = {{"p", "2.." + std::to_string(p_max)},
                         {"s", "1..p-1"},
                         {"m", "0.." + std::to_string(m_max)},
                         {"K", std::to_string(K)},
                         {"ansatz", "r^{s+2jp}, 0 <= j <= m"}};
    for (int p = 2; p <= p_max; ++p) {
        for (int s = 1; s < p; ++s) {
            for (int m = 0; m <= m_max; ++m) {
                CaseRow row;
                row.label = tuple_label(p, s, m);
                const Prediction predicted = classify_th7(p, s, m);
                const CommutantResult r = solve_commutant(p, s, m, K);
                const bool agrees = (predicted == Prediction::Exists) == (r.verdict == Verdict::Family);
                row.passed = agrees && r.uncertified == 0;
                row.outcome = "predicted " + std::string(to_string(predicted)) + ", solved " +
                              std::string(to_string(r.verdict)) + " (dimension " +
                              std::to_string(r.dimension()) + ", ansatz rank " +
                              std::to_string(r.ansatz_rank) + "/" +
                              std::to_string(r.ansatz_unknowns) + ", rank(A;B) " +
                              std::to_string(r.rank_AB) + ")";
                if (!row.passed) {
                    const auto blocks = build_blocks(p, s, m);
                    const auto ray = partial_fraction_ray(p, s, m);
                    const RatVector b_ray = blocks.B * ray.weights;
                    row.witness = r.uncertified != 0
                                      ? std::to_string(r.uncertified) +
                                            " nullspace vectors failed the commutator check"
                                      : "ray_in_nullspace=" +
                                            std::string(r.ray_in_nullspace ? "true" : "false") +
                                            ", (B*ray)_0 = " + to_string(b_ray.front());
                }
                report.add(std::move(row));
            }
        }
    }
    return report;
}

GridReport verify_block_identities(int p_max, int m_max) {
    GridReport report;
    Timer timer(report);
    report.suite = "block-identities";
    report.parameters = {{"p", "2.." + std::to_string(p_max)},
                         {"s", "1..p-1"},
                         {"m", "0.." + std::to_string(m_max)}};
    for (int p = 2; p <= p_max; ++p) {
        for (int s = 1; s < p; ++s) {
            for (int m = 0; m <= m_max; ++m) {
                CaseRow row;
                row.label = tuple_label(p, s, m);
                const auto sys = build_blocks(p, s, m);
                const bool identities = check_block_identities(sys);
                const auto rank_ab = rank(sys.AB());
                const auto rank_abc = rank(sys.ABC());
                row.outcome = std::string("identities ") + (identities ? "hold" : "fail") +
                              ", rank(A;B) = " + std::to_string(rank_ab) +
                              ", rank(A;B;C) = " + std::to_string(rank_abc);
                row.passed = identities && rank_ab == static_cast<std::size_t>(p) &&
                             rank_abc == rank_ab;
                if (!identities) {
                    row.witness = "printed block identity fails";
                } else if (rank_abc != rank_ab) {
                    row.witness = "C is not redundant";
                } else if (rank_ab != static_cast<std::size_t>(p)) {
                    row.witness = "rank(A;B) = " + std::to_string(rank_ab) + " != p = " +
                                  std::to_string(p);
                }
                report.add(std::move(row));
            }
        }
    }
    return report;
}

GridReport verify_uniqueness_grid(int p_max, int m_max, int K) {
    GridReport report;
    Timer timer(report);
    report.suite = "uniqueness-grid";
    report.parameters = {{"p", "2.." + std::to_string(p_max)},
                         {"s", "1..p-1"},
                         {"m", "0.." + std::to_string(m_max)},
                         {"K", std::to_string(K)},
                         {"ansatz", "r^{s+2jp}, 0 <= j <= m, then 0 <= j <= 2m+3"}};
    for (int p = 2; p <= p_max; ++p) {
        for (int s = 1; s < p; ++s) {
            for (int m = 0; m <= m_max; ++m) {
                CaseRow row;
                row.label = tuple_label(p, s, m);
                const CommutantResult base = solve_commutant(p, s, m, K);
                const CommutantResult enlarged =
                    solve_commutant(p, s, m, K, progression_exponents(p, s, 2 * m + 4));
                row.outcome = "dimension " + std::to_string(base.dimension()) +
                              ", enlarged " + std::to_string(enlarged.dimension());
                const bool family_ok = base.verdict != Verdict::Family || base.dimension() == 1;
                const bool stable = enlarged.dimension() <= base.dimension();
                row.passed = family_ok && stable && base.uncertified == 0 &&
                             enlarged.uncertified == 0;
                if (!family_ok) row.witness = "family dimension " + std::to_string(base.dimension());
                else if (!stable) row.witness = "enlarged ansatz has dimension " +
                                                std::to_string(enlarged.dimension());
                else if (!row.passed) row.witness = "uncertified nullspace vector";
                report.add(std::move(row));
            }
        }
    }
    return report;
}

std::vector<std::string> suite_names() {
    return {"block-identities", "case-formulas", "identity", "product", "radial-commutation",
            "same-degree", "th6", "th7", "uniqueness"};
}

namespace {

void merge(GridReport& into, const GridReport& from) {
    for (const auto& c : from.cases) into.cases.push_back(c);
}

RadialSymbol sym(const char* text) { return parse_radial(text); }

}  // namespace

GridReport run_grid(const GridConfig& config) {
    const auto& name = config.suite;
    const int K = config.K;
    GridReport report;
    {
        Timer timer(report);
        if (name == "th7") {
            report = verify_dichotomy(config.p_max, config.m_max, K);
        } else if (name == "block-identities") {
            report = verify_block_identities(config.p_max, config.m_max);
        } else if (name == "case-formulas") {
            report = verify_case_formulas(config.q_max, std::max(config.p_max, 1), 6);
        } else if (name == "identity") {
            report = verify_identity_law(config.q_max);
        } else if (name == "uniqueness") {
            report = verify_uniqueness_grid(config.p_max, config.m_max, K);
        } else if (name == "product") {
            report.suite = name;
            const std::vector<RadialSymbol> psis = {sym("r"), sym("r^2"), sym("1 + r"),
                                                    sym("3"), sym("0")};
            for (int p = -config.p_max; p <= config.p_max; ++p) {
                if (p == 0) continue;
                for (const char* phi : {"r", "1", "1 + r^2"}) {
                    merge(report, verify_product_theorem(p, sym(phi), psis, K));
                }
            }
        } else if (name == "radial-commutation") {
            report.suite = name;
            const std::vector<RadialSymbol> psis = {sym("r"), sym("r^3 + 2"), sym("5")};
            for (int p = -config.p_max; p <= config.p_max; ++p) {
                if (p == 0) continue;
                for (const char* phi : {"r", "r^3", "2*r - r^2"}) {
                    merge(report, verify_radial_commutation(p, sym(phi), psis, K));
                }
            }
        } else if (name == "same-degree") {
            report.suite = name;
            const std::vector<std::pair<const char*, const char*>> pairs = {
                {"r", "2*r"}, {"r", "r^2"}, {"1 + r^2", "2 + 2*r^2"}, {"r^{1/2}", "r"}};
            for (int p = -config.p_max; p <= config.p_max; ++p) {
                if (p == 0) continue;
                for (const auto& [a, b] : pairs) {
                    merge(report, verify_same_degree(p, sym(a), sym(b), K));
                }
            }
        } else if (name == "th6") {
            report.suite = name;
            for (int p = 1; p <= config.p_max; ++p) {
                for (int s = p; s <= config.p_max; ++s) {
                    std::vector<Rational> alphas = {Rational(1), Rational(2), rat(1, 2), Rational(3)};
                    if (config.alpha) alphas = {*config.alpha};
                    for (const Rational& alpha : alphas) {
                        merge(report, verify_monomial_small_degree(p, s, alpha, K));
                    }
                }
            }
        } else {
            throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
        }
    }
    report.parameters["p_max"] = std::to_string(config.p_max);
    report.parameters["m_max"] = std::to_string(config.m_max);
    report.parameters["K"] = std::to_string(K);
    return report;
}

}  // namespace htz
