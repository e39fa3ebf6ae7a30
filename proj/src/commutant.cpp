#include "htz/commutant.hpp"

#include "htz/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace htz {

namespace {

void require_degrees(int p, int s, int m) {
    if (!(s >= 1 && p > s) || m < 0) {
        throw Error(ErrorKind::InvalidDegrees,
                    "need p > s >= 1 and m >= 0, got p = " + std::to_string(p) +
                        ", s = " + std::to_string(s) + ", m = " + std::to_string(m));
    }
}

Rational q_(long a, long b) { return rat(a, b); }

}  // namespace

CommutantSystem build_blocks(int p, int s, int m) {
    require_degrees(p, s, m);
    CommutantSystem sys;
    sys.p = p;
    sys.s = s;
    sys.m = m;
    sys.n = (2 * m + 1) * p;
    const long n = sys.n;
    const std::size_t cols = static_cast<std::size_t>(m) + 1;

    sys.A = RatMatrix(static_cast<std::size_t>(s), cols);
    for (int k = 0; k < s; ++k) {
        for (int j = 0; j <= m; ++j) {
            sys.A(k, j) = q_(s - k + 1, (p + 2L * s - 2L * k + n + 2) * (s + long(j) * p + 1)) -
                          q_(p - k + 1, (p + n + 2) * (p + s - k + long(j) * p + 1));
        }
    }
    sys.B = RatMatrix(static_cast<std::size_t>(p - s), cols);
    for (int k = s; k < p; ++k) {
        for (int j = 0; j <= m; ++j) {
            sys.B(k - s, j) = q_(p - k + 1, (j + 1L) * p + s - k + 1) -
                              q_(k - s + 1, k + long(j) * p + 1);
        }
    }
    sys.C = RatMatrix(static_cast<std::size_t>(s), cols);
    for (int k = p; k < p + s; ++k) {
        for (int j = 0; j <= m; ++j) {
            sys.C(k - p, j) = q_(k - p + 1, (2L * k - p + n + 2) * (s + long(j) * p + 1)) -
                              q_(k - s + 1, (p + n + 2) * (k + long(j) * p + 1));
        }
    }
    return sys;
}

bool check_block_identities(const CommutantSystem& sys) {
    const int p = sys.p;
    const int s = sys.s;
    for (int j = 0; j <= sys.m; ++j) {
        // a_{s-l, j} lives in A row s-l; c_{p+l, j} in C row l.
        for (int l = 1; l <= s - 1; ++l) {
            if (sys.A(s - l, j) != sys.C(l, j)) return false;
        }
        if (sys.C(0, j) != -sys.B(0, j) / (p + sys.n + 2)) return false;
    }
    return true;
}

Rational gamma_ratio(int p, int s, int m, const Rational& z) {
    const Rational x = z / (2 * p);
    const Rational shift = rat(s, p);
    Rational num = 1;
    for (int i = 1; i <= m; ++i) num *= x + i;
    Rational den = 1;
    for (int i = 0; i <= m; ++i) den *= x + shift + i;
    if (den == 0) {
        throw Error(ErrorKind::PoleAtSample, "F has a pole at z = " + to_string(z));
    }
    return num / den;
}

PartialFractionRay partial_fraction_ray(int p, int s, int m) {
    require_degrees(p, s, m);
    PartialFractionRay ray;
    for (int j = 0; j <= m; ++j) ray.poles.push_back(Rational(-(2L * s + 2L * j * p)));

    // Poles -(2s + 2jp) are distinct because p > 0.
    std::set<Rational> distinct(ray.poles.begin(), ray.poles.end());
    if (distinct.size() != ray.poles.size()) {
        throw Error(ErrorKind::InvalidDegrees, "partial-fraction poles are not simple");
    }

    // F(z) = 2p * prod_{i=1..m}(z + 2pi) / prod_{i=0..m}(z + 2s + 2pi)
    for (int j = 0; j <= m; ++j) {
        const Rational& z = ray.poles[j];
        Rational num = 2 * p;
        for (int i = 1; i <= m; ++i) num *= z + 2 * p * i;
        Rational den = 1;
        for (int i = 0; i <= m; ++i) {
            if (i != j) den *= z + 2 * s + 2 * p * i;
        }
        ray.weights.push_back(num / den);
    }

    for (int t = 1; t <= m + 2; ++t) {
        const Rational z(t);
        Rational sum = 0;
        for (int j = 0; j <= m; ++j) sum += ray.weights[j] / (z - ray.poles[j]);
        if (sum != gamma_ratio(p, s, m, z)) {
            throw Error(ErrorKind::InvalidArgument,
                        "partial fractions disagree with F at z = " + std::to_string(t));
        }
    }
    return ray;
}

Rational commutator_coefficient(int p, const RadialSymbol& phi, int s, const RadialSymbol& psi,
                                int q) {
    // T_p T_s e_q - T_s T_p e_q; both land on e_{q+p+s}.
    const auto [mid_s, first_s] = apply(s, psi, BasisIndex{q});
    const auto [out_ps, second_p] = apply(p, phi, mid_s);
    const auto [mid_p, first_p] = apply(p, phi, BasisIndex{q});
    const auto [out_sp, second_s] = apply(s, psi, mid_p);
    return second_p * first_s - second_s * first_p;
}

AnsatzSystem generate_ansatz_equations(int p, int s, const RadialSymbol& phi,
                                       const std::vector<Rational>& exponents) {
    if (p == 0 || s == 0) {
        throw Error(ErrorKind::InvalidDegrees, "angular degrees must be nonzero");
    }
    if (exponents.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty exponent list");
    }
    std::set<Rational> seen;
    for (const auto& e : exponents) {
        if (e < 0) {
            throw Error(ErrorKind::NegativeExponent, "negative exponent " + to_string(e));
        }
        if (!seen.insert(e).second) {
            throw Error(ErrorKind::DuplicateExponents, "duplicate exponent " + to_string(e));
        }
    }

    AnsatzSystem sys;
    sys.p = p;
    sys.s = s;
    sys.phi = phi;
    sys.exponents = exponents;
    sys.degree_bound = 2 * (exponents.size() + phi.terms().size());

    const int boundary = std::abs(p) + std::abs(s);
    const int tail = static_cast<int>(sys.degree_bound) + 1;
    for (int q = -boundary - tail; q <= boundary + tail; ++q) sys.indices.push_back(q);

    std::vector<RadialSymbol> basis;
    for (const auto& e : exponents) basis.push_back(RadialSymbol::monomial(1, e));

    sys.matrix = RatMatrix(sys.indices.size(), exponents.size());
    for (std::size_t r = 0; r < sys.indices.size(); ++r) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            sys.matrix(r, j) = commutator_coefficient(p, phi, s, basis[j], sys.indices[r]);
        }
    }
    return sys;
}

AnsatzSystem generate_ansatz_equations(int p, int s, int m,
                                       const std::vector<Rational>& exponents) {
    require_degrees(p, s, m);
    return generate_ansatz_equations(p, s, RadialSymbol::monomial(1, (2 * m + 1) * p), exponents);
}

RadialSymbol symbol_from_coefficients(const std::vector<Rational>& exponents,
                                      const RatVector& coefficients) {
    if (exponents.size() != coefficients.size()) {
        throw Error(ErrorKind::InvalidArgument, "exponent/coefficient length mismatch");
    }
    std::vector<Monomial> terms;
    for (std::size_t j = 0; j < exponents.size(); ++j) terms.push_back({coefficients[j], exponents[j]});
    return RadialSymbol(std::move(terms));
}

std::vector<Rational> progression_exponents(int p, int s, int count) {
    std::vector<Rational> out;
    for (int j = 0; j < count; ++j) out.push_back(Rational(s + 2 * j * p));
    return out;
}

CommutantResult solve_commutant(int p, int s, int m, int K) {
    return solve_commutant(p, s, m, K, progression_exponents(p, s, m + 1));
}

CommutantResult solve_commutant(int p, int s, int m, int K,
                                const std::vector<Rational>& exponents) {
    require_degrees(p, s, m);
    if (K < 2 * (p + s) + 4) {
        throw Error(ErrorKind::TruncationTooSmall,
                    "K = " + std::to_string(K) + " is below 2(p+s)+4 = " +
                        std::to_string(2 * (p + s) + 4));
    }
    CommutantResult result;
    result.p = p;
    result.s = s;
    result.m = m;
    result.n = (2 * m + 1) * p;
    result.K = K;

    const CommutantSystem blocks = build_blocks(p, s, m);
    result.rank_AB = rank(blocks.AB());
    result.rank_ABC = rank(blocks.ABC());
    const PartialFractionRay ray = partial_fraction_ray(p, s, m);
    result.ray_in_nullspace = is_zero(blocks.ABC() * ray.weights);

    const AnsatzSystem ansatz = generate_ansatz_equations(p, s, m, exponents);
    result.ansatz_rank = rank(ansatz.matrix);
    result.ansatz_unknowns = exponents.size();
    result.degree_bound = ansatz.degree_bound;

    const OperatorMatrix t_phi =
        build_matrix({p, RadialSymbol::monomial(1, result.n)}, K);
    for (auto& v : nullspace(ansatz.matrix)) {
        RadialSymbol psi = symbol_from_coefficients(exponents, v);
        const OperatorMatrix t_psi = build_matrix({s, psi}, K);
        if (!is_zero_on_exact_region(commutator(t_phi, t_psi))) {
            ++result.uncertified;
            continue;
        }
        result.coefficients.push_back(std::move(v));
        result.symbols.push_back(std::move(psi));
    }
    result.verdict = result.coefficients.empty() ? Verdict::Trivial : Verdict::Family;
    return result;
}

Prediction classify_th7(int p, int s, int m) {
    require_degrees(p, s, m);
    return p >= m + 1 ? Prediction::Trivial : Prediction::Exists;
}

std::string_view to_string(Verdict v) { return v == Verdict::Trivial ? "trivial" : "family"; }
std::string_view to_string(Prediction v) {
    return v == Prediction::Trivial ? "trivial" : "exists";
}

nlohmann::json to_json(const RatVector& v) {
    auto out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

nlohmann::json to_json(const RatMatrix& m) {
    auto out = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
    return out;
}

nlohmann::json to_json(const CommutantSystem& sys) {
    return {{"p", sys.p},           {"s", sys.s},           {"m", sys.m},
            {"n", sys.n},           {"A", to_json(sys.A)}, {"B", to_json(sys.B)},
            {"C", to_json(sys.C)}};
}

nlohmann::json to_json(const PartialFractionRay& ray) {
    return {{"poles", to_json(ray.poles)}, {"weights", to_json(ray.weights)}};
}

nlohmann::json to_json(const CommutantResult& r) {
    auto coeffs = nlohmann::json::array();
    for (const auto& v : r.coefficients) coeffs.push_back(to_json(v));
    auto symbols = nlohmann::json::array();
    for (const auto& f : r.symbols) symbols.push_back(render(f));
    return {{"p", r.p},
            {"s", r.s},
            {"m", r.m},
            {"n", r.n},
            {"K", r.K},
            {"verdict", to_string(r.verdict)},
            {"dimension", r.dimension()},
            {"coefficients", coeffs},
            {"symbols", symbols},
            {"rankAB", r.rank_AB},
            {"rankABC", r.rank_ABC},
            {"ansatz_rank", r.ansatz_rank},
            {"ansatz_unknowns", r.ansatz_unknowns},
            {"degree_bound", r.degree_bound},
            {"uncertified", r.uncertified},
            {"ray_in_nullspace", r.ray_in_nullspace}};
}

}  // namespace htz
