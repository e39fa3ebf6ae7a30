#include "htz/operator.hpp"

#include "htz/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace htz {

std::pair<BasisIndex, Rational> apply(int p, const RadialSymbol& phi, BasisIndex q) {
    const int out = q.q + p;
    const int a = std::abs(q.q);
    const int b = std::abs(out);
    return {BasisIndex{out}, 2 * (b + 1) * mellin_eval(phi, Rational(a + b + 2))};
}

OperatorMatrix::OperatorMatrix(int K, int margin) : K_(K), margin_(margin) {
    if (K < 0 || margin < 0) {
        throw Error(ErrorKind::InvalidArgument, "truncation and margin must be nonnegative");
    }
}

Rational OperatorMatrix::at(int row, int col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? Rational(0) : it->second;
}

void OperatorMatrix::set(int row, int col, const Rational& value) {
    if (std::abs(row) > K_ || std::abs(col) > K_) {
        throw std::out_of_range("OperatorMatrix index outside truncation window");
    }
    if (value == 0) {
        entries_.erase({row, col});
    } else {
        entries_[{row, col}] = value;
    }
}

OperatorMatrix build_matrix(const QuasiSymbol& sym, int K) {
    const int p = sym.degree;
    if (K < std::abs(p)) {
        throw Error(ErrorKind::TruncationTooSmall,
                    "K = " + std::to_string(K) + " is smaller than |degree| = " +
                        std::to_string(std::abs(p)));
    }
    OperatorMatrix m(K, std::abs(p));
    for (int q = -K; q <= K; ++q) {
        if (std::abs(q + p) > K) continue;
        auto [image, coeff] = apply(p, sym.radial, BasisIndex{q});
        m.set(image.q, q, coeff);
    }
    return m;
}

namespace {

void require_same_truncation(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.K() != b.K()) {
        throw Error(ErrorKind::MismatchedTruncation,
                    "truncations differ: " + std::to_string(a.K()) + " vs " +
                        std::to_string(b.K()));
    }
}

}  // namespace

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_truncation(a, b);
    const int margin = std::min(a.margin() + b.margin(), a.K());
    OperatorMatrix out(a.K(), margin);

    // Index A by column so each B entry (k, j) meets the A entries (i, k).
    std::map<int, std::vector<std::pair<int, Rational>>> a_by_col;
    for (const auto& [key, v] : a.entries()) a_by_col[key.second].emplace_back(key.first, v);

    std::map<OperatorMatrix::Key, Rational> acc;
    for (const auto& [key, bv] : b.entries()) {
        auto it = a_by_col.find(key.first);
        if (it == a_by_col.end()) continue;
        for (const auto& [row, av] : it->second) acc[{row, key.second}] += av * bv;
    }
    for (const auto& [key, v] : acc) out.set(key.first, key.second, v);
    return out;
}

OperatorMatrix subtract(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_truncation(a, b);
    OperatorMatrix out(a.K(), std::max(a.margin(), b.margin()));
    std::map<OperatorMatrix::Key, Rational> acc;
    for (const auto& [key, v] : a.entries()) acc[key] += v;
    for (const auto& [key, v] : b.entries()) acc[key] -= v;
    for (const auto& [key, v] : acc) out.set(key.first, key.second, v);
    return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return subtract(compose(a, b), compose(b, a));
}

namespace {

void require_exact_region(const OperatorMatrix& m) {
    if (m.margin() >= m.K()) {
        throw Error(ErrorKind::EmptyExactRegion,
                    "margin " + std::to_string(m.margin()) + " leaves no exact columns at K = " +
                        std::to_string(m.K()));
    }
}

bool in_exact_region(const OperatorMatrix& m, int col) {
    return std::abs(col) <= m.exact_radius();
}

}  // namespace

std::optional<std::pair<OperatorMatrix::Key, Rational>> first_exact_nonzero(
    const OperatorMatrix& m) {
    require_exact_region(m);
    for (const auto& [key, v] : m.entries()) {
        if (in_exact_region(m, key.second)) return std::make_pair(key, v);
    }
    return std::nullopt;
}

bool is_zero_on_exact_region(const OperatorMatrix& m) { return !first_exact_nonzero(m); }

namespace {

// Scalar c with samples == c * mellin(g, .), if one exists.
std::optional<Rational> proportional_match(const std::vector<MellinSample>& samples,
                                           const RadialSymbol& g) {
    std::optional<Rational> scale;
    for (const auto& s : samples) {
        const Rational expected = mellin_eval(g, s.argument);
        if (expected == 0) {
            if (s.value != 0) return std::nullopt;
            continue;
        }
        const Rational c = s.value / expected;
        if (scale && *scale != c) return std::nullopt;
        scale = c;
    }
    return scale;
}

}  // namespace

ToeplitzTest is_toeplitz(const OperatorMatrix& m, const std::vector<RadialSymbol>& dictionary) {
    require_exact_region(m);
    ToeplitzTest result;

    std::optional<MatrixEntry> band_entry;
    for (const auto& [key, v] : m.entries()) {
        if (!in_exact_region(m, key.second)) continue;
        MatrixEntry e{key.first, key.second, v};
        if (!band_entry) {
            band_entry = e;
        } else if (e.row - e.col != band_entry->row - band_entry->col) {
            result.witness = std::make_pair(*band_entry, e);
            result.reason = "entries on two different bands";
            return result;
        }
    }

    result.toeplitz = true;
    if (!band_entry) {
        result.zero_operator = true;
        result.matched = RadialSymbol{};
        return result;
    }

    const int d = band_entry->row - band_entry->col;
    result.degree = d;

    // Mellin argument -> (value, column that produced it)
    std::map<Rational, std::pair<Rational, int>> recovered;
    for (int q = -m.exact_radius(); q <= m.exact_radius(); ++q) {
        const int out = q + d;
        if (std::abs(out) > m.K()) continue;
        const Rational arg(std::abs(q) + std::abs(out) + 2);
        const Rational value = m.at(out, q) / (2 * (std::abs(out) + 1));
        auto [it, inserted] = recovered.try_emplace(arg, value, q);
        if (!inserted && it->second.first != value) {
            const int prev = it->second.second;
            result.toeplitz = false;
            result.witness = std::make_pair(MatrixEntry{prev + d, prev, m.at(prev + d, prev)},
                                            MatrixEntry{out, q, m.at(out, q)});
            result.reason = "columns " + std::to_string(prev) + " and " + std::to_string(q) +
                            " imply different Mellin values at " + to_string(arg);
            return result;
        }
    }
    for (const auto& [arg, vq] : recovered) result.samples.push_back({arg, vq.first});

    for (const auto& g : dictionary) {
        if (g.is_zero()) continue;
        if (auto c = proportional_match(result.samples, g)) {
            result.matched = g * *c;
            break;
        }
    }
    return result;
}

nlohmann::json to_json(const OperatorMatrix& m) {
    auto entries = nlohmann::json::array();
    for (const auto& [key, v] : m.entries()) {
        entries.push_back({{"row", key.first}, {"col", key.second}, {"value", to_string(v)}});
    }
    return {{"K", m.K()}, {"margin", m.margin()}, {"entries", entries}};
}

namespace {

nlohmann::json to_json(const MatrixEntry& e) {
    return {{"row", e.row}, {"col", e.col}, {"value", to_string(e.value)}};
}

}  // namespace

nlohmann::json to_json(const ToeplitzTest& t) {
    nlohmann::json out;
    out["toeplitz"] = t.toeplitz;
    if (t.toeplitz) {
        out["zero_operator"] = t.zero_operator;
        out["degree"] = t.degree;
        auto samples = nlohmann::json::array();
        for (const auto& s : t.samples) {
            samples.push_back({{"z", to_string(s.argument)}, {"value", to_string(s.value)}});
        }
        out["samples"] = samples;
        out["matched"] = t.matched ? nlohmann::json(render(*t.matched)) : nlohmann::json(nullptr);
    } else {
        out["reason"] = t.reason;
        if (t.witness) {
            out["witness"] = {to_json(t.witness->first), to_json(t.witness->second)};
        }
    }
    return out;
}

}  // namespace htz
