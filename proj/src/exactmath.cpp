#include "htz/exactmath.hpp"

#include "htz/error.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace htz {

Rational rat(long numerator, long denominator) {
    if (denominator == 0) {
        throw Error(ErrorKind::InvalidArgument, "zero denominator");
    }
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

namespace {

bool is_integer_text(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class to_mpz(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_text(num_text)) {
        throw Error(ErrorKind::InvalidArgument, "not a rational: '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) {
        return Rational(to_mpz(num_text));
    }
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_text(den_text) || den_text.front() == '-' || den_text.front() == '+') {
        throw Error(ErrorKind::InvalidArgument, "not a rational: '" + std::string(text) + "'");
    }
    mpz_class den = to_mpz(den_text);
    if (den == 0) {
        throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(to_mpz(num_text), den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::InvalidArgument, "matrix must be non-empty");
    }
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<RatVector> tmp;
    for (const auto& r : rows) tmp.emplace_back(r);
    *this = from_rows(tmp);
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw Error(ErrorKind::InvalidArgument, "matrix must be non-empty");
    }
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) {
            throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        }
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols_);
    }
    return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Rational& RatMatrix::operator()(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix index");
    return data_[r * cols_ + c];
}

const Rational& RatMatrix::operator()(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix index");
    return data_[r * cols_ + c];
}

RatVector RatMatrix::row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("RatMatrix row");
    return RatVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RatMatrix RatMatrix::stacked(const RatMatrix& below) const {
    if (below.cols_ != cols_) {
        throw Error(ErrorKind::InvalidArgument, "column mismatch in stacked()");
    }
    RatMatrix out(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + data_.size());
    return out;
}

RatVector RatMatrix::operator*(const RatVector& v) const {
    if (v.size() != cols_) {
        throw Error(ErrorKind::InvalidArgument, "dimension mismatch in matrix-vector product");
    }
    RatVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

namespace {

struct Echelon {
    RatMatrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

// Gauss-Jordan to reduced row echelon form. Pivot choice is the first nonzero
// entry in the column, so results depend only on the input.
Echelon reduce(const RatMatrix& input) {
    if (input.empty()) {
        throw Error(ErrorKind::InvalidArgument, "elimination on empty matrix");
    }
    RatMatrix m = input;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        }
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

}  // namespace

std::size_t rank(const RatMatrix& m) { return reduce(m).pivots.size(); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
    const Echelon e = reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            v[e.pivots[i]] = -e.reduced(i, free);
        }
        auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        const Rational lead = *first;
        for (auto& x : v) x /= lead;
        basis.push_back(std::move(v));
    }
    return basis;
}

bool verify_rational_identity(const SampledFunction& lhs, const SampledFunction& rhs,
                              std::size_t degree_bound, long start, std::size_t max_skips) {
    std::size_t compared = 0;
    std::size_t skipped_in_a_row = 0;
    for (long k = start; compared < degree_bound + 1; ++k) {
        auto l = lhs(k);
        auto r = rhs(k);
        if (!l || !r) {
            if (++skipped_in_a_row > max_skips) {
                throw Error(ErrorKind::PoleAtSample,
                            "no pole-free sample found near k = " + std::to_string(k));
            }
            continue;
        }
        skipped_in_a_row = 0;
        if (*l != *r) return false;
        ++compared;
    }
    return true;
}

}  // namespace htz
