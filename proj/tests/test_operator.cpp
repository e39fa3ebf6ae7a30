#include "htz/error.hpp"
#include "htz/operator.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace htz;
using Catch::Matchers::WithinAbs;

namespace {

RadialSymbol sym(const char* text) { return parse_radial(text); }

// <f e_q, e_j> / <e_j, e_j> over the disk with dA = r dr dtheta / pi, computed
// numerically from the definitions of the basis and the projection. The test
// symbols are polynomials in r, so a fixed Gauss-Legendre rule is exact.
double projected_coefficient(int p, const RadialSymbol& phi, int q, int j) {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    constexpr int n_theta = 128;  // exact for trigonometric polynomials of this size
    const auto basis = [](int idx, double r, double theta) {
        return std::polar(std::pow(r, std::abs(idx)), idx * theta);
    };
    const auto inner = [&](auto&& f, auto&& g) {
        const auto radial = [&](double r) {
            std::complex<double> acc = 0.0;
            for (int t = 0; t < n_theta; ++t) {
                const double theta = 2.0 * std::numbers::pi * t / n_theta;
                acc += f(r, theta) * std::conj(g(r, theta));
            }
            return (acc * (2.0 * std::numbers::pi / n_theta)).real() * r / std::numbers::pi;
        };
        return Rule::integrate(radial, 0.0, 1.0);
    };
    const auto f_times_eq = [&](double r, double theta) {
        return std::polar(phi.evaluate(r), p * theta) * basis(q, r, theta);
    };
    const auto ej = [&](double r, double theta) { return basis(j, r, theta); };
    return inner(f_times_eq, ej) / inner(ej, ej);
}

}  // namespace

TEST_CASE("apply examples") {
    auto [idx, c] = apply(2, sym("1"), BasisIndex{-1});
    CHECK(idx.q == 1);
    CHECK(c == 1);

    std::tie(idx, c) = apply(0, sym("1"), BasisIndex{3});
    CHECK(idx.q == 3);
    CHECK(c == 1);

    std::tie(idx, c) = apply(1, sym("r"), BasisIndex{0});
    CHECK(idx.q == 1);
    CHECK(c == 1);
}

TEST_CASE("apply agrees with the projection computed by 2D quadrature") {
    const std::vector<std::pair<int, const char*>> symbols = {
        {2, "1"}, {1, "r"}, {3, "r^2 + 1/2"}, {-2, "r^3"}, {0, "2*r - r^2"}};
    for (const auto& [p, text] : symbols) {
        const RadialSymbol phi = sym(text);
        for (int q = -5; q <= 5; ++q) {
            const auto [idx, coeff] = apply(p, phi, BasisIndex{q});
            CAPTURE(p, text, q);
            CHECK_THAT(projected_coefficient(p, phi, q, idx.q), WithinAbs(coeff.get_d(), 1e-9));
            // No component along neighbouring basis elements.
            CHECK_THAT(projected_coefficient(p, phi, q, idx.q + 1), WithinAbs(0.0, 1e-9));
            CHECK_THAT(projected_coefficient(p, phi, q, -idx.q - 1), WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("build_matrix") {
    SECTION("radial constant one is the identity") {
        const auto m = build_matrix({0, sym("1")}, 5);
        CHECK(m.entries().size() == 11);
        for (int q = -5; q <= 5; ++q) CHECK(m.at(q, q) == 1);
        CHECK(m.margin() == 0);
    }
    SECTION("degree one, phi = r") {
        const auto m = build_matrix({1, sym("r")}, 2);
        CHECK(m.margin() == 1);
        CHECK(m.entries().size() == 4);
        for (int q = -2; q <= 1; ++q) {
            CHECK(m.at(q + 1, q) == rat(2 * (std::abs(q + 1) + 1), std::abs(q) + std::abs(q + 1) + 3));
        }
        CHECK(m.at(1, 0) == 1);
        const auto reflected = build_matrix({-1, sym("r")}, 2);
        for (const auto& [key, v] : m.entries()) CHECK(reflected.at(-key.first, -key.second) == v);
        CHECK(reflected.entries().size() == m.entries().size());
    }
    SECTION("truncation too small") {
        try {
            build_matrix({3, sym("r")}, 2);
            FAIL("expected TruncationTooSmall");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::TruncationTooSmall);
        }
    }
}

TEST_CASE("compose and commutator") {
    const int K = 10;
    const auto ident = build_matrix({0, sym("1")}, K);
    const auto m = build_matrix({2, sym("r^2 + 1")}, K);
    const auto im = compose(ident, m);
    CHECK(im.entries() == m.entries());
    CHECK(im.margin() == m.margin());

    const auto product = compose(build_matrix({1, sym("r")}, K), build_matrix({0, sym("r")}, K));
    CHECK(product.at(1, 0) == rat(2, 3));
    CHECK(product.margin() == 1);

    const auto band = compose(build_matrix({2, sym("r")}, K), build_matrix({-3, sym("r^2")}, K));
    CHECK(band.margin() == 5);
    for (const auto& [key, v] : band.entries()) {
        if (std::abs(key.second) <= band.exact_radius()) CHECK(key.first - key.second == -1);
    }

    CHECK(commutator(m, m).entries().empty());
    CHECK(is_zero_on_exact_region(
        commutator(build_matrix({1, sym("r")}, 40), build_matrix({1, sym("2*r")}, 40))));
    const auto c = commutator(build_matrix({1, sym("r")}, 40), build_matrix({1, sym("r^2")}, 40));
    const auto witness = first_exact_nonzero(c);
    REQUIRE(witness);
    CHECK(witness->second != 0);

    try {
        compose(build_matrix({0, sym("1")}, 3), build_matrix({0, sym("1")}, 4));
        FAIL("expected MismatchedTruncation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MismatchedTruncation);
    }
}

TEST_CASE("exact region checks") {
    CHECK(is_zero_on_exact_region(OperatorMatrix(5, 0)));
    CHECK_FALSE(is_zero_on_exact_region(build_matrix({0, sym("1")}, 5)));
    try {
        is_zero_on_exact_region(OperatorMatrix(3, 3));
        FAIL("expected EmptyExactRegion");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyExactRegion);
    }
    // Entries outside the exact region are ignored.
    OperatorMatrix m(5, 2);
    m.set(5, 4, 1);
    CHECK(is_zero_on_exact_region(m));
    m.set(0, 3, 1);
    CHECK_FALSE(is_zero_on_exact_region(m));
}

TEST_CASE("is_toeplitz") {
    SECTION("round trip of a single operator") {
        const auto t = is_toeplitz(build_matrix({1, sym("r")}, 20));
        REQUIRE(t.toeplitz);
        CHECK(t.degree == 1);
        REQUIRE_FALSE(t.samples.empty());
        for (const auto& s : t.samples) CHECK(s.value == 1 / (s.argument + 1));
    }
    SECTION("product with a non-constant radial operator") {
        const auto t = is_toeplitz(
            compose(build_matrix({1, sym("r")}, 40), build_matrix({0, sym("r")}, 40)));
        CHECK_FALSE(t.toeplitz);
        REQUIRE(t.witness);
        CHECK(t.witness->first.row - t.witness->first.col == 1);
    }
    SECTION("product with a constant recovers the scaled symbol") {
        const auto t = is_toeplitz(
            compose(build_matrix({1, sym("r")}, 40), build_matrix({0, sym("3")}, 40)), {sym("r")});
        REQUIRE(t.toeplitz);
        CHECK(t.degree == 1);
        for (const auto& s : t.samples) CHECK(s.value == 3 / (s.argument + 1));
        REQUIRE(t.matched);
        CHECK(*t.matched == sym("3*r"));
    }
    SECTION("two bands") {
        OperatorMatrix m(6, 1);
        m.set(1, 0, 1);
        m.set(0, 1, 1);
        const auto t = is_toeplitz(m);
        CHECK_FALSE(t.toeplitz);
        CHECK(t.reason == "entries on two different bands");
    }
    SECTION("zero operator") {
        const auto t = is_toeplitz(OperatorMatrix(4, 1));
        CHECK(t.toeplitz);
        CHECK(t.zero_operator);
    }
    SECTION("dictionary miss leaves the symbol unmatched") {
        const auto t = is_toeplitz(build_matrix({2, sym("r^2 + r")}, 20), {sym("r"), sym("r^2")});
        REQUIRE(t.toeplitz);
        CHECK_FALSE(t.matched);
    }
}

TEST_CASE("operator invariants") {
    SECTION("identity law") {
        for (int K = 0; K <= 64; ++K) {
            const auto m = build_matrix({0, sym("1")}, K);
            REQUIRE(m.entries().size() == static_cast<std::size_t>(2 * K + 1));
            for (const auto& [key, v] : m.entries()) {
                CHECK(key.first == key.second);
                CHECK(v == 1);
            }
        }
    }

    std::mt19937 gen(3);
    const std::vector<const char*> radials = {"r", "1 + r^2", "r^{1/2} - 2*r^5", "3", "r^6"};
    SECTION("conjugation symmetry and adjoint relation") {
        const int K = 30;
        for (int p = 1; p <= 6; ++p) {
            for (const char* text : radials) {
                const auto plus = build_matrix({p, sym(text)}, K);
                const auto minus = build_matrix({-p, sym(text)}, K);
                for (int q = -K; q <= K; ++q) {
                    if (std::abs(q + p) > K) continue;
                    CHECK(plus.at(q + p, q) == minus.at(-q - p, -q));
                    CHECK(plus.at(q + p, q) * (std::abs(q) + 1) ==
                          minus.at(q, q + p) * (std::abs(q + p) + 1));
                }
            }
        }
    }
    SECTION("associativity on exact regions") {
        const int K = 24;
        std::uniform_int_distribution<int> deg(-3, 3);
        std::uniform_int_distribution<std::size_t> pick(0, radials.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = build_matrix({deg(gen), sym(radials[pick(gen)])}, K);
            const auto b = build_matrix({deg(gen), sym(radials[pick(gen)])}, K);
            const auto c = build_matrix({deg(gen), sym(radials[pick(gen)])}, K);
            const auto left = compose(compose(a, b), c);
            const auto right = compose(a, compose(b, c));
            REQUIRE(left.margin() == right.margin());
            for (int col = -left.exact_radius(); col <= left.exact_radius(); ++col) {
                for (int row = -K; row <= K; ++row) CHECK(left.at(row, col) == right.at(row, col));
            }
        }
    }
    SECTION("Toeplitz round trip") {
        for (int p = -4; p <= 4; ++p) {
            for (const char* text : radials) {
                const RadialSymbol phi = sym(text);
                const auto t = is_toeplitz(build_matrix({p, phi}, 20), {phi});
                REQUIRE(t.toeplitz);
                CHECK(t.degree == p);
                for (const auto& s : t.samples) CHECK(s.value == mellin_eval(phi, s.argument));
                REQUIRE(t.matched);
                CHECK(*t.matched == phi);
            }
        }
    }
}

TEST_CASE("operator matrix json is ordered by (row, col)") {
    const auto j = to_json(build_matrix({-1, sym("r")}, 1));
    CHECK(j.dump() ==
          R"({"K":1,"entries":[{"col":0,"row":-1,"value":"1"},{"col":1,"row":0,"value":"1/2"}],"margin":1})");
}
