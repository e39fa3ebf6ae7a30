#include "htz/commutant.hpp"
#include "htz/error.hpp"
#include "htz/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace htz;

namespace {

RadialSymbol sym(const char* text) { return parse_radial(text); }

}  // namespace

TEST_CASE("product theorem suite") {
    auto report = verify_product_theorem(1, sym("r"), {sym("r"), sym("r^2"), sym("1 + r")}, 40);
    CHECK(report.passed());
    CHECK(report.cases_run() == 3);
    for (const auto& c : report.cases) {
        CHECK(c.outcome.rfind("NotToeplitz", 0) == 0);
        CHECK_FALSE(c.witness.empty());
    }

    report = verify_product_theorem(1, sym("r"), {sym("3")}, 40);
    CHECK(report.passed());
    CHECK(report.cases[0].outcome == "Toeplitz degree 1, h = 3*r");

    report = verify_product_theorem(2, sym("1"), {sym("r")}, 40);
    CHECK(report.passed());

    report = verify_product_theorem(-3, sym("r^2 + 1"), {sym("r"), sym("2"), sym("0")}, 40);
    CHECK(report.passed());

    // mellin(3 - 4r, z) = 3/z - 4/(z+1) vanishes at z = 3 = 2k+p+2 for k = 0.
    report = verify_product_theorem(1, sym("3 - 4*r"), {sym("r")}, 40);
    CHECK(report.cases[0].skipped);
    CHECK(report.passed());
}

TEST_CASE("radial commutation suite") {
    CHECK(verify_radial_commutation(1, sym("r"), {sym("r")}, 40).passed());
    CHECK(verify_radial_commutation(1, sym("r"), {sym("5")}, 40).cases[0].outcome == "zero commutator");
    const auto neg = verify_radial_commutation(-2, sym("r^3"), {sym("r")}, 40);
    CHECK(neg.passed());
    CHECK(neg.cases[0].outcome == "nonzero commutator");
    CHECK(verify_radial_commutation(1, sym("2"), {sym("r")}, 40).cases[0].skipped);
}

TEST_CASE("same degree suite") {
    auto r = verify_same_degree(1, sym("r"), sym("2*r"), 40);
    CHECK(r.passed());
    CHECK(r.cases[0].outcome == "zero commutator; proportional");
    r = verify_same_degree(1, sym("r"), sym("r^2"), 40);
    CHECK(r.passed());
    CHECK(r.cases[0].outcome == "nonzero commutator; not proportional");
    CHECK_FALSE(r.cases[0].witness.empty());
    r = verify_same_degree(3, sym("1 + r^2"), sym("2 + 2*r^2"), 40);
    CHECK(r.passed());
    CHECK(r.cases[0].outcome == "zero commutator; proportional");

    CHECK(proportional(sym("0"), sym("r")));
    CHECK_FALSE(proportional(sym("1 + r"), sym("1 + 2*r")));
}

TEST_CASE("monomial small degree suite") {
    CHECK(monomial_condition_failure(1, 2, 1) == 1);
    CHECK_FALSE(monomial_condition_failure(2, 2, 3));

    auto r = verify_monomial_small_degree(1, 2, 1, 40);
    CHECK(r.passed());
    CHECK(r.cases[0].outcome == "fails at k = 1");
    CHECK(r.cases[1].outcome == "nullspace dimension 0");

    r = verify_monomial_small_degree(2, 2, 3, 40);
    CHECK(r.passed());
    CHECK(r.cases[1].outcome == "nullspace dimension 1, family {c*r^3}");

    r = verify_monomial_small_degree(1, 3, rat(1, 2), 40);
    CHECK(r.passed());
    CHECK_THROWS_AS(verify_monomial_small_degree(3, 2, 1, 40), Error);
}

TEST_CASE("uniqueness suite") {
    // m-ansatz of the (2,1,2) problem against phi = r^6 and phi = r^10.
    CHECK(verify_uniqueness(2, 1, sym("r^6"), progression_exponents(2, 1, 3), 40).passed());
    CHECK(verify_uniqueness(2, 1, sym("r^10"), progression_exponents(2, 1, 3), 40).passed());
    CHECK(verify_uniqueness(2, 1, sym("r^6"), progression_exponents(2, 1, 6), 40).passed());
    CHECK(verify_uniqueness(3, 2, sym("r^21"), progression_exponents(3, 2, 4), 40).passed());
    // Self-commutation gives exactly one dimension.
    const auto self = verify_uniqueness(2, 2, sym("r^3"), {1, 3, 5}, 40);
    CHECK(self.passed());
    CHECK(self.cases[0].outcome == "dimension 1, certified 1");
}

TEST_CASE("case formula and identity suites") {
    CHECK(verify_case_formulas(64, 8, 6).passed());
    CHECK(verify_identity_law(16).passed());
}

TEST_CASE("block identity suite reports the rank shortfall") {
    const auto r = verify_block_identities(4, 3);
    CHECK(r.cases_run() == 6 * 4);
    // The printed identities always hold; rank(A;B) = p does not.
    for (const auto& c : r.cases) CHECK(c.outcome.rfind("identities hold", 0) == 0);
    CHECK_FALSE(r.passed());
    const auto it = std::find_if(r.cases.begin(), r.cases.end(),
                                 [](const CaseRow& c) { return c.label == "p=2 s=1 m=0"; });
    REQUIRE(it != r.cases.end());
    CHECK_FALSE(it->passed);
    CHECK(it->witness == "rank(A;B) = 1 != p = 2");
}

TEST_CASE("dichotomy suite") {
    const auto r = verify_dichotomy(3, 3, 40);
    CHECK(r.cases_run() == 3 * 4);
    for (const auto& c : r.cases) {
        const bool predicted_trivial = c.outcome.rfind("predicted trivial", 0) == 0;
        CHECK(c.passed == predicted_trivial);
        if (!c.passed) CHECK(c.witness.rfind("ray_in_nullspace=false", 0) == 0);
    }
}

TEST_CASE("reports are deterministic") {
    const GridConfig config{"same-degree", 2, 1, 8, 20, std::nullopt};
    const auto a = run_grid(config);
    const auto b = run_grid(config);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_csv(a) == to_csv(b));
    CHECK_FALSE(to_json(a).contains("wall_ms"));
    CHECK(to_json(a, true).contains("wall_ms"));
    CHECK(to_csv(a).rfind("suite,case,passed,skipped,outcome,witness\n", 0) == 0);
}

TEST_CASE("run_grid dispatch") {
    for (const auto& name : suite_names()) {
        if (name == "th7" || name == "uniqueness" || name == "block-identities") continue;
        INFO(name);
        CHECK(run_grid({name, 2, 1, 8, 20, std::nullopt}).passed());
    }
    CHECK(run_grid({"uniqueness", 3, 3, 8, 40, std::nullopt}).passed());
    try {
        run_grid({"nope", 2, 1, 8, 20, std::nullopt});
        FAIL("expected UnknownSuite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownSuite);
    }
}
