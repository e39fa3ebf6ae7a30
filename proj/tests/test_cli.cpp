#include "htz/cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = htz::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("mellin") {
    const auto r = run({"mellin", "--symbol", "r^3", "--z", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\n  \"value\": \"1/8\"\n}\n");

    const auto q = run({"mellin", "--symbol", "2*r - r^2", "--z", "4", "--tol", "1e-12"});
    REQUIRE(q.code == 0);
    const auto j = json::parse(q.out);
    CHECK(j["value"] == "7/30");
    CHECK(std::abs(j["quadrature"].get<double>() - 7.0 / 30.0) < 1e-12);
    CHECK(j["tol"] == 1e-12);
}

TEST_CASE("parse, apply, matrix") {
    auto j = json::parse(run({"parse", "--symbol", "2*r^3 - 1/2*r^{1/2}"}).out);
    CHECK(j["canonical"] == "-1/2*r^{1/2} + 2*r^3");
    CHECK(j["symbol"][0]["exp"] == "1/2");

    j = json::parse(run({"apply", "--p", "2", "--symbol", "1", "--q", "-1"}).out);
    CHECK(j["index"] == 1);
    CHECK(j["value"] == "1");

    j = json::parse(run({"matrix", "--p", "0", "--symbol", "1", "--K", "3"}).out);
    CHECK(j["K"] == 3);
    CHECK(j["margin"] == 0);
    CHECK(j["entries"].size() == 7);

    const auto csv = run({"matrix", "--p", "1", "--symbol", "r", "--K", "1", "--format", "csv"});
    CHECK(csv.out == "row,col,value\n0,-1,1/2\n1,0,1\n");
}

TEST_CASE("product and commutator") {
    auto j = json::parse(run({"product", "--p", "1", "--left-phi", "r", "--right-phi", "3",
                              "--check-toeplitz"})
                             .out);
    CHECK(j["toeplitz"]["toeplitz"] == true);
    CHECK(j["toeplitz"]["matched"] == "3*r");

    j = json::parse(run({"product", "--p", "1", "--left-phi", "r", "--right-phi", "r",
                         "--check-toeplitz"})
                        .out);
    CHECK(j["toeplitz"]["toeplitz"] == false);
    CHECK(j["toeplitz"]["witness"].size() == 2);

    j = json::parse(run({"commutator", "--p", "1", "--s", "1", "--left-phi", "r", "--right-phi",
                         "2*r"})
                        .out);
    CHECK(j["zero_on_exact_region"] == true);
    j = json::parse(run({"commutator", "--p", "1", "--s", "1", "--left-phi", "r", "--right-phi",
                         "r^2"})
                        .out);
    CHECK(j["zero_on_exact_region"] == false);
    CHECK(j.contains("witness"));
}

TEST_CASE("blocks, ray, classify, commutant") {
    auto j = json::parse(run({"blocks", "--p", "2", "--s", "1", "--m", "1"}).out);
    CHECK(j["A"] == json::parse(R"([["1/120","-1/120"]])"));
    CHECK(j["B"] == json::parse(R"([["1/6","3/20"]])"));
    CHECK(j["C"] == json::parse(R"([["-1/60","-3/200"]])"));
    CHECK(j["identities"] == true);
    CHECK(j["rankAB"] == 2);

    j = json::parse(run({"ray", "--p", "2", "--s", "1", "--m", "1"}).out);
    CHECK(j["weights"] == json::parse(R"(["2","2"])"));
    CHECK(j["poles"] == json::parse(R"(["-2","-6"])"));

    j = json::parse(run({"classify", "--p", "2", "--s", "1", "--m", "2"}).out);
    CHECK(j["prediction"] == "exists");

    const auto c = run({"commutant", "--p", "2", "--s", "1", "--m", "2"});
    CHECK(c.code == 0);
    j = json::parse(c.out);
    CHECK(j["K"] == 40);
    CHECK(j["verdict"] == "trivial");
    CHECK(j["dimension"] == 0);
    CHECK(j["ray_in_nullspace"] == false);

    const auto csv = run({"classify", "--p", "2", "--s", "1", "--m", "2", "--format", "csv"});
    CHECK(csv.out == "key,value\nm,2\np,2\nprediction,exists\ns,1\n");
    const auto pretty = run({"classify", "--p", "2", "--s", "1", "--m", "2", "--format", "pretty"});
    CHECK(pretty.out == "m: 2\np: 2\nprediction: exists\ns: 1\n");
}

TEST_CASE("verify") {
    const auto ok = run({"verify", "--suite", "case-formulas", "--p-max", "8"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["passed"] == true);

    const auto th7 = run({"verify", "--suite", "th7", "--p-max", "6", "--m-max", "6"});
    CHECK(th7.code == 1);
    const auto report = json::parse(th7.out);
    CHECK(report["cases_run"] == 105);
    CHECK(report["passed"] == false);
    CHECK(json::parse(th7.err)["error"] == "SuiteFailed");

    const auto pretty = run({"verify", "--suite", "th6", "--p-max", "2", "--alpha", "1/2",
                             "--format", "pretty"});
    CHECK(pretty.code == 0);
    CHECK(pretty.out.rfind("th6: PASS", 0) == 0);

    const auto csv = run({"verify", "--suite", "identity", "--q-max", "2", "--format", "csv"});
    CHECK(csv.out == "suite,case,passed,skipped,outcome,witness\nidentity,K=0,true,false,identity,\n"
                     "identity,K=1,true,false,identity,\nidentity,K=2,true,false,identity,\n");
}

TEST_CASE("errors and exit codes") {
    auto r = run({"mellin", "--symbol", "r^-1", "--z", "2"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["error"] == "NegativeExponent");

    r = run({"mellin", "--symbol", "r +", "--z", "2"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["error"] == "SyntaxError");

    r = run({"blocks", "--p", "1", "--s", "2", "--m", "1"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["error"] == "InvalidDegrees");

    r = run({"verify", "--suite", "bogus"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["error"] == "UnknownSuite");

    r = run({"mellin", "--symbol", "r", "--z", "2", "--bogus", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--bogus") != std::string::npos);

    r = run({"mellin", "--symbol", "r"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--z") != std::string::npos);

    r = run({"matrix", "--p", "1", "--symbol", "r", "--format", "xml"});
    CHECK(r.code == 2);

    r = run({});
    CHECK(r.code == 2);
}

TEST_CASE("output is byte-identical across runs and honors --out") {
    const std::vector<std::string> args = {"commutant", "--p", "3", "--s", "1", "--m", "1"};
    CHECK(run(args).out == run(args).out);

    const auto path = std::filesystem::temp_directory_path() / "htz_cli_test.json";
    std::filesystem::remove(path);
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path.string()});
    const auto r = run(with_out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run(args).out);
}

TEST_CASE("the installed binary returns the documented exit codes") {
    const std::string bin = HTZ_BINARY;
    CHECK(std::system((bin + " mellin --symbol 'r^3' --z 5 > /dev/null").c_str()) == 0);
    CHECK(WEXITSTATUS(std::system((bin + " mellin --symbol 'r^-2' --z 5 2> /dev/null").c_str())) == 1);
    CHECK(WEXITSTATUS(std::system((bin + " mellin --nope 2> /dev/null").c_str())) == 2);
}
