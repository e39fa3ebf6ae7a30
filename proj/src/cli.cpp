#include "htz/cli.hpp"

#include "htz/commutant.hpp"
#include "htz/error.hpp"
#include "htz/operator.hpp"
#include "htz/symbols.hpp"
#include "htz/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace htz {

namespace {

using nlohmann::json;

struct Options {
    int p = 0;
    int s = 0;
    int m = 0;
    int q = 0;
    int K = 40;
    int p_max = 6;
    int m_max = 6;
    int q_max = 64;
    std::string z;
    std::string alpha;
    std::string symbol;
    std::string left_phi;
    std::string right_phi;
    std::string suite;
    std::optional<double> tol;
    bool check_toeplitz = false;
    std::string format = "json";
    std::string out_path;
};

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_output(const json& result, const std::optional<GridReport>& report,
                          const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << result.dump(2) << '\n';
    } else if (format == "csv") {
        if (report) {
            os << to_csv(*report);
        } else if (result.contains("entries") || (result.contains("matrix"))) {
            const json& m = result.contains("entries") ? result : result["matrix"];
            os << "row,col,value\n";
            for (const auto& e : m["entries"]) {
                os << e["row"].get<int>() << ',' << e["col"].get<int>() << ','
                   << e["value"].get<std::string>() << '\n';
            }
        } else {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(result, "", rows);
            os << "key,value\n";
            for (const auto& [k, v] : rows) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
        }
    } else {
        if (report) {
            os << report->suite << ": " << (report->passed() ? "PASS" : "FAIL") << " ("
               << report->cases_run() << " cases, " << report->failure_count() << " failures)\n";
            for (const auto& c : report->cases) {
                os << "  [" << (c.skipped ? "SKIP" : c.passed ? "ok" : "FAIL") << "] " << c.label
                   << ": " << c.outcome;
                if (!c.passed) os << " -- " << c.witness;
                os << '\n';
            }
        } else {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(result, "", rows);
            for (const auto& [k, v] : rows) os << k << ": " << v << '\n';
        }
    }
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact calculus for quasihomogeneous Toeplitz operators on the harmonic Bergman space", "htz"};
    app.require_subcommand(1);
    Options o;

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "json | csv | pretty")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--out", o.out_path, "output path (default: standard output)");
    };
    const auto add_psm = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "degree of the first operator")->required();
        sub->add_option("--s", o.s, "degree of the second operator")->required();
        sub->add_option("--m", o.m, "phi = r^{(2m+1)p}")->required()->check(CLI::NonNegativeNumber);
    };
    const auto add_K = [&](CLI::App* sub) {
        sub->add_option("--K", o.K, "truncation bound")->check(CLI::NonNegativeNumber);
    };

    auto* mellin = app.add_subcommand("mellin", "exact Mellin transform of a radial symbol");
    mellin->add_option("--symbol", o.symbol)->required();
    mellin->add_option("--z", o.z, "rational argument")->required();
    mellin->add_option("--tol", o.tol, "also run the quadrature oracle at this tolerance");
    add_format(mellin);

    auto* parse = app.add_subcommand("parse", "parse and canonicalize a radial symbol");
    parse->add_option("--symbol", o.symbol)->required();
    add_format(parse);

    auto* apply_cmd = app.add_subcommand("apply", "image of a basis element");
    apply_cmd->add_option("--p", o.p)->required();
    apply_cmd->add_option("--symbol", o.symbol)->required();
    apply_cmd->add_option("--q", o.q)->required();
    add_format(apply_cmd);

    auto* matrix = app.add_subcommand("matrix", "truncated operator matrix");
    matrix->add_option("--p", o.p)->required();
    matrix->add_option("--symbol", o.symbol)->required();
    add_K(matrix);
    add_format(matrix);

    auto* product = app.add_subcommand("product", "T_{e^{ip theta} left} T_{e^{is theta} right}");
    product->add_option("--p", o.p)->required();
    product->add_option("--s", o.s);
    product->add_option("--left-phi", o.left_phi)->required();
    product->add_option("--right-phi", o.right_phi)->required();
    product->add_flag("--check-toeplitz", o.check_toeplitz);
    add_K(product);
    add_format(product);

    auto* comm = app.add_subcommand("commutator", "commutator of two quasihomogeneous operators");
    comm->add_option("--p", o.p)->required();
    comm->add_option("--s", o.s);
    comm->add_option("--left-phi", o.left_phi)->required();
    comm->add_option("--right-phi", o.right_phi)->required();
    add_K(comm);
    add_format(comm);

    auto* blocks = app.add_subcommand("blocks", "blocks A, B, C of the commutation system");
    add_psm(blocks);
    add_format(blocks);

    auto* ray = app.add_subcommand("ray", "partial-fraction ray of the Gamma ratio");
    add_psm(ray);
    add_format(ray);

    auto* commutant = app.add_subcommand("commutant", "solve for commutants of T_{e^{ip theta} r^n}");
    add_psm(commutant);
    add_K(commutant);
    add_format(commutant);

    auto* classify = app.add_subcommand("classify", "predicted verdict from p >= m+1");
    add_psm(classify);
    add_format(classify);

    auto* verify = app.add_subcommand("verify", "run a verification suite over a parameter grid");
    verify->add_option("--suite", o.suite)->required();
    verify->add_option("--p-max", o.p_max)->check(CLI::NonNegativeNumber);
    verify->add_option("--m-max", o.m_max)->check(CLI::NonNegativeNumber);
    verify->add_option("--q-max", o.q_max)->check(CLI::NonNegativeNumber);
    verify->add_option("--alpha", o.alpha, "restrict the th6 suite to one exponent");
    add_K(verify);
    add_format(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    json result;
    std::optional<GridReport> report;
    try {
        if (*mellin) {
            const RadialSymbol f = parse_radial(o.symbol);
            const Rational z = parse_rational(o.z);
            result["value"] = to_string(mellin_eval(f, z));
            if (o.tol) {
                result["quadrature"] = mellin_quadrature(f, z.get_d(), *o.tol);
                result["tol"] = *o.tol;
            }
        } else if (*parse) {
            const RadialSymbol f = parse_radial(o.symbol);
            result = {{"symbol", to_json(f)}, {"canonical", render(f)}};
        } else if (*apply_cmd) {
            const auto [idx, coeff] = apply(o.p, parse_radial(o.symbol), BasisIndex{o.q});
            result = {{"index", idx.q}, {"value", to_string(coeff)}};
        } else if (*matrix) {
            result = to_json(build_matrix({o.p, parse_radial(o.symbol)}, o.K));
        } else if (*product) {
            const RadialSymbol left = parse_radial(o.left_phi);
            const RadialSymbol right = parse_radial(o.right_phi);
            const auto prod = compose(build_matrix({o.p, left}, o.K), build_matrix({o.s, right}, o.K));
            result["matrix"] = to_json(prod);
            if (o.check_toeplitz) result["toeplitz"] = to_json(is_toeplitz(prod, {left, right}));
        } else if (*comm) {
            const auto c = commutator(build_matrix({o.p, parse_radial(o.left_phi)}, o.K),
                                      build_matrix({o.s, parse_radial(o.right_phi)}, o.K));
            result["matrix"] = to_json(c);
            const auto nonzero = first_exact_nonzero(c);
            result["zero_on_exact_region"] = !nonzero;
            if (nonzero) {
                result["witness"] = {{"row", nonzero->first.first},
                                     {"col", nonzero->first.second},
                                     {"value", to_string(nonzero->second)}};
            }
        } else if (*blocks) {
            const auto sys = build_blocks(o.p, o.s, o.m);
            result = to_json(sys);
            result["identities"] = check_block_identities(sys);
            result["rankAB"] = rank(sys.AB());
            result["rankABC"] = rank(sys.ABC());
        } else if (*ray) {
            result = to_json(partial_fraction_ray(o.p, o.s, o.m));
        } else if (*commutant) {
            result = to_json(solve_commutant(o.p, o.s, o.m, o.K));
        } else if (*classify) {
            result = {{"p", o.p},
                      {"s", o.s},
                      {"m", o.m},
                      {"prediction", std::string(to_string(classify_th7(o.p, o.s, o.m)))}};
        } else if (*verify) {
            GridConfig config{o.suite, o.p_max, o.m_max, o.q_max, o.K, std::nullopt};
            if (!o.alpha.empty()) config.alpha = parse_rational(o.alpha);
            report = run_grid(config);
            result = to_json(*report);
        }
    } catch (const Error& e) {
        err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }

    const std::string text = render_output(result, report, o.format);
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << json{{"error", "IOError"}, {"message", "cannot open " + o.out_path}}.dump() << '\n';
            return 1;
        }
        file << text;
    }

    if (report && !report->passed()) {
        err << json{{"error", "SuiteFailed"},
                    {"message", report->suite + ": " + std::to_string(report->failure_count()) +
                                    " of " + std::to_string(report->cases_run()) + " cases failed"}}
                   .dump()
            << '\n';
        return 1;
    }
    return 0;
}

}  // namespace htz
