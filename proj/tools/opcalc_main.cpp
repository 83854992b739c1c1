// Command-line front end: norms, decompositions, tensor computations, the
// shift counterexample, and the property verification suite.
//
// Exit codes: 0 success, 2 usage/parse error, 3 numerical failure,
// 4 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opcalc/io.hpp"
#include "opcalc/nuclear.hpp"
#include "opcalc/schatten.hpp"
#include "opcalc/tensor.hpp"
#include "opcalc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

using nlohmann::json;

opcalc::Tolerances env_tolerances() {
    opcalc::Tolerances tol;
    if (const char* env = std::getenv("OPCALC_TOL")) {
        const double v = std::strtod(env, nullptr);
        if (v > 0.0) tol.algebraic = v;
    }
    return tol;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_norms(const std::string& input, const std::vector<std::string>& ps, bool as_json) {
    const opcalc::Matrix t = opcalc::read_matrix_file(input);
    const opcalc::Tolerances tol = env_tolerances();
    json out;
    for (const std::string& p : ps) {
        double value;
        if (p == "inf") {
            value = opcalc::operator_norm(t, tol);
        } else {
            const double pv = std::strtod(p.c_str(), nullptr);
            if (!(pv > 0.0)) throw opcalc::InvalidPError("p: expected a positive number or 'inf'");
            value = opcalc::schatten_norm(t, pv, tol);
        }
        out[p] = value;
    }
    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        for (const std::string& p : ps) std::cout << p << ": " << format_double(out[p]) << "\n";
    }
    return kExitOk;
}

int run_decompose(const std::string& input, const std::string& kind, const std::string& out_prefix,
                  bool as_json) {
    const opcalc::Matrix t = opcalc::read_matrix_file(input);
    const opcalc::Tolerances tol = env_tolerances();
    json combined;
    std::vector<std::pair<std::string, json>> files;

    if (kind == "svd") {
        const opcalc::SvdFactors s = opcalc::svd(t, tol);
        combined = opcalc::svd_factors_to_json(s);
        files = {{"U", opcalc::matrix_to_json(s.u)},
                 {"sigma", json{{"singular_values", s.singular_values}}},
                 {"V", opcalc::matrix_to_json(s.v)}};
    } else if (kind == "polar") {
        const opcalc::PolarFactors p = opcalc::polar(t, tol);
        combined = opcalc::polar_factors_to_json(p);
        files = {{"W", opcalc::matrix_to_json(p.w)}, {"P", opcalc::matrix_to_json(p.p)}};
    } else if (kind == "abs") {
        const opcalc::Matrix a = opcalc::abs_op(t, tol);
        combined = opcalc::matrix_to_json(a);
        files = {{"abs", combined}};
    } else if (kind == "nuclear-rep") {
        const opcalc::NuclearRep rep = opcalc::optimal_rep(t, tol);
        combined = opcalc::nuclear_rep_to_json(rep);
        combined["cost"] = opcalc::rep_cost(rep);
        files = {{"rep", combined}};
    } else if (kind == "factor-hs") {
        const auto [a, b] = opcalc::factor_hs(t, tol);
        combined = json{{"A", opcalc::matrix_to_json(a)}, {"B", opcalc::matrix_to_json(b)}};
        files = {{"A", opcalc::matrix_to_json(a)}, {"B", opcalc::matrix_to_json(b)}};
    } else {
        std::cerr << "unknown decomposition kind: " << kind << "\n";
        return kExitUsage;
    }

    if (!out_prefix.empty()) {
        for (const auto& [tag, payload] : files)
            opcalc::write_json_file(out_prefix + "_" + tag + ".json", payload);
    }
    if (as_json || out_prefix.empty()) std::cout << combined.dump(2) << "\n";
    return kExitOk;
}

int run_tensor(const std::string& op, const std::string& input, const std::string& out_path,
               bool as_json) {
    const opcalc::TensorElement f = opcalc::tensor_element_from_json(opcalc::read_json_file(input));
    const opcalc::Tolerances tol = env_tolerances();
    if (op == "pnorm" || op == "inorm") {
        const double value = op == "pnorm" ? opcalc::projective_norm(f, tol)
                                           : opcalc::injective_norm(f, tol);
        if (as_json)
            std::cout << json{{op, value}}.dump() << "\n";
        else
            std::cout << format_double(value) << "\n";
        return kExitOk;
    }
    // kmap
    const opcalc::Matrix k = opcalc::k_map(f);
    const json payload = opcalc::matrix_to_json(k);
    if (!out_path.empty()) opcalc::write_json_file(out_path, payload);
    if (as_json || out_path.empty()) std::cout << payload.dump(2) << "\n";
    return kExitOk;
}

int run_verify(const opcalc::SuiteConfig& config, const std::string& report_path,
               const std::string& csv_path, bool as_json) {
    const opcalc::VerificationReport report = opcalc::run_suite(config);
    const json payload = opcalc::report_to_json(report);
    if (!report_path.empty()) {
        opcalc::write_json_file(report_path, payload);
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw opcalc::Error("cannot open " + csv_path + " for writing");
        out << opcalc::report_to_csv(report);
    }
    if (as_json) {
        std::cout << payload.dump(2) << "\n";
    } else if (report_path.empty()) {
        for (const auto& rec : report.records) {
            std::cout << (rec.failures == 0 ? "PASS" : "FAIL") << " " << rec.property_id << " ["
                      << rec.paper_anchor << "] trials=" << rec.trials_run
                      << " failures=" << rec.failures << "\n";
        }
        std::cout << (report.pass ? "suite: PASS" : "suite: FAIL") << "\n";
    }
    return report.pass ? kExitOk : kExitVerification;
}

int run_counterexample(std::size_t dim, bool as_json) {
    const opcalc::ShiftRecord rec = opcalc::shift_report(dim, env_tolerances());
    json out;
    out["n"] = rec.n;
    out["abs_diag_sum"] = rec.abs_diag_sum;
    out["trace_norm"] = rec.trace_norm;
    if (std::isfinite(rec.ratio))
        out["ratio"] = rec.ratio;
    else
        out["ratio"] = "inf";
    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "n: " << rec.n << "\nabs_diag_sum: " << format_double(rec.abs_diag_sum)
                  << "\ntrace_norm: " << format_double(rec.trace_norm)
                  << "\nratio: " << (std::isfinite(rec.ratio) ? format_double(rec.ratio) : "inf")
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional operator calculus: Schatten norms, polar and nuclear "
                 "decompositions, tensor crossnorms, and a seeded verification suite"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON on stdout");

    // norms
    auto* norms = app.add_subcommand("norms", "Schatten norms of a matrix");
    std::string norms_input;
    std::vector<std::string> norms_p{"1", "2", "inf"};
    norms->add_option("input", norms_input, "matrix JSON file")->required();
    norms->add_option("--p", norms_p, "norm orders (positive reals or 'inf')")->delimiter(',');

    // decompose
    auto* dec = app.add_subcommand("decompose", "matrix decompositions");
    std::string dec_input, dec_kind, dec_out;
    dec->add_option("input", dec_input, "matrix JSON file")->required();
    dec->add_option("--kind", dec_kind, "svd | polar | abs | nuclear-rep | factor-hs")
        ->required()
        ->check(CLI::IsMember({"svd", "polar", "abs", "nuclear-rep", "factor-hs"}));
    dec->add_option("--out", dec_out, "output path prefix (writes <prefix>_<factor>.json)");

    // tensor
    auto* tensor = app.add_subcommand("tensor", "tensor element computations");
    tensor->require_subcommand(1);
    std::string tensor_input, tensor_out;
    auto* pnorm = tensor->add_subcommand("pnorm", "projective norm");
    auto* inorm = tensor->add_subcommand("inorm", "injective norm");
    auto* kmap = tensor->add_subcommand("kmap", "assemble the represented operator");
    for (auto* sub : {pnorm, inorm, kmap})
        sub->add_option("input", tensor_input, "tensor element JSON file")->required();
    kmap->add_option("--out", tensor_out, "output matrix JSON path");

    // verify
    auto* verify = app.add_subcommand("verify", "run the property suite");
    opcalc::SuiteConfig config;
    std::string report_path, csv_path;
    std::vector<std::size_t> dims{2, 4, 8};
    std::vector<std::string> properties;
    verify->add_option("--dims", dims, "ensemble dimensions")->delimiter(',');
    verify->add_option("--trials", config.trials, "trials per property and dimension");
    verify->add_option("--seed", config.seed, "ensemble seed");
    verify->add_option("--tol", config.tol_algebraic, "algebraic tolerance");
    verify->add_option("--tol-stochastic", config.tol_stochastic, "stochastic tolerance");
    verify->add_option("--properties", properties, "property ids (default: all)")->delimiter(',');
    verify->add_option("--report", report_path, "write the JSON report to this path");
    verify->add_option("--csv", csv_path, "write a CSV summary to this path");
    verify->add_option("--threads", config.threads, "worker threads (0 = auto)");

    // counterexample
    auto* counter = app.add_subcommand("counterexample", "named counterexamples");
    std::string counter_kind;
    std::size_t counter_dim = 0;
    counter->add_option("kind", counter_kind, "counterexample name (shift)")
        ->required()
        ->check(CLI::IsMember({"shift"}));
    counter->add_option("--dim", counter_dim, "truncation dimension (>= 2)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*norms) return run_norms(norms_input, norms_p, as_json);
        if (*dec) return run_decompose(dec_input, dec_kind, dec_out, as_json);
        if (*tensor) {
            const std::string op = (*pnorm) ? "pnorm" : (*inorm) ? "inorm" : "kmap";
            return run_tensor(op, tensor_input, tensor_out, as_json);
        }
        if (*verify) {
            config.dims = dims;
            config.properties = properties;
            if (const char* env = std::getenv("OPCALC_TOL")) {
                const double v = std::strtod(env, nullptr);
                if (v > 0.0 && !verify->count("--tol")) config.tol_algebraic = v;
            }
            return run_verify(config, report_path, csv_path, as_json);
        }
        if (*counter) {
            if (counter_dim < 2) {
                std::cerr << "counterexample: --dim must be >= 2\n";
                return kExitUsage;
            }
            return run_counterexample(counter_dim, as_json);
        }
    } catch (const opcalc::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const opcalc::UnknownPropertyError& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUsage;
    } catch (const opcalc::NTooSmallError& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUsage;
    } catch (const opcalc::InvalidPError& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUsage;
    } catch (const opcalc::Error& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
