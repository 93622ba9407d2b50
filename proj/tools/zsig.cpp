// zsig: command-line front end.
//
//   zsig coeffs <n>
//   zsig eval <n> <a> <b> [--method horner|mobius|recursive|all]
//   zsig analyze <a> <b> <n> [--M <int>]
//   zsig scan --a-max <int> --n-max <int> [--jobs <int>] [--trial-bound <int>]
//             [--rho-budget <int>] [--ecm-curves <int>] [--progress]
//
// Every subcommand takes --format json|csv|text; the default comes from
// ZSIG_FORMAT, falling back to text (json for scan).
//
// Exit codes: 0 success, 1 exception or mismatch, 2 incomplete
// factorization, 3 invalid input.

#include "CLI11.hpp"
#include "zsig/report_io.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitInvalid = 3;

std::optional<zsig::OutputFormat> env_format() {
    const char* v = std::getenv("ZSIG_FORMAT");
    if (v == nullptr || *v == '\0') return std::nullopt;
    return zsig::parse_format(v);
}

zsig::OutputFormat resolve_format(const std::string& flag, zsig::OutputFormat fallback) {
    if (!flag.empty()) return zsig::parse_format(flag);
    return env_format().value_or(fallback);
}

int cmd_coeffs(std::uint64_t n, zsig::OutputFormat fmt) {
    if (n < 1) throw zsig::InvalidArgument("n must be >= 1");
    std::cout << zsig::render_coeffs(n, fmt);
    return 0;
}

int cmd_eval(std::uint64_t n, const std::string& a_str, const std::string& b_str, const std::string& method,
             zsig::OutputFormat fmt) {
    const zsig::Triple t(zsig::parse_bigint(a_str), zsig::parse_bigint(b_str), n);
    zsig::BigInt value;
    if (method == "horner") {
        value = zsig::eval_homogeneous(t);
    } else if (method == "mobius") {
        value = zsig::eval_mobius(n, t.a, t.b);
    } else if (method == "recursive") {
        value = zsig::eval_recursive(n, t.a, t.b);
    } else {
        value = zsig::eval_homogeneous(t);
        const zsig::BigInt m = zsig::eval_mobius(n, t.a, t.b);
        const zsig::BigInt r = zsig::eval_recursive(n, t.a, t.b);
        if (m != value || r != value) {
            std::cerr << "evaluators disagree: horner " << value << ", mobius " << m << ", recursive " << r << "\n";
            return 1;
        }
    }
    switch (fmt) {
        case zsig::OutputFormat::Json:
            std::cout << zsig::Json{{"n", n}, {"a", t.a.get_str()}, {"b", t.b.get_str()}, {"value", value.get_str()}}
                             .dump(2)
                      << "\n";
            break;
        case zsig::OutputFormat::Csv: std::cout << "n,a,b,value\n" << n << ',' << t.a << ',' << t.b << ',' << value << "\n"; break;
        case zsig::OutputFormat::Text: std::cout << value << "\n"; break;
    }
    return 0;
}

int cmd_analyze(const std::string& a_str, const std::string& b_str, std::uint64_t n, std::uint64_t M,
                zsig::OutputFormat fmt) {
    const zsig::Triple t(zsig::parse_bigint(a_str), zsig::parse_bigint(b_str), n);
    if (n < 2) throw zsig::InvalidArgument("n must be >= 2");
    if (M < 1) throw zsig::InvalidArgument("M must be >= 1");
    const zsig::ZsigReport r = zsig::analyze(t, {}, M);
    std::cout << zsig::render_report(r, fmt);
    if (!r.violations.empty()) return 1;
    if (!r.factorization_complete) return 2;
    return r.has_large ? 0 : 1;
}

int cmd_scan(zsig::ScanConfig config, bool progress) {
    zsig::ScanProgress cb;
    if (progress) {
        cb = [](std::size_t done, std::size_t total) {
            std::cerr << "\r" << done << "/" << total << " pairs" << (done == total ? "\n" : "") << std::flush;
        };
    }
    const zsig::ScanReport report = zsig::run_scan(config, cb);
    std::cout << zsig::render_scan(report, config.output_format);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zsigmondy and large Zsigmondy primes of coprime triples (a, b, n)"};
    app.require_subcommand(1);
    std::string format;

    std::uint64_t coeff_n = 0;
    auto* coeffs = app.add_subcommand("coeffs", "Coefficients of the n-th cyclotomic polynomial, ascending");
    coeffs->add_option("n", coeff_n)->required();
    coeffs->add_option("--format", format, "json, csv or text");

    std::uint64_t eval_n = 0;
    std::string eval_a, eval_b, method = "horner";
    auto* eval = app.add_subcommand("eval", "Homogeneous value Phi_n(a, b)");
    eval->add_option("n", eval_n)->required();
    eval->add_option("a", eval_a)->required();
    eval->add_option("b", eval_b)->required();
    eval->add_option("--method", method, "horner, mobius, recursive or all (cross-checked)")
        ->check(CLI::IsMember({"horner", "mobius", "recursive", "all"}));
    eval->add_option("--format", format, "json, csv or text");

    std::string an_a, an_b;
    std::uint64_t an_n = 0, an_M = 1;
    auto* analyze = app.add_subcommand("analyze", "Factor Phi_n(a, b) and classify its prime divisors");
    analyze->add_option("a", an_a)->required();
    analyze->add_option("b", an_b)->required();
    analyze->add_option("n", an_n)->required();
    analyze->add_option("--M", an_M, "largeness threshold p > M n + 1");
    analyze->add_option("--format", format, "json, csv or text");

    zsig::ScanConfig config;
    bool progress = false;
    auto* scan = app.add_subcommand("scan", "Exhaustive scan compared against the exception table");
    scan->add_option("--a-max", config.a_max)->required();
    scan->add_option("--n-max", config.n_max)->required();
    scan->add_option("--jobs", config.parallelism, "worker threads, 0 = all cores");
    scan->add_option("--trial-bound", config.trial_division_bound);
    scan->add_option("--rho-budget", config.rho_step_budget);
    scan->add_option("--ecm-curves", config.ecm_curves);
    scan->add_flag("--progress", progress, "progress on stderr");
    scan->add_option("--format", format, "json, csv or text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*coeffs) return cmd_coeffs(coeff_n, resolve_format(format, zsig::OutputFormat::Text));
        if (*eval) return cmd_eval(eval_n, eval_a, eval_b, method, resolve_format(format, zsig::OutputFormat::Text));
        if (*analyze) return cmd_analyze(an_a, an_b, an_n, an_M, resolve_format(format, zsig::OutputFormat::Text));
        config.output_format = resolve_format(format, zsig::OutputFormat::Json);
        return cmd_scan(config, progress);
    } catch (const zsig::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
