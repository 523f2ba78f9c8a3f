#ifndef RHOPOLY_CLI_HPP
#define RHOPOLY_CLI_HPP

// Command-line front end: rho, table, verify, quadrule.
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage or domain error.

#include "rhopoly/io.hpp"
#include "rhopoly/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace rhopoly {

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

namespace detail {

struct CliState {
    RunConfig cfg;
    std::string nu_rho = "0.5";
    std::string x_rho = "1";
    std::string route = "laplace";
    std::string format = "json";
    std::string out_path;
    std::string config_path;
    bool timing = false;
};

/// Fills options that were not given on the command line from a JSON object
/// whose keys mirror the long flag names.
inline void apply_config_file(CLI::App& sub, CliState& s)
{
    if (s.config_path.empty()) return;
    std::ifstream in(s.config_path);
    if (!in)
        throw DomainError("cannot read config file " + s.config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config file: ") + e.what());
    }
    if (!j.is_object())
        throw DomainError("config file must hold a JSON object");
    auto given = [&](const std::string& name) {
        const auto* opt = sub.get_option_no_throw("--" + name);
        return opt != nullptr && opt->count() > 0;
    };
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const auto& v = it.value();
        if (given(key)) continue;
        try {
            if (key == "alpha") s.cfg.alpha = text(v);
            else if (key == "nu") s.cfg.nu = text(v), s.nu_rho = text(v);
            else if (key == "lambda") s.cfg.lambda = text(v);
            else if (key == "t") s.cfg.t = text(v);
            else if (key == "x") s.x_rho = text(v);
            else if (key == "N") s.cfg.N = v.get<int>();
            else if (key == "n") s.cfg.n = v.get<int>();
            else if (key == "digits") s.cfg.digits = v.get<int>();
            else if (key == "tol") s.cfg.tol = v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>();
            else if (key == "suite") s.cfg.suite = v.get<std::string>();
            else if (key == "route") s.route = v.get<std::string>();
            else if (key == "format") s.format = v.get<std::string>();
            else if (key == "out") s.out_path = v.get<std::string>();
            else if (key == "timing") s.timing = v.get<bool>();
            else throw DomainError("config file: unknown key " + key);
        } catch (const nlohmann::json::exception& e) {
            throw DomainError("config file: bad value for " + key + ": " + e.what());
        } catch (const std::invalid_argument&) {
            throw DomainError("config file: bad value for " + key);
        }
    }
}

inline void add_params(CLI::App* sub, CliState& s)
{
    sub->add_option("--alpha", s.cfg.alpha, "alpha > -1")->capture_default_str();
    sub->add_option("--nu", s.cfg.nu, "nu >= 0")->capture_default_str();
    sub->add_option("--lambda", s.cfg.lambda, "lambda >= 0")->capture_default_str();
    sub->add_option("--t", s.cfg.t, "t >= 0")->capture_default_str();
}

inline void add_precision(CLI::App* sub, CliState& s)
{
    sub->add_option("--digits", s.cfg.digits, "working decimal digits (default: $RHOPOLY_DIGITS or 120)");
    sub->add_option("--tol", s.cfg.tol, "target tolerance (default: 10^-(digits-10))");
    sub->add_option("--config", s.config_path, "JSON file with option values");
}

/// Writes to --out if given, else to `out`.
template <class W>
void emit(const std::string& path, std::ostream& out, W&& write)
{
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw DomainError("cannot write " + path);
    write(f);
}

inline int cmd_rho(const CliState& s, std::ostream& out)
{
    const auto ctx = s.cfg.context();
    PrecisionScope scope(ctx.digits);
    const Real nu(s.nu_rho), x(s.x_rho);
    Real value;
    if (is_zero(x)) {
        if (!(nu > 0))
            throw DomainError("rho: rho_nu(0) is finite only for nu > 0");
        value = tgamma(nu);
    } else {
        if (!(x > 0))
            throw DomainError("rho: x must be >= 0");
        RhoRoute route;
        if (s.route == "laplace") route = RhoRoute::laplace_integral;
        else if (s.route == "bessel") route = RhoRoute::bessel_k;
        else if (s.route == "recurrence") route = RhoRoute::recurrence;
        else throw DomainError("rho: unknown route " + s.route);
        value = rho_point(nu, x, route, ctx).value;
    }
    emit(s.out_path, out, [&](std::ostream& os) { os << decimal(value, ctx.digits) << '\n'; });
    return exit_ok;
}

inline int cmd_table(const CliState& s, std::ostream& out)
{
    const auto ctx = s.cfg.context();
    PrecisionScope scope(ctx.digits);
    const auto T = build_recurrence(s.cfg.params(), s.cfg.N, ctx);
    PrecisionScope ts(T.digits);
    emit(s.out_path, out, [&](std::ostream& os) {
        if (s.format == "csv") write_csv(os, T);
        else os << to_json(T, ctx.tol).dump(2) << '\n';
    });
    return exit_ok;
}

inline int cmd_quadrule(const CliState& s, std::ostream& out)
{
    const auto ctx = s.cfg.context();
    PrecisionScope scope(ctx.digits);
    const auto p = s.cfg.params();
    const auto T = build_recurrence(p, s.cfg.N, ctx);
    const auto rule = gauss_rule(T, s.cfg.N);
    PrecisionScope ts(T.digits);
    emit(s.out_path, out, [&](std::ostream& os) {
        if (s.format == "csv") write_csv(os, rule);
        else os << to_json(rule, p).dump(2) << '\n';
    });
    return exit_ok;
}

inline int cmd_verify(const CliState& s, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<IdentityReport> reports;
    {
        SuiteRunner runner(s.cfg);
        reports = runner.run(s.cfg.suite);
    }
    PrecisionScope scope(s.cfg.digits);
    Json report = verification_report(s.cfg, reports);
    if (s.timing)
        report["wallclock"] = decimal(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    emit(s.out_path, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    const bool pass = report["pass"].get<bool>();
    if (!pass) {
        for (const auto& r : reports)
            for (const auto& res : r.residuals)
                if (!res.pass)
                    err << "FAIL " << r.id << ' ' << res.identity << " n=" << res.n
                        << (res.m ? " m=" + std::to_string(*res.m) : "") << " value=" << res.value.to_string(6)
                        << " tol=" << res.tol.to_string(6) << '\n';
    }
    return pass ? exit_ok : exit_failure;
}

} // namespace detail

/// Runs the command line given as arguments without the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    detail::CliState s;
    CLI::App app{"Orthogonal polynomials for the weight x^alpha e^{-lambda x} rho_nu(x t)", "rhopoly"};
    app.require_subcommand(1);

    auto* rho = app.add_subcommand("rho", "evaluate rho_nu(x) = 2 x^{nu/2} K_nu(2 sqrt x)");
    rho->add_option("--nu", s.nu_rho, "order")->capture_default_str();
    rho->add_option("--x", s.x_rho, "argument >= 0")->capture_default_str();
    rho->add_option("--route", s.route, "laplace | bessel | recurrence")->capture_default_str();
    detail::add_precision(rho, s);
    rho->add_option("--out", s.out_path, "output file");

    auto* table = app.add_subcommand("table", "moments, recurrence coefficients and polynomial coefficients");
    detail::add_params(table, s);
    table->add_option("--N", s.cfg.N, "highest degree")->capture_default_str();
    detail::add_precision(table, s);
    table->add_option("--format", s.format, "json | csv")->capture_default_str();
    table->add_option("--out", s.out_path, "output file");

    auto* verify = app.add_subcommand("verify", "run identity checks and write a JSON report");
    detail::add_params(verify, s);
    verify->add_option("--suite", s.cfg.suite, "kernel | lemma1 | lemma2 | thm2 | thm3 | cor1 | cor3 | thm4 | thm5 | quasi | section4 | all")
        ->capture_default_str();
    verify->add_option("--n", s.cfg.n, "highest degree checked")->capture_default_str();
    detail::add_precision(verify, s);
    verify->add_option("--out", s.out_path, "output file");
    verify->add_flag("--timing", s.timing, "add elapsed wall time to the report");

    auto* quadrule = app.add_subcommand("quadrule", "N-point Gauss rule for the weight");
    detail::add_params(quadrule, s);
    quadrule->add_option("--N", s.cfg.N, "number of nodes")->capture_default_str();
    detail::add_precision(quadrule, s);
    quadrule->add_option("--format", s.format, "json | csv")->capture_default_str();
    quadrule->add_option("--out", s.out_path, "output file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const auto* digits_opt = sub->get_option_no_throw("--digits");
        const bool digits_given = digits_opt && digits_opt->count() > 0;
        if (!digits_given) s.cfg.digits = default_digits();
        detail::apply_config_file(*sub, s);
        if (s.format != "json" && s.format != "csv")
            throw DomainError("format must be json or csv");
        if (sub == verify &&
            std::find(suite_names().begin(), suite_names().end(), s.cfg.suite) == suite_names().end())
            throw DomainError("unknown suite: " + s.cfg.suite);
        if (sub == rho) return detail::cmd_rho(s, out);
        if (sub == table) return detail::cmd_table(s, out);
        if (sub == quadrule) return detail::cmd_quadrule(s, out);
        return detail::cmd_verify(s, out, err);
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace rhopoly

#endif // RHOPOLY_CLI_HPP
