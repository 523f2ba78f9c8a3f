// Runs the thirteen acceptance criteria and prints one PASS/FAIL line each.

#include "rhopoly/cli.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace rhopoly;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const PrecisionContext& ctx120()
{
    static const auto c = PrecisionContext::make(120);
    return c;
}

Params generic() { return Params::parse("0.5", "1.5", "1", "1"); }

std::string sci(const Real& x) { return x.to_string(3); }

/// All residuals pass; detail carries the worst value/tol ratio.
Outcome reports_pass(const std::vector<IdentityReport>& reps)
{
    bool pass = true;
    int count = 0, skipped = 0;
    Real worst(0);
    std::string first_failure;
    for (const auto& rep : reps)
        for (const auto& r : rep.residuals) {
            if (r.skipped) {
                ++skipped;
                continue;
            }
            ++count;
            if (!r.pass && first_failure.empty())
                first_failure = rep.id + "/" + r.identity + " n=" + std::to_string(r.n) + " value=" + sci(r.value) +
                                " tol=" + sci(r.tol);
            pass = pass && r.pass;
            if (!r.lower_bound && !is_zero(r.tol)) worst = max(worst, abs(r.value) / r.tol);
        }
    std::string detail = std::to_string(count) + " residuals, worst value/tol " + sci(worst);
    if (skipped) detail += ", " + std::to_string(skipped) + " skipped";
    if (!first_failure.empty()) detail += "; first failure " + first_failure;
    return {pass && count > 0, detail};
}

Outcome orthonormality()
{
    const auto T = build_recurrence(generic(), 8, ctx120());
    PrecisionScope s(T.digits);
    const Real defect = orthonormality_defect(T);
    return {defect <= pow10(-40), "max defect " + sci(defect)};
}

Outcome laguerre_limit()
{
    const auto p = Params::parse("0", "1", "1", "0");
    const auto T = build_recurrence(p, 6, ctx120());
    PrecisionScope s(T.digits);
    Real worst(0);
    for (int n = 0; n <= 6; ++n) {
        worst = max(worst, abs(T.B[n] - (2 * n + 1)));
        worst = max(worst, abs(abs(T.A[n]) - n));
    }
    // a_0 = 1 / sqrt(Gamma(nu) Gamma(1 + alpha)) = 1
    worst = max(worst, abs(T.a[0] - 1));
    return {worst <= pow10(-40), "max deviation " + sci(worst)};
}

Outcome prudnikov_limit()
{
    PrecisionScope s(120);
    Real worst(0);
    for (const auto& p : {Params::parse("0.5", "1.5", "0", "1"), Params::parse("1", "0.5", "0", "2")}) {
        const auto table = build_moment_table(p, 8, ctx120());
        for (int n = 0; n <= 16; ++n) {
            const Real expected = tgamma(p.alpha + n + 1) * tgamma(p.alpha + p.nu + n + 1) * pow(p.t, -(p.alpha + n + 1));
            worst = max(worst, abs(table.mu[n] - expected) / expected);
        }
    }
    // the same moments by direct quadrature of x^{n+alpha} rho_nu(x t)
    const auto q = PrecisionContext::make(45, 1e-34);
    PrecisionScope qs(q.digits);
    Real worst_quad(0);
    const auto p = Params::parse("0.5", "1.5", "0", "1");
    for (int n = 0; n <= 4; ++n) {
        const Real m = moment(n, p, q);
        worst_quad = max(worst_quad, abs(moment_quadrature(n, p, q) - m) / m);
    }
    return {worst <= pow10(-40) && worst_quad <= pow10(-30),
            "relative " + sci(worst) + " for n <= 16, quadrature " + sci(worst_quad) + " for n <= 4"};
}

Outcome moment_cross_oracle()
{
    const auto q = PrecisionContext::make(45, 1e-34);
    PrecisionScope s(q.digits);
    Real worst(0);
    for (const auto& p : {generic(), Params::parse("0", "0.25", "2", "0.5"), Params::parse("1", "2.5", "0.5", "2")})
        for (int n = 0; n <= 8; ++n) {
            const Real c = moment_closed_form(n, p, q);
            worst = max(worst, abs(moment_quadrature(n, p, q) - c) / c);
        }
    return {worst <= pow10(-30), "max relative difference " + sci(worst)};
}

Outcome weight_ode()
{
    PrecisionScope s(120);
    Real worst(0);
    for (const auto& p : {generic(), Params::parse("1", "2", "0.5", "0.5"), Params::parse("0", "0", "2", "3")})
        for (const char* x : {"0.5", "1", "2"}) {
            const auto r = weight_ode_residual(p, Real(x), ctx120());
            worst = max(worst, r.relative());
        }
    return {worst <= pow10(-30), "max residual/scale " + sci(worst)};
}

RunConfig default_config()
{
    RunConfig cfg;
    cfg.digits = 120;
    cfg.n = 4;
    return cfg;
}

Outcome fd_identities()
{
    SuiteRunner runner(default_config());
    std::vector<IdentityReport> all;
    for (const char* suite : {"thm2", "thm3", "cor1", "cor3"}) {
        auto reps = runner.run(suite);
        all.insert(all.end(), reps.begin(), reps.end());
    }
    const auto g = build_grid(generic(), 1, ctx120(), {Axis::lambda});
    PrecisionScope s(g.ctx.digits);
    auto out = reports_pass(all);
    out.detail += ", FD bound " + sci(fd_tolerance(g, Real(1))) + " x scale";
    return out;
}

Outcome lemma2()
{
    SuiteRunner runner(default_config());
    auto out = reports_pass(runner.run("lemma2"));
    return out;
}

Outcome quasi_orthogonality()
{
    SuiteRunner runner(default_config());
    auto reps = runner.run("quasi");
    auto path = runner.run("section4");
    reps.insert(reps.end(), path.begin(), path.end());
    return reports_pass(reps);
}

Outcome reconstructions()
{
    const std::vector<Real> xs{Real("0.5"), Real(1), Real(2)};
    std::vector<IdentityReport> reps;
    reps.push_back(check_thm4_lambda(generic(), 3, xs, ctx120()));
    reps.push_back(check_thm4_t(generic(), 3, xs, ctx120()));
    return reports_pass(reps);
}

Outcome composition()
{
    const auto T = build_recurrence(generic(), 6, ctx120());
    TermIntegrator shared(T.params, ctx120());
    PrecisionScope s(T.digits);
    bool pass = true;
    Real worst_zero(0), worst_diag(0);
    for (int n = 0; n <= 6; ++n) {
        const auto rep = composition_orthogonality_check(T, n, ctx120(), &shared);
        pass = pass && rep.pass();
        for (const auto& r : rep.residuals) {
            if (r.identity == "composition-orthogonality")
                worst_zero = max(worst_zero, abs(r.value) / (r.tol / (100 * ctx120().tolerance())));
            if (r.identity == "composition-diagonal-value")
                // t = 1: the diagonal value is 1/a_n
                worst_diag = max(worst_diag, abs(r.value) * T.a[n]);
        }
    }
    pass = pass && worst_zero <= pow10(-30) && worst_diag <= pow10(-30);
    return {pass, "zero integrals/scale " + sci(worst_zero) + ", diagonal relative " + sci(worst_diag)};
}

Outcome ismail()
{
    double worst = 0;
    for (const char* nu : {"0", "0.5", "1"})
        for (const char* x : {"0.5", "1", "4"}) {
            PrecisionScope s(30);
            worst = std::max(worst, ismail_quotient_check(Real(nu), Real(x)).relative_difference());
        }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max relative difference %.3e", worst);
    return {worst <= 1e-6, buf};
}

Outcome path_toda()
{
    const auto g = build_grid(Params::parse("0.5", "1.5", "0.5", "0.5"), 4, ctx120(), {Axis::path});
    std::vector<IdentityReport> reps;
    bool below_level = true;
    PrecisionScope s(g.ctx.digits);
    for (int n = 0; n <= 3; ++n) {
        reps.push_back(check_section4(g, n));
        for (const auto& r : reps.back().residuals)
            if (r.identity.rfind("path-toda", 0) == 0) below_level = below_level && abs(r.value) <= pow10(-25);
    }
    reps.push_back(check_section4_endpoints(Real("0.5"), Real("1.5"), 4, ctx120(), pow10(-30)));
    reps.push_back(check_section4_endpoints(Real(0), Real(1), 4, ctx120(), pow10(-30)));
    auto out = reports_pass(reps);
    out.pass = out.pass && below_level;
    return out;
}

Outcome determinism()
{
    const std::vector<std::string> args{"verify", "--suite", "all"};
    std::ostringstream out1, err1, out2, err2;
    const int c1 = run_cli(args, out1, err1);
    const int c2 = run_cli(args, out2, err2);
    const bool same = out1.str() == out2.str();
    return {c1 == 0 && c2 == 0 && same && !out1.str().empty(),
            std::string("exit codes ") + std::to_string(c1) + "/" + std::to_string(c2) + ", " +
                std::to_string(out1.str().size()) + " bytes, " + (same ? "identical" : "different")};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"orthonormality at N = 8", orthonormality},
        {"Laguerre limit at t = 0", laguerre_limit},
        {"Prudnikov moments at lambda = 0", prudnikov_limit},
        {"moment closed form against quadrature", moment_cross_oracle},
        {"weight ODE on a 3x3 grid", weight_ode},
        {"parameter-derivative identities, n <= 4", fd_identities},
        {"normalization integrals and shifted-kernel integrals", lemma2},
        {"quasi-orthogonality along t and along the path", quasi_orthogonality},
        {"parameter-integral reconstructions, n <= 3", reconstructions},
        {"composition orthogonality, n <= 6", composition},
        {"Bessel-modulus integral for rho_nu/rho_{nu+1}", ismail},
        {"one-parameter family Toda equations and endpoints", path_toda},
        {"byte-identical verify reports", determinism},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << " ("
                  << o.detail << ")" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
