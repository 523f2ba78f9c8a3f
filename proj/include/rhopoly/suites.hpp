#ifndef RHOPOLY_SUITES_HPP
#define RHOPOLY_SUITES_HPP

// Named verification suites over one parameter point.

#include "rhopoly/calculus.hpp"
#include "rhopoly/composition.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rhopoly {

/// Everything that determines a run. Parameters are kept as the decimal
/// strings they were given in.
struct RunConfig {
    std::string alpha = "0.5";
    std::string nu = "1.5";
    std::string lambda = "1";
    std::string t = "1";
    int N = 8;      // table depth for `table` and `quadrule`
    int n = 4;      // highest degree checked by `verify`
    int digits = 120;
    std::optional<double> tol;
    std::string suite = "all";

    Params params() const
    {
        PrecisionScope scope(digits);
        return Params::parse(alpha, nu, lambda, t);
    }

    PrecisionContext context() const { return PrecisionContext::make(digits, tol); }
};

/// Default working digits: RHOPOLY_DIGITS if set, else 120.
inline int default_digits()
{
    if (const char* env = std::getenv("RHOPOLY_DIGITS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw DomainError("RHOPOLY_DIGITS is not an integer");
        }
    }
    return 120;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"kernel", "lemma1", "lemma2", "thm2",    "thm3",     "cor1",
                                                "cor3",   "thm4",   "thm5",   "quasi",   "section4", "all"};
    return names;
}

class SuiteRunner {
public:
    explicit SuiteRunner(RunConfig cfg)
        : cfg_(std::move(cfg)), ctx_(cfg_.context()), scope_(ctx_.digits), p_(cfg_.params())
    {
        if (cfg_.n < 0 || cfg_.n > 10)
            throw DomainError("verify: n must lie in [0, 10]");
    }

    std::vector<IdentityReport> run(const std::string& suite)
    {
        static const std::map<std::string, void (SuiteRunner::*)()> table{
            {"kernel", &SuiteRunner::kernel}, {"lemma1", &SuiteRunner::lemma1}, {"lemma2", &SuiteRunner::lemma2},
            {"thm2", &SuiteRunner::thm2},     {"thm3", &SuiteRunner::thm3},     {"cor1", &SuiteRunner::cor1},
            {"cor3", &SuiteRunner::cor3},     {"thm4", &SuiteRunner::thm4},     {"thm5", &SuiteRunner::thm5},
            {"quasi", &SuiteRunner::quasi},   {"section4", &SuiteRunner::section4}};
        out_.clear();
        if (suite == "all") {
            for (const auto& name : suite_names())
                if (name != "all") (this->*table.at(name))();
        } else {
            auto it = table.find(suite);
            if (it == table.end())
                throw DomainError("unknown suite: " + suite);
            (this->*it->second)();
        }
        return std::move(out_);
    }

private:
    RunConfig cfg_;
    PrecisionContext ctx_;
    PrecisionScope scope_;
    Params p_;
    std::unique_ptr<ParamGridTables> grid_;
    std::vector<IdentityReport> out_;

    int n() const { return cfg_.n; }

    /// 10^{-(digits-20)}: the tolerance for exact combinations of table entries.
    Real exact_tol() const { return pow10(-(ctx_.digits - 20)); }

    static PrecisionContext quadrature_context() { return PrecisionContext::make(45, 1e-34); }

    /// Grid in lambda and t around the configured point, depth n+1.
    const ParamGridTables& grid()
    {
        if (!grid_)
            grid_ = std::make_unique<ParamGridTables>(build_grid(p_, n() + 1, ctx_, {Axis::lambda, Axis::t}));
        return *grid_;
    }

    void push(IdentityReport r) { out_.push_back(std::move(r)); }

    void skip(const std::string& id, const std::string& why)
    {
        IdentityReport r{id, p_, {}};
        r.residuals.push_back(make_skipped(id, 0, why));
        push(std::move(r));
    }

    void kernel()
    {
        const std::vector<Real> xs{Real(1) / 2, Real(1), Real(4)};
        const Real tol = 1000 * ctx_.tolerance();
        IdentityReport values{"kernel-values", p_, {}};
        for (const auto& x : xs) {
            const Real closed = sqrt(pi()) * exp(-2 * sqrt(x));
            values.residuals.push_back(make_residual("rho-half-closed-form", 0, std::nullopt,
                                                     rho_eval(Real(1) / 2, x, ctx_) - closed, tol * closed,
                                                     "x = " + x.to_string(6)));
        }
        for (const auto& x : xs) {
            const Real up = rho_eval(p_.nu + 1, x, ctx_);
            const Real scale = max(up, max(abs(p_.nu * rho_eval(p_.nu, x, ctx_)), x * rho_eval(p_.nu - 1, x, ctx_)));
            values.residuals.push_back(make_residual("rho-index-recurrence", 0, std::nullopt,
                                                     rho_recurrence_residual(p_.nu, x, ctx_), tol * scale,
                                                     "x = " + x.to_string(6)));
        }
        for (int k = 1; k <= 3; ++k) {
            const auto d = rho_derivative_check(p_.nu, k, Real(1), ctx_);
            values.residuals.push_back(make_residual("rho-derivative-lowers-index", k, std::nullopt, d.residual, d.bound));
        }
        for (int k = 0; k <= 3; ++k) {
            const auto c = laguerre_product_check(p_.nu, k, Real(1), ctx_);
            values.residuals.push_back(
                make_residual("laguerre-product-integral", k, std::nullopt, c.residual, tol * c.scale));
        }
        push(std::move(values));

        IdentityReport quotient{"kernel-quotient", p_, {}};
        for (const char* nu : {"0", "0.5", "1"})
            for (const char* x : {"0.5", "1", "4"}) {
                const auto q = ismail_quotient_check(Real(nu), Real(x));
                quotient.residuals.push_back(make_residual("quotient-integral", 0, std::nullopt,
                                                           Real(q.relative_difference()), Real(1e-6),
                                                           std::string("nu = ") + nu + ", x = " + x));
            }
        push(std::move(quotient));

        {
            const auto fctx = PrecisionContext::make(40, 1e-30);
            PrecisionScope fs(fctx.digits);
            const auto f = fractional_integral_check(Real(1) / 2, Real(1), Real(1), fctx);
            IdentityReport frac{"kernel-fractional", p_, {}};
            const Real ftol = 1000 * fctx.tolerance() * f.target;
            frac.residuals.push_back(make_residual("fractional-index-law", 0, std::nullopt, f.residual_nu_on_mu(), ftol,
                                                   "order 1/2 on index 1"));
            frac.residuals.push_back(make_residual("fractional-index-law", 0, std::nullopt, f.residual_mu_on_nu(), ftol,
                                                   "order 1 on index 1/2"));
            push(std::move(frac));
        }

        IdentityReport mom{"moments", p_, {}};
        const auto qctx = quadrature_context();
        for (int k = 0; k <= n(); ++k) {
            const Real closed = moment(k, p_, ctx_);
            Real quad;
            {
                PrecisionScope qs(qctx.digits);
                quad = moment_quadrature(k, p_, qctx);
            }
            mom.residuals.push_back(make_residual("moment-formula-vs-quadrature", k, std::nullopt, (closed - quad) / closed,
                                                  1000 * qctx.tolerance(), to_string(moment_source(p_))));
        }
        push(std::move(mom));
    }

    void lemma1()
    {
        std::vector<Params> points;
        if (p_.t > 0) points.push_back(p_);
        points.push_back(Params::make(Real(0), Real(1), Real(1), Real(1)));
        points.push_back(Params::make(Real(1) / 2, Real(3) / 2, Real(2), Real(1) / 2));
        for (const auto& q : points) {
            IdentityReport r{"weight-ode", q, {}};
            for (const char* x : {"0.5", "1", "2"}) {
                const auto res = weight_ode_residual(q, Real(x), ctx_);
                r.residuals.push_back(make_residual("weight-second-order-ode", 0, std::nullopt, res.value,
                                                    exact_tol() * res.scale, std::string("x = ") + x));
            }
            push(std::move(r));
        }
    }

    void lemma2()
    {
        const auto T = build_recurrence(p_, n() + 2, ctx_);
        PrecisionScope ts(T.digits);
        const Real tol = pow10(-(T.digits - 20));
        auto square_scale = [&](int k, int shift) {
            Real s(0);
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j)
                    s += abs(T.coeffs[k][i] * T.coeffs[k][j]) * T.moments.mu[i + j + shift];
            return s;
        };
        IdentityReport r{"normalization-integrals", p_, {}};
        for (int k = 0; k <= n(); ++k) {
            const auto ni = normalization_integrals(T, k);
            const char* names[3] = {"leading-power-integral", "next-power-integral", "second-next-power-integral"};
            for (int i = 0; i < 3; ++i) {
                const Real scale = max(moment_functional_scale(T, T.coeffs[k], k + i), abs(ni.predicted[i]));
                r.residuals.push_back(
                    make_residual(names[i], k, std::nullopt, ni.computed[i] - ni.predicted[i], tol * scale));
            }
            const auto sm = square_moments(T, k);
            r.residuals.push_back(make_residual("square-second-moment", k, std::nullopt,
                                                sm.second_moment - sm.second_formula, tol * square_scale(k, 2)));
            r.residuals.push_back(make_residual("square-third-moment", k, std::nullopt,
                                                sm.third_moment - sm.third_formula, tol * square_scale(k, 3)));
            ScalarIdentity d;
            d.add(T.d[k] / T.a[k]).add(-T.d[k + 2] / T.a[k + 2]);
            d.add(-T.b[k + 1] / T.a[k + 1] * (T.B[k] + T.B[k + 1]));
            d.add(-sm.second_formula);
            r.residuals.push_back(make_residual("coefficient-relation-d", k, std::nullopt, d.residual(), tol * d.scale()));
        }
        push(std::move(r));
        if (!(p_.t > 0)) {
            skip("rho-shift-integrals", "requires t > 0");
            return;
        }
        const auto qctx = PrecisionContext::make(40, 1e-30);
        for (int k = 0; k <= n(); ++k) push(check_2_36_2_37(T, k, qctx));
    }

    void thm2()
    {
        if (!(p_.lambda > 0) || !(p_.t > 0)) {
            if (!(p_.lambda > 0)) skip("thm2-lambda", "requires lambda > 0");
            if (!(p_.t > 0)) skip("thm2-t", "requires t > 0");
        }
        const auto& g = grid();
        for (int k = 1; k <= n(); ++k) {
            if (p_.lambda > 0) push(check_thm2_lambda(g, k));
            if (p_.t > 0) push(check_thm2_t(g, k));
        }
    }

    void thm3()
    {
        const auto& g = grid();
        for (int k = 0; k <= n(); ++k) {
            push(check_thm3(g, k));
            push(check_2_30(g, k));
        }
        push(check_scaling(g.table, Real(2), ctx_));
        push(check_scaling(g.table, Real(1) / 2, ctx_));
        if (p_.lambda > 0 && n() >= 1) push(check_refinement(p_, std::min(n(), 2), ctx_, pow10(-3)));
    }

    void cor1()
    {
        if (!(p_.lambda > 0) || !(p_.t > 0)) {
            skip("cor1", "requires lambda > 0 and t > 0");
            return;
        }
        const auto& g = grid();
        for (int k = 0; k <= n(); ++k) push(check_corollary1(g, k));
    }

    void cor3()
    {
        const auto& g = grid();
        for (int k = 0; k <= n(); ++k) push(check_cor3(g, k));
    }

    void thm4()
    {
        if (!(p_.lambda > 0) || !(p_.t > 0) || !(p_.nu > 0)) {
            skip("thm4", "requires lambda > 0, t > 0 and nu > 0");
            return;
        }
        const std::vector<Real> xs{Real(1) / 2, Real(1), Real(2)};
        push(check_thm4_lambda(p_, std::max(n(), 1), xs, ctx_));
        push(check_thm4_t(p_, n(), xs, ctx_));
    }

    void thm5()
    {
        IdentityReport ops{"composition-operators", p_, {}};
        const std::vector<Real> ys{Real(1) / 2, Real(1), Real(3)};
        for (int m = 0; m <= 4; ++m)
            ops.residuals.push_back(make_residual("rodrigues-formula", m, std::nullopt, rodrigues_check(p_.nu, m, ys, ctx_),
                                                  exact_tol()));
        ops.residuals.push_back(make_residual("base-function-integral", 0, std::nullopt,
                                              base_function_check(p_, ys, ctx_), 1000 * ctx_.tolerance()));
        push(std::move(ops));
        if (!(p_.t > 0)) {
            skip("composition", "requires t > 0");
            return;
        }
        const auto T = build_recurrence(p_, n(), ctx_);
        const auto tctx = ctx_.digits == T.digits ? ctx_ : PrecisionContext::make(T.digits, ctx_.tol);
        TermIntegrator integ(p_, tctx);
        for (int k = 0; k <= n(); ++k) push(composition_orthogonality_check(T, k, tctx, &integ));
    }

    void quasi()
    {
        if (!(p_.t > 0)) {
            skip("quasi-orthogonality", "requires t > 0");
            return;
        }
        const auto& g = grid();
        for (int k = 1; k <= n(); ++k) push(check_quasi_orthogonality(g, k));
    }

    void section4()
    {
        const Real tc = p_.t > 0 && p_.t < 1 ? p_.t : Real(1) / 2;
        const Params center{p_.alpha, p_.nu, 1 - tc, tc};
        const auto g = build_grid(center, n() + 1, ctx_, {Axis::path});
        for (int k = 0; k <= n(); ++k) push(check_section4(g, k));
        if (p_.nu > 0)
            push(check_section4_endpoints(p_.alpha, p_.nu, n(), ctx_, pow10(-30)));
        else
            skip("section4-endpoints", "the t = 0 end requires nu > 0");
    }
};

} // namespace rhopoly

#endif // RHOPOLY_SUITES_HPP
