#ifndef RHOPOLY_MOMENTS_HPP
#define RHOPOLY_MOMENTS_HPP

// Moments mu_k = int_0^inf x^{k+alpha} e^{-lambda x} rho_nu(x t) dx of the weight.

#include "rhopoly/kernels.hpp"
#include "rhopoly/linalg.hpp"

#include <string>
#include <vector>

namespace rhopoly {

enum class MomentSource { closed_form, quadrature, mellin_lambda0, gamma_t0 };

inline std::string to_string(MomentSource s)
{
    switch (s) {
    case MomentSource::closed_form: return "closed-form";
    case MomentSource::quadrature: return "quadrature";
    case MomentSource::mellin_lambda0: return "mellin-lambda0";
    case MomentSource::gamma_t0: return "gamma-t0";
    }
    return "?";
}

/// mu_0 ... mu_{2N+1}. The extra odd moment gives B_N without a deeper table.
struct MomentTable {
    Params params;
    int N = 0;
    std::vector<Real> mu;
    MomentSource source = MomentSource::closed_form;
    int digits = 0; // precision the table was computed at (after any escalation)
};

/// int_0^inf u^{c-1} e^{-u} (lambda u + t)^{-d} du
///   = lambda^{-d} (t/lambda)^{c-d} Gamma(c) Psi(c, c+1-d; t/lambda),
/// with the limits t^{-d} Gamma(c) at lambda = 0 and lambda^{-d} Gamma(c-d) at t = 0.
inline Real aux_integral(const Real& c, const Real& d, const Real& lambda, const Real& t,
                         const PrecisionContext& ctx)
{
    if (!(c > 0))
        throw DomainError("aux_integral: c must be > 0");
    if (lambda < 0 || t < 0 || (is_zero(lambda) && is_zero(t)))
        throw DomainError("aux_integral: need lambda, t >= 0, not both zero");
    PrecisionScope scope(ctx.digits);
    if (is_zero(lambda))
        return exp(lgamma(c) - d * log(t));
    if (is_zero(t)) {
        if (!(c > d))
            throw DomainError("aux_integral: t = 0 requires c > d");
        return exp(lgamma(c - d) - d * log(lambda));
    }
    const Real z = t / lambda;
    const Real psi = tricomi_psi(c, c + 1 - d, z, ctx);
    return exp(lgamma(c) - d * log(lambda) + (c - d) * log(z)) * psi;
}

/// I_n = lambda^{-nu-alpha-n-1} t^nu Gamma(n+nu+alpha+1) Gamma(n+alpha+1) Psi(1+n+alpha+nu, 1+nu; t/lambda).
inline Real moment_closed_form(int n, const Params& p, const PrecisionContext& ctx)
{
    if (!(p.lambda > 0) || !(p.t > 0))
        throw DomainError("moment_closed_form: requires lambda > 0 and t > 0");
    PrecisionScope scope(ctx.digits);
    const Real d = p.alpha + n + 1;
    const Real c = p.nu + d;
    const Real z = p.t / p.lambda;
    const Real psi = tricomi_psi(c, 1 + p.nu, z, ctx);
    return exp(lgamma(c) + lgamma(d) - c * log(p.lambda) + p.nu * log(p.t)) * psi;
}

/// lambda = 0: I_n = t^{-(n+alpha+1)} Gamma(n+alpha+1) Gamma(n+alpha+nu+1).
inline Real moment_mellin(int n, const Params& p, const PrecisionContext& ctx)
{
    if (!(p.t > 0))
        throw DomainError("moment_mellin: requires t > 0");
    PrecisionScope scope(ctx.digits);
    const Real d = p.alpha + n + 1;
    return exp(lgamma(d) + lgamma(d + p.nu) - d * log(p.t));
}

/// t = 0: I_n = Gamma(nu) Gamma(n+alpha+1) lambda^{-(n+alpha+1)}.
inline Real moment_gamma_t0(int n, const Params& p, const PrecisionContext& ctx)
{
    if (!(p.lambda > 0) || !(p.nu > 0))
        throw DomainError("moment_gamma_t0: requires lambda > 0 and nu > 0");
    PrecisionScope scope(ctx.digits);
    const Real d = p.alpha + n + 1;
    return exp(lgamma(p.nu) + lgamma(d) - d * log(p.lambda));
}

/// Direct quadrature of int_0^inf x^{n+alpha} e^{-lambda x} rho_nu(x t) dx with
/// rho evaluated by its own integral at each node.
inline Real moment_quadrature(int n, const Params& p, const PrecisionContext& ctx)
{
    p.validate();
    PrecisionScope scope(ctx.digits);
    const Real power = p.alpha + n;
    if (is_zero(p.t)) {
        const Real g = tgamma(p.nu);
        auto f = [&](const Real& x, const Real& log_x) { return g * exp(power * log_x - p.lambda * x); };
        return integrate_semiline<Real>(f, ctx.tolerance()).value;
    }
    auto f = [&](const Real& x, const Real& log_x) {
        return exp(power * log_x - p.lambda * x) * rho_eval(p.nu, x * p.t, ctx);
    };
    return integrate_semiline<Real>(f, ctx.tolerance()).value;
}

/// The formula that applies at this parameter point.
inline Real moment(int n, const Params& p, const PrecisionContext& ctx)
{
    if (is_zero(p.lambda)) return moment_mellin(n, p, ctx);
    if (is_zero(p.t)) return moment_gamma_t0(n, p, ctx);
    return moment_closed_form(n, p, ctx);
}

inline MomentSource moment_source(const Params& p)
{
    if (is_zero(p.lambda)) return MomentSource::mellin_lambda0;
    if (is_zero(p.t)) return MomentSource::gamma_t0;
    return MomentSource::closed_form;
}

namespace detail {

inline MomentTable moment_table_at(const Params& p, int N, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    MomentTable table;
    table.params = p;
    table.N = N;
    table.source = moment_source(p);
    table.digits = ctx.digits;
    for (int k = 0; k <= 2 * N + 1; ++k) {
        table.mu.push_back(moment(k, p, ctx));
        if (!(table.mu.back() > 0))
            throw PositiveDefiniteError("moments: mu_" + std::to_string(k) + " is not positive");
    }
    cholesky(hankel(table.mu, N + 1, 0));
    cholesky(hankel(table.mu, N + 1, 1));
    return table;
}

} // namespace detail

/// mu_0 ... mu_{2N+1}, with the Hankel matrices [mu_{i+j}] and [mu_{i+j+1}]
/// (0 <= i, j <= N) checked positive definite. On failure the precision is
/// doubled up to ctx.max_digits before giving up.
inline MomentTable build_moment_table(const Params& p, int N, const PrecisionContext& ctx)
{
    p.validate();
    if (N < 0 || N > 24)
        throw DomainError("build_moment_table: N must lie in [0, 24]");
    PrecisionContext c = ctx;
    for (;;) {
        try {
            return detail::moment_table_at(p, N, c);
        } catch (const PositiveDefiniteError& e) {
            if (!c.can_escalate())
                throw PositiveDefiniteError(std::string(e.what()) + " at " + std::to_string(c.digits) +
                                            " digits for " + p.describe());
            c = c.escalated();
        }
    }
}

} // namespace rhopoly

#endif // RHOPOLY_MOMENTS_HPP
