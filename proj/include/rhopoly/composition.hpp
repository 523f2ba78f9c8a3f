#ifndef RHOPOLY_COMPOSITION_HPP
#define RHOPOLY_COMPOSITION_HPP

// Composition orthogonality: P_n(theta/t) with theta = y D y acting on the
// base function Gamma(1+alpha) y^alpha (lambda y + t)^{-(alpha+1)}, integrated
// against y^nu e^{-y}.

#include "rhopoly/moments.hpp"
#include "rhopoly/opoly.hpp"
#include "rhopoly/report.hpp"

#include <map>
#include <utility>
#include <vector>

namespace rhopoly {

/// Sum of c * y^{alpha+j} (lambda y + t)^{-(alpha+1+k)} over (j, k).
struct TermSum {
    Params params;
    std::map<std::pair<int, int>, Real> terms;

    void add(int j, int k, const Real& c)
    {
        auto [it, inserted] = terms.try_emplace({j, k}, c);
        if (!inserted) it->second += c;
        if (is_zero(it->second)) terms.erase(it);
    }

    TermSum& operator+=(const TermSum& other)
    {
        for (const auto& [jk, c] : other.terms) add(jk.first, jk.second, c);
        return *this;
    }

    TermSum scaled(const Real& factor) const
    {
        TermSum out{params, {}};
        for (const auto& [jk, c] : terms) out.add(jk.first, jk.second, c * factor);
        return out;
    }

    /// Pointwise value at y > 0.
    Real eval(const Real& y) const
    {
        Real s(0);
        const Real base = params.lambda * y + params.t;
        for (const auto& [jk, c] : terms)
            s += c * exp((params.alpha + jk.first) * log(y) - (params.alpha + 1 + jk.second) * log(base));
        return s;
    }
};

/// Gamma(1+alpha) y^alpha (lambda y + t)^{-(alpha+1)}.
inline TermSum base_function(const Params& p)
{
    TermSum s{p, {}};
    s.add(0, 0, tgamma(p.alpha + 1));
    return s;
}

/// theta f = y d/dy (y f):
///   c y^p B^{-q} -> c (p+1) y^{p+1} B^{-q} - c q lambda y^{p+2} B^{-(q+1)},
/// p = alpha + j, q = alpha + 1 + k, B = lambda y + t.
inline TermSum theta_apply(const TermSum& s)
{
    const Real& alpha = s.params.alpha;
    TermSum out{s.params, {}};
    for (const auto& [jk, c] : s.terms) {
        const auto [j, k] = jk;
        out.add(j + 1, k, c * (alpha + j + 1));
        if (!is_zero(s.params.lambda))
            out.add(j + 2, k + 1, -c * s.params.lambda * (alpha + 1 + k));
    }
    return out;
}

inline TermSum theta_power(TermSum s, int m)
{
    for (int i = 0; i < m; ++i) s = theta_apply(s);
    return s;
}

/// Coefficients c_i / t^i of P_n(X / t) as a polynomial in X.
struct OperatorPolynomial {
    std::vector<Real> coeffs;

    static OperatorPolynomial from_table(const RecurrenceTable& T, int n)
    {
        if (!(T.params.t > 0))
            throw DomainError("operator polynomial: requires t > 0");
        PrecisionScope scope(T.digits);
        OperatorPolynomial op;
        Real scale(1);
        for (const auto& c : T.coeffs[n]) {
            op.coeffs.push_back(c * scale);
            scale /= T.params.t;
        }
        return op;
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    /// Horner in theta: R = c_n S; R = theta R + c_i S.
    TermSum apply(const TermSum& s) const
    {
        TermSum r = s.scaled(coeffs.back());
        for (int i = degree() - 1; i >= 0; --i) {
            r = theta_apply(r);
            r += s.scaled(coeffs[i]);
        }
        return r;
    }
};

/// int_0^inf y^nu e^{-y} y^{alpha+j} (lambda y + t)^{-(alpha+1+k)} dy, memoized by (j, k).
class TermIntegrator {
public:
    TermIntegrator(const Params& p, const PrecisionContext& ctx) : params_(p), ctx_(ctx) {}

    const Real& term(int j, int k)
    {
        auto it = cache_.find({j, k});
        if (it != cache_.end()) return it->second;
        PrecisionScope scope(ctx_.digits);
        const Real c = params_.nu + params_.alpha + j + 1;
        const Real d = params_.alpha + 1 + k;
        return cache_.emplace(std::make_pair(j, k), aux_integral(c, d, params_.lambda, params_.t, ctx_)).first->second;
    }

    /// Value and sum of |term| contributions.
    std::pair<Real, Real> integrate(const TermSum& s)
    {
        PrecisionScope scope(ctx_.digits);
        Real value(0), scale(0);
        for (const auto& [jk, c] : s.terms) {
            const Real v = c * term(jk.first, jk.second);
            value += v;
            scale += abs(v);
        }
        return {value, scale};
    }

private:
    Params params_;
    PrecisionContext ctx_;
    std::map<std::pair<int, int>, Real> cache_;
};

inline Real term_integral(const TermSum& s, const PrecisionContext& ctx)
{
    TermIntegrator integ(s.params, ctx);
    return integ.integrate(s).first;
}

/// Same integral by quadrature of y^nu e^{-y} s(y).
inline Real term_integral_quadrature(const TermSum& s, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    auto f = [&](const Real& y, const Real& log_y) { return exp(s.params.nu * log_y - y) * s.eval(y); };
    return integrate_semiline<Real>(f, ctx.tolerance()).value;
}

/// theta^m {y^nu e^{-y}} in the family y^{nu+i} e^{-y}, against
/// m! y^{nu+m} e^{-y} L_m^nu(y). Returns the largest relative residual over the points.
inline Real rodrigues_check(const Real& nu, int m, const std::vector<Real>& ys, const PrecisionContext& ctx)
{
    if (m < 0)
        throw DomainError("rodrigues_check: m must be >= 0");
    PrecisionScope scope(ctx.digits);
    std::map<int, Real> family{{0, Real(1)}};
    for (int r = 0; r < m; ++r) {
        std::map<int, Real> next;
        for (const auto& [i, c] : family) {
            next[i + 1] += c * (nu + i + 1);
            next[i + 2] -= c;
        }
        family = std::move(next);
    }
    Real worst(0);
    for (const auto& y : ys) {
        Real lhs(0);
        for (const auto& [i, c] : family) lhs += c * pow(y, nu + i);
        lhs *= exp(-y);
        const Real rhs = factorial(m) * pow(y, nu + m) * exp(-y) * laguerre(m, nu, y);
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), abs(lhs)));
    }
    return worst;
}

/// (1/y) int_0^inf e^{-x(lambda + t/y)} x^alpha dx by quadrature against
/// Gamma(1+alpha) y^alpha (lambda y + t)^{-(alpha+1)}. Largest relative residual.
inline Real base_function_check(const Params& p, const std::vector<Real>& ys, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    const auto base = base_function(p);
    Real worst(0);
    for (const auto& y : ys) {
        const Real rate = p.lambda + p.t / y;
        if (!(rate > 0))
            throw DomainError("base_function_check: lambda y + t must be > 0");
        auto f = [&](const Real& x, const Real& log_x) { return exp(p.alpha * log_x - rate * x); };
        const Real lhs = integrate_semiline<Real>(f, ctx.tolerance()).value / y;
        const Real rhs = base.eval(y);
        worst = max(worst, abs(lhs - rhs) / rhs);
    }
    return worst;
}

/// int y^nu e^{-y} P_n(theta/t) theta^m {base} dy for m = 0..n. It vanishes for
/// m < n, equals t^n / a_n at m = n, and equals t^m int P_n x^m omega dx for every m.
inline IdentityReport composition_orthogonality_check(const RecurrenceTable& T, int n, const PrecisionContext& ctx,
                                                      TermIntegrator* shared = nullptr)
{
    if (n < 0 || n > T.N)
        throw DomainError("composition check: degree outside the table");
    if (n > 10)
        throw DomainError("composition check: degree capped at 10");
    const Params& p = T.params;
    if (!(p.t > 0))
        throw DomainError("composition check: requires t > 0");
    PrecisionScope scope(ctx.digits);
    TermIntegrator local(p, ctx);
    TermIntegrator& integ = shared ? *shared : local;
    const auto op = OperatorPolynomial::from_table(T, n);
    const Real tol = 100 * ctx.tolerance();
    IdentityReport rep{"composition", p, {}};
    TermSum s = base_function(p);
    for (int m = 0; m <= n; ++m) {
        const auto [value, scale] = integ.integrate(op.apply(s));
        if (m < n) {
            rep.residuals.push_back(make_residual("composition-orthogonality", n, m, value, tol * scale));
        } else {
            const Real expected = pow(p.t, static_cast<long>(n)) / T.a[n];
            rep.residuals.push_back(
                make_residual("composition-diagonal-value", n, m, value - expected, tol * max(scale, expected)));
        }
        const Real t_m = pow(p.t, static_cast<long>(m));
        const Real moment_side = t_m * moment_functional(T, T.coeffs[n], m);
        const Real moment_scale = t_m * moment_functional_scale(T, T.coeffs[n], m);
        rep.residuals.push_back(make_residual("composition-equals-moment-route", n, m, value - moment_side,
                                              tol * max(scale, moment_scale)));
        s = theta_apply(s);
    }
    return rep;
}

} // namespace rhopoly

#endif // RHOPOLY_COMPOSITION_HPP
