#ifndef RHOPOLY_CALCULUS_HPP
#define RHOPOLY_CALCULUS_HPP

// Parameter derivatives of recurrence tables and the differential,
// differential-difference and integral-difference identities they satisfy.
//
// Derivatives in lambda and t are central differences (one Richardson level)
// of tables rebuilt at shifted parameter points; x-derivatives act exactly on
// coefficient vectors.

#include "rhopoly/kernels.hpp"
#include "rhopoly/opoly.hpp"
#include "rhopoly/report.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace rhopoly {

/// Direction of differentiation. `path` moves along lambda = 1 - t, so the
/// derivative is d/dt = d_t - d_lambda.
enum class Axis { lambda, t, path };

inline std::string to_string(Axis a)
{
    switch (a) {
    case Axis::lambda: return "lambda";
    case Axis::t: return "t";
    case Axis::path: return "path";
    }
    return "?";
}

inline Params shifted(const Params& c, Axis axis, const Real& delta)
{
    switch (axis) {
    case Axis::lambda: return c.with_lambda(c.lambda + delta);
    case Axis::t: return c.with_t(c.t + delta);
    case Axis::path: return Params{c.alpha, c.nu, c.lambda - delta, c.t + delta};
    }
    return c;
}

/// Derivatives of every table entry along one axis.
struct TableDerivative {
    Axis axis = Axis::lambda;
    Real step;
    bool one_sided = false;
    std::vector<std::vector<Real>> coeffs;
    std::vector<Real> a, b, A, B;

    /// d(b_n/a_n) by the quotient rule.
    Real b_over_a(const RecurrenceTable& t, int n) const
    {
        return (b[n] * t.a[n] - t.b[n] * a[n]) / (t.a[n] * t.a[n]);
    }
};

namespace detail {

inline std::vector<Real> flatten(const RecurrenceTable& t)
{
    std::vector<Real> out;
    for (const auto& row : t.coeffs)
        out.insert(out.end(), row.begin(), row.end());
    for (const auto* v : {&t.a, &t.b, &t.A, &t.B})
        out.insert(out.end(), v->begin(), v->end());
    return out;
}

inline TableDerivative unflatten(const std::vector<Real>& v, int N)
{
    TableDerivative d;
    std::size_t pos = 0;
    for (int n = 0; n <= N; ++n) {
        d.coeffs.emplace_back(v.begin() + pos, v.begin() + pos + n + 1);
        pos += n + 1;
    }
    for (auto* out : {&d.a, &d.b, &d.A, &d.B}) {
        out->assign(v.begin() + pos, v.begin() + pos + N + 1);
        pos += N + 1;
    }
    return d;
}

/// Lowest admissible offset along the axis (the parameter that would turn negative).
inline Real room_below(const Params& c, Axis axis)
{
    switch (axis) {
    case Axis::lambda: return c.lambda;
    case Axis::t: return c.t;
    case Axis::path: return c.t;
    }
    return Real(0);
}

inline Real room_above(const Params& c, Axis axis)
{
    return axis == Axis::path ? c.lambda : Real(-1);
}

} // namespace detail

/// Builds tables at center +- h, +- h/2 along the axis and differentiates
/// every entry. Near the lower (or, on the path, upper) end of the parameter
/// range a one-sided second-order stencil with one Richardson level is used.
inline TableDerivative table_derivative(const Params& center, int N, Axis axis, const PrecisionContext& ctx,
                                        const Real& h)
{
    PrecisionScope scope(ctx.digits);
    auto eval = [&](const Real& delta) {
        auto table = build_recurrence(shifted(center, axis, delta), N, ctx);
        if (table.digits != ctx.digits)
            throw PositiveDefiniteError("table_derivative: neighbouring table needed escalation");
        return detail::flatten(table);
    };
    const Real below = detail::room_below(center, axis);
    const Real above = detail::room_above(center, axis);
    TableDerivative d;
    std::vector<Real> values;
    if (below >= h && (above < 0 || above >= h)) {
        values = central_derivative_vec(eval, Real(0), h);
    } else {
        // forward stencil if there is no room below, backward otherwise
        const int dir = below < h ? 1 : -1;
        const Real hs = h * dir;
        auto f0 = eval(Real(0));
        auto f1 = eval(hs / 2), f2 = eval(hs), f4 = eval(2 * hs);
        values.resize(f0.size());
        for (std::size_t i = 0; i < f0.size(); ++i) {
            Real fine = (-3 * f0[i] + 4 * f1[i] - f2[i]) / hs;
            Real coarse = (-3 * f0[i] + 4 * f2[i] - f4[i]) / (2 * hs);
            values[i] = (4 * fine - coarse) / 3;
        }
        d.one_sided = true;
    }
    auto out = detail::unflatten(values, N);
    out.axis = axis;
    out.step = h;
    out.one_sided = d.one_sided;
    return out;
}

/// Recurrence table at a center point plus its derivatives along the
/// requested axes, all at one precision.
struct ParamGridTables {
    Params center;
    int N = 0;
    PrecisionContext ctx;
    Real h;
    RecurrenceTable table;
    std::optional<TableDerivative> d_lambda, d_t, d_path;

    const TableDerivative& along(Axis axis) const
    {
        const auto& d = axis == Axis::lambda ? d_lambda : axis == Axis::t ? d_t : d_path;
        if (!d)
            throw DomainError("parameter grid was built without the " + to_string(axis) + " axis");
        return *d;
    }
};

inline ParamGridTables build_grid(const Params& center, int N, const PrecisionContext& ctx,
                                  std::initializer_list<Axis> axes, std::optional<Real> step = {})
{
    ParamGridTables g;
    g.center = center;
    g.N = N;
    g.table = build_recurrence(center, N, ctx);
    g.ctx = ctx;
    g.ctx.digits = g.table.digits;
    PrecisionScope scope(g.ctx.digits);
    g.h = step ? *step : default_step(g.ctx.digits, 1);
    for (Axis axis : axes) {
        auto d = table_derivative(center, N, axis, g.ctx, g.h);
        if (axis == Axis::lambda) g.d_lambda = std::move(d);
        else if (axis == Axis::t) g.d_t = std::move(d);
        else g.d_path = std::move(d);
    }
    return g;
}

/// Tolerance for a finite-difference residual whose largest term has size
/// `scale`: 10 max(h^2, 10^{-(digits-20)}/h) scale. The second term is the
/// cancellation error of differencing tables accurate to ~10^-digits.
inline Real fd_tolerance(const ParamGridTables& g, const Real& scale)
{
    PrecisionScope scope(g.ctx.digits);
    Real bound = 10 * max(g.h * g.h, pow10(-(g.ctx.digits - 20)) / g.h) * scale;
    for (const auto* d : {&g.d_lambda, &g.d_t, &g.d_path})
        if (*d && (*d)->one_sided) return bound * 10;
    return bound;
}

/// Accumulates sum_i factor_i * p_i over coefficient vectors, tracking the
/// largest single contribution as the scale.
class PolyIdentity {
public:
    void add(const std::vector<Real>& p, const Real& factor)
    {
        if (sum_.size() < p.size()) sum_.resize(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
            Real term = factor * p[k];
            scale_ = max(scale_, abs(term));
            sum_[k] += term;
        }
    }
    Real residual() const
    {
        Real r(0);
        for (const auto& v : sum_) r = max(r, abs(v));
        return r;
    }
    const Real& scale() const { return scale_; }
    const std::vector<Real>& sum() const { return sum_; }

private:
    std::vector<Real> sum_;
    Real scale_{0};
};

/// Scalar version: sum of terms and the largest |term|.
class ScalarIdentity {
public:
    ScalarIdentity& add(const Real& term)
    {
        sum_ += term;
        scale_ = max(scale_, abs(term));
        return *this;
    }
    const Real& residual() const { return sum_; }
    const Real& scale() const { return scale_; }

private:
    Real sum_{0};
    Real scale_{0};
};

/// Coefficient vector of x d/dx p.
inline std::vector<Real> euler_derivative(const std::vector<Real>& p)
{
    std::vector<Real> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
        out[k] = p[k] * static_cast<long>(k);
    return out;
}

namespace detail {

inline void require_degree(const ParamGridTables& g, int n, int extra, const char* who)
{
    if (n < 0 || n + extra > g.N)
        throw DomainError(std::string(who) + ": grid depth too small for n = " + std::to_string(n));
}

inline Residual fd_residual(const ParamGridTables& g, std::string id, int n, const Real& residual, const Real& scale)
{
    return make_residual(std::move(id), n, std::nullopt, residual, fd_tolerance(g, scale));
}

inline Residual fd_residual(const ParamGridTables& g, std::string id, int n, const PolyIdentity& p)
{
    return fd_residual(g, std::move(id), n, p.residual(), p.scale());
}

inline Residual fd_residual(const ParamGridTables& g, std::string id, int n, const ScalarIdentity& s)
{
    return fd_residual(g, std::move(id), n, s.residual(), s.scale());
}

/// d_lambda P_n - (d_lambda a_n / a_n) P_n - A_n P_{n-1}
inline PolyIdentity lambda_law(const ParamGridTables& g, int n)
{
    const auto& T = g.table;
    const auto& D = g.along(Axis::lambda);
    PolyIdentity r;
    r.add(D.coeffs[n], Real(1));
    r.add(T.coeffs[n], -D.a[n] / T.a[n]);
    if (n >= 1) r.add(T.coeffs[n - 1], -T.A[n]);
    return r;
}

/// (t d_t - x d_x) P_n - (t d_t a_n / a_n - n) P_n + lambda A_n P_{n-1}
inline PolyIdentity t_law(const ParamGridTables& g, int n)
{
    const auto& T = g.table;
    const auto& D = g.along(Axis::t);
    const Real& t = g.center.t;
    PolyIdentity r;
    r.add(D.coeffs[n], t);
    r.add(euler_derivative(T.coeffs[n]), Real(-1));
    r.add(T.coeffs[n], -(t * D.a[n] / T.a[n] - n));
    if (n >= 1) r.add(T.coeffs[n - 1], g.center.lambda * T.A[n]);
    return r;
}

/// (lambda d_lambda + t d_t) P_n - x d_x P_n - ((alpha+1)/2) P_n
inline PolyIdentity euler_law(const ParamGridTables& g, int n)
{
    const auto& T = g.table;
    PolyIdentity r;
    r.add(g.along(Axis::lambda).coeffs[n], g.center.lambda);
    r.add(g.along(Axis::t).coeffs[n], g.center.t);
    r.add(euler_derivative(T.coeffs[n]), Real(-1));
    r.add(T.coeffs[n], -(g.center.alpha + 1) / 2);
    return r;
}

} // namespace detail

/// d_lambda P_n = (d_lambda a_n / a_n) P_n + A_n P_{n-1}, coefficientwise.
inline IdentityReport check_thm2_lambda(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 0, "check_thm2_lambda");
    PrecisionScope scope(g.ctx.digits);
    IdentityReport rep{"thm2-lambda", g.center, {}};
    rep.residuals.push_back(detail::fd_residual(g, "lambda-derivative-of-P", n, detail::lambda_law(g, n)));
    return rep;
}

/// (t d_t - x d_x) P_n = (t d_t a_n / a_n - n) P_n - lambda A_n P_{n-1}, coefficientwise.
inline IdentityReport check_thm2_t(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 0, "check_thm2_t");
    PrecisionScope scope(g.ctx.digits);
    IdentityReport rep{"thm2-t", g.center, {}};
    rep.residuals.push_back(detail::fd_residual(g, "t-derivative-of-P", n, detail::t_law(g, n)));
    if (g.d_lambda) {
        // lambda * (lambda law) + (t law) - (Euler law) = -((lambda d_l + t d_t) a_n / a_n - n - (alpha+1)/2) P_n
        const auto l = detail::lambda_law(g, n);
        const auto t = detail::t_law(g, n);
        const auto e = detail::euler_law(g, n);
        const auto& T = g.table;
        const Real k = (g.center.lambda * g.along(Axis::lambda).a[n] + g.center.t * g.along(Axis::t).a[n]) / T.a[n] -
                       n - (g.center.alpha + 1) / 2;
        Real r(0);
        for (int i = 0; i <= n; ++i)
            r = max(r, abs(g.center.lambda * l.sum()[i] + t.sum()[i] - e.sum()[i] + k * T.coeffs[n][i]));
        const Real scale = max(max(l.scale(), t.scale()), e.scale());
        rep.residuals.push_back(detail::fd_residual(g, "lambda-and-t-laws-combine", n, r, scale));
    }
    return rep;
}

/// (lambda d_lambda + t d_t) P_n - x d_x P_n = ((alpha+1)/2) P_n, coefficientwise.
inline IdentityReport check_cor3(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 0, "check_cor3");
    PrecisionScope scope(g.ctx.digits);
    IdentityReport rep{"cor3", g.center, {}};
    rep.residuals.push_back(detail::fd_residual(g, "euler-operator-on-P", n, detail::euler_law(g, n)));
    return rep;
}

/// Differential relations for b_n/a_n and B_n.
inline IdentityReport check_corollary1(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 1, "check_corollary1");
    PrecisionScope scope(g.ctx.digits);
    const auto& T = g.table;
    const auto& Dl = g.along(Axis::lambda);
    const auto& Dt = g.along(Axis::t);
    const Real& l = g.center.lambda;
    const Real& t = g.center.t;
    const Real ba = T.b_over_a(n);
    const Real dl_ba = Dl.b_over_a(T, n);
    const Real dt_ba = Dt.b_over_a(T, n);
    const Real A2 = T.A[n] * T.A[n];
    const Real A2next = T.A[n + 1] * T.A[n + 1];
    IdentityReport rep{"cor1", g.center, {}};
    rep.residuals.push_back(detail::fd_residual(g, "lambda-derivative-of-b/a", n, ScalarIdentity().add(dl_ba).add(-A2)));
    rep.residuals.push_back(
        detail::fd_residual(g, "t-derivative-of-t*b/a", n, ScalarIdentity().add(ba).add(t * dt_ba).add(l * A2)));
    rep.residuals.push_back(detail::fd_residual(
        g, "homogeneity-of-B", n, ScalarIdentity().add(l * Dl.B[n]).add(t * Dt.B[n]).add(T.B[n])));
    rep.residuals.push_back(detail::fd_residual(
        g, "toda-b/a", n, ScalarIdentity().add(l * dl_ba).add(-t * dt_ba).add(-ba).add(-2 * l * A2)));
    rep.residuals.push_back(detail::fd_residual(g, "toda-B", n,
                                                ScalarIdentity()
                                                    .add(l * Dl.B[n])
                                                    .add(-t * Dt.B[n])
                                                    .add(-T.B[n])
                                                    .add(-2 * l * A2)
                                                    .add(2 * l * A2next)));
    return rep;
}

/// Relations between a_n, A_n, B_n and their parameter derivatives.
inline IdentityReport check_thm3(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 0, "check_thm3");
    PrecisionScope scope(g.ctx.digits);
    const auto& T = g.table;
    const auto& Dl = g.along(Axis::lambda);
    const auto& Dt = g.along(Axis::t);
    const Real& l = g.center.lambda;
    const Real& t = g.center.t;
    const Real& alpha = g.center.alpha;
    IdentityReport rep{"thm3", g.center, {}};
    rep.residuals.push_back(
        detail::fd_residual(g, "B-from-lambda-derivative-of-a", n, ScalarIdentity().add(T.B[n]).add(-2 * Dl.a[n] / T.a[n])));
    rep.residuals.push_back(detail::fd_residual(
        g, "t-derivative-of-a", n,
        ScalarIdentity().add(2 * t * Dt.a[n] / T.a[n]).add(Real(-(2 * n + 1)) - alpha).add(l * T.B[n])));
    rep.residuals.push_back(detail::fd_residual(
        g, "homogeneity-of-a", n, ScalarIdentity().add(l * Dl.a[n]).add(t * Dt.a[n]).add(-(n + (alpha + 1) / 2) * T.a[n])));
    if (n >= 1)
        rep.residuals.push_back(detail::fd_residual(
            g, "homogeneity-of-A", n, ScalarIdentity().add(l * Dl.A[n]).add(t * Dt.A[n]).add(T.A[n])));
    return rep;
}

/// (lambda d_lambda + t d_t) b_n = (n + (alpha-1)/2) b_n.
inline IdentityReport check_2_30(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 0, "check_2_30");
    PrecisionScope scope(g.ctx.digits);
    IdentityReport rep{"homogeneity-b", g.center, {}};
    if (n == 0) {
        rep.residuals.push_back(make_skipped("homogeneity-of-b", 0, "b_0 = 0: no x^{-1} coefficient"));
        return rep;
    }
    const auto& T = g.table;
    rep.residuals.push_back(detail::fd_residual(g, "homogeneity-of-b", n,
                                                ScalarIdentity()
                                                    .add(g.center.lambda * g.along(Axis::lambda).b[n])
                                                    .add(g.center.t * g.along(Axis::t).b[n])
                                                    .add(-(n + (g.center.alpha - 1) / 2) * T.b[n])));
    return rep;
}

/// a_n, b_n, A_n, B_n under (lambda, t) -> (c lambda, c t): exact powers of c.
inline IdentityReport check_scaling(const RecurrenceTable& base, const Real& c, const PrecisionContext& ctx)
{
    const Params& p = base.params;
    auto scaled = build_recurrence(Params{p.alpha, p.nu, c * p.lambda, c * p.t}, base.N, ctx);
    const int digits = std::min(base.digits, scaled.digits);
    PrecisionScope scope(digits);
    const Real tol_rel = pow10(-(digits - 20));
    IdentityReport rep{"scaling", p, {}};
    for (int n = 0; n <= base.N; ++n) {
        const Real pa = pow(c, Real(n) + (p.alpha + 1) / 2);
        const Real pb = pow(c, Real(n) + (p.alpha - 1) / 2);
        rep.residuals.push_back(make_residual("scaling-of-a", n, std::nullopt, scaled.a[n] - pa * base.a[n],
                                              tol_rel * abs(scaled.a[n])));
        if (n >= 1) {
            rep.residuals.push_back(make_residual("scaling-of-b", n, std::nullopt, scaled.b[n] - pb * base.b[n],
                                                  tol_rel * abs(scaled.b[n])));
            rep.residuals.push_back(make_residual("scaling-of-A", n, std::nullopt, scaled.A[n] - base.A[n] / c,
                                                  tol_rel * abs(scaled.A[n])));
        }
        rep.residuals.push_back(make_residual("scaling-of-B", n, std::nullopt, scaled.B[n] - base.B[n] / c,
                                              tol_rel * abs(scaled.B[n])));
    }
    return rep;
}

/// int P_n^2 rho_{nu+1}(x t) e^{-lambda x} x^{alpha+k} dx for k = 0, 1 by
/// quadrature with rho evaluated at every node, against
///   k = 0: 2n + alpha + nu + 1 - lambda B_n
///   k = 1: (alpha + 2(n+1) + nu) B_n - lambda (A_{n+1}^2 + B_n^2 + A_n^2) - 2 b_n/a_n.
inline IdentityReport check_2_36_2_37(const RecurrenceTable& T, int n, const PrecisionContext& qctx)
{
    if (n < 0 || n + 1 > T.N)
        throw DomainError("check_2_36_2_37: table depth must be at least n+1");
    const Params& p = T.params;
    if (!(p.t > 0))
        throw DomainError("check_2_36_2_37: requires t > 0");
    PrecisionScope scope(qctx.digits);
    const auto& c = T.coeffs[n];
    auto integral = [&](int k) {
        auto f = [&](const Real& x, const Real& log_x) {
            const Real pn = poly_eval(c, x);
            return pn * pn * exp((p.alpha + k) * log_x - p.lambda * x) * rho_eval(p.nu + 1, x * p.t, qctx);
        };
        return integrate_semiline<Real>(f, qctx.tolerance()).value;
    };
    const Real tol_rel = 1000 * qctx.tolerance();
    IdentityReport rep{"rho-shift-integrals", p, {}};

    ScalarIdentity first;
    first.add(integral(0)).add(Real(-(2 * n + 1)) - p.alpha - p.nu).add(p.lambda * T.B[n]);
    rep.residuals.push_back(make_residual("square-against-shifted-kernel", n, std::nullopt, first.residual(),
                                          tol_rel * first.scale()));

    const Real A2 = T.A[n] * T.A[n], A2next = T.A[n + 1] * T.A[n + 1];
    ScalarIdentity second;
    second.add(integral(1))
        .add(-(p.alpha + 2 * (n + 1) + p.nu) * T.B[n])
        .add(p.lambda * (A2next + T.B[n] * T.B[n] + A2))
        .add(2 * T.b_over_a(n));
    rep.residuals.push_back(make_residual("first-moment-against-shifted-kernel", n, std::nullopt,
                                          second.residual(), tol_rel * second.scale()));
    return rep;
}

/// Q_n = t dP_n/dt - x d_x P_n with d/dt along `axis` (t, or the path
/// lambda = 1 - t). int Q_n x^m omega vanishes for m <= n-2 and equals
/// -(lambda + t [path]) / a_n at m = n-1.
inline IdentityReport check_quasi_orthogonality(const ParamGridTables& g, int n, Axis axis = Axis::t)
{
    detail::require_degree(g, n, 0, "check_quasi_orthogonality");
    if (n < 1)
        throw DomainError("check_quasi_orthogonality: requires n >= 1");
    if (axis == Axis::lambda)
        throw DomainError("check_quasi_orthogonality: axis must be t or path");
    PrecisionScope scope(g.ctx.digits);
    const auto& T = g.table;
    PolyIdentity q;
    q.add(g.along(axis).coeffs[n], g.center.t);
    q.add(euler_derivative(T.coeffs[n]), Real(-1));
    const auto& Q = q.sum();
    const Real zero_level = pow10(-20);
    const bool path = axis == Axis::path;
    IdentityReport rep{path ? "path-quasi-orthogonality" : "quasi-orthogonality", g.center, {}};

    Real worst_zero(0);
    for (int m = 0; m + 2 <= n; ++m) {
        const Real scale = moment_functional_scale(T, Q, m);
        const Real value = moment_functional(T, Q, m);
        worst_zero = max(worst_zero, abs(value) / scale);
        rep.residuals.push_back(make_residual("Q-against-lower-power", n, m, value, zero_level * scale));
    }
    const int m = n - 1;
    const Real scale = moment_functional_scale(T, Q, m);
    const Real value = moment_functional(T, Q, m);
    rep.residuals.push_back(make_lower_bound("Q-against-power-n-1", n, m, value, 1000 * zero_level * scale,
                                             "must exceed 10^3 times the zero level"));
    const Real expected = -(g.center.lambda + (path ? g.center.t : Real(0))) / T.a[n];
    rep.residuals.push_back(make_residual("Q-against-power-n-1-value", n, m, value - expected,
                                          fd_tolerance(g, scale)));
    if (path) {
        // int Q x^m omega + int P_n x^{m+1} omega = 0 for every m <= n-1
        for (int k = 0; k < n; ++k) {
            ScalarIdentity s;
            s.add(moment_functional(T, Q, k)).add(moment_functional(T, T.coeffs[n], k + 1));
            const Real sc = max(moment_functional_scale(T, Q, k), moment_functional_scale(T, T.coeffs[n], k + 1));
            rep.residuals.push_back(make_residual("Q-plus-shifted-P-balance", n, k, s.residual(), fd_tolerance(g, sc)));
        }
    }
    return rep;
}

/// One-parameter family lambda = 1 - t: the polynomial law and the two
/// Toda-type laws for b_n/a_n and B_n, plus path quasi-orthogonality (n >= 1).
inline IdentityReport check_section4(const ParamGridTables& g, int n)
{
    detail::require_degree(g, n, 1, "check_section4");
    PrecisionScope scope(g.ctx.digits);
    if (abs(g.center.lambda + g.center.t - 1) > pow10(-(g.ctx.digits - 5)))
        throw DomainError("check_section4: center must satisfy lambda + t = 1");
    const auto& T = g.table;
    const auto& D = g.along(Axis::path);
    const Real& t = g.center.t;
    IdentityReport rep{"section4", g.center, {}};

    PolyIdentity law;
    law.add(D.coeffs[n], t);
    law.add(euler_derivative(T.coeffs[n]), Real(-1));
    law.add(T.coeffs[n], -(t * D.a[n] / T.a[n] - n));
    if (n >= 1) law.add(T.coeffs[n - 1], T.A[n]);
    rep.residuals.push_back(detail::fd_residual(g, "path-derivative-of-P", n, law));

    const Real A2 = T.A[n] * T.A[n], A2next = T.A[n + 1] * T.A[n + 1];
    rep.residuals.push_back(detail::fd_residual(
        g, "path-toda-b/a", n, ScalarIdentity().add(T.b_over_a(n)).add(t * D.b_over_a(T, n)).add(A2)));
    rep.residuals.push_back(detail::fd_residual(
        g, "path-toda-B", n, ScalarIdentity().add(T.B[n]).add(t * D.B[n]).add(-A2next).add(A2)));
    if (n >= 1) rep.append(check_quasi_orthogonality(g, n, Axis::path));
    return rep;
}

/// Path endpoints. At t = 0 (lambda = 1) the table is the modified Laguerre
/// one; at t = 1 (lambda = 0) the moments are the Prudnikov ones. Tables at
/// t = delta and t = 1 - delta must approach them.
inline IdentityReport check_section4_endpoints(const Real& alpha, const Real& nu, int N, const PrecisionContext& ctx,
                                               const Real& delta)
{
    PrecisionScope scope(ctx.digits);
    const Real exact_tol = pow10(-40);
    const Real near_tol = sqrt(delta);
    IdentityReport rep{"section4-endpoints", Params{alpha, nu, Real(1), Real(0)}, {}};

    auto start = build_recurrence(Params::make(alpha, nu, Real(1), Real(0)), N, ctx);
    auto near_start = build_recurrence(Params::make(alpha, nu, 1 - delta, delta), N, ctx);
    const auto lag = modified_laguerre_table(start.params, N, start.digits);
    for (int n = 0; n <= N; ++n) {
        Real coeff_gap(0);
        for (int k = 0; k <= n; ++k)
            coeff_gap = max(coeff_gap, abs(start.coeffs[n][k] - lag[n][k]));
        rep.residuals.push_back(make_residual("start-matches-laguerre", n, std::nullopt, coeff_gap, exact_tol));
        rep.residuals.push_back(make_residual("start-B", n, std::nullopt, start.B[n] - (2 * n + 1 + alpha), exact_tol));
        rep.residuals.push_back(
            make_residual("start-A", n, std::nullopt, start.A[n] - sqrt(n * (n + alpha)), exact_tol));
        rep.residuals.push_back(make_residual("near-start-B", n, std::nullopt, near_start.B[n] - start.B[n],
                                              near_tol * start.B[n]));
    }

    auto end = build_recurrence(Params::make(alpha, nu, Real(0), Real(1)), N, ctx);
    auto near_end = build_recurrence(Params::make(alpha, nu, delta, 1 - delta), N, ctx);
    for (int k = 0; k <= 2 * N + 1; ++k) {
        const Real prudnikov = exp(lgamma(alpha + k + 1) + lgamma(alpha + nu + k + 1));
        rep.residuals.push_back(make_residual("end-moment", k, std::nullopt, end.moments.mu[k] - prudnikov,
                                              exact_tol * prudnikov));
    }
    for (int n = 0; n <= N; ++n)
        rep.residuals.push_back(
            make_residual("near-end-B", n, std::nullopt, near_end.B[n] - end.B[n], near_tol * end.B[n]));
    return rep;
}

/// B_n = 2 d_lambda a_n / a_n at steps h and h/2: the residual must shrink by
/// at least the second-order factor 4 (up to 10%).
inline IdentityReport check_refinement(const Params& center, int n, const PrecisionContext& ctx, const Real& h)
{
    PrecisionScope scope(ctx.digits);
    auto residual = [&](const Real& step) {
        auto g = build_grid(center, n, ctx, {Axis::lambda}, step);
        return abs(g.table.B[n] - 2 * g.along(Axis::lambda).a[n] / g.table.a[n]);
    };
    const Real coarse = residual(h);
    const Real fine = residual(h / 2);
    IdentityReport rep{"refinement", center, {}};
    rep.residuals.push_back(make_lower_bound("B-from-lambda-derivative-of-a-refinement", n, std::nullopt,
                                             coarse / fine, Real(36) / 10,
                                             "ratio of residuals at h and h/2"));
    return rep;
}

struct ReconstructionOptions {
    int points = 12;
    int layers = 10;
    int digits = 40;
    double rel_tol = 1e-8;
};

namespace detail {

inline PrecisionContext reconstruction_context(const PrecisionContext& ctx, const ReconstructionOptions& opt)
{
    const int d = std::max(30, std::min(opt.digits, ctx.digits));
    return PrecisionContext::make(d);
}

/// Relative error of a reconstruction against the direct value. The
/// denominator is the larger of |direct| and the size of the pieces summed.
inline Residual reconstruction_residual(const char* id, int n, const Real& x, const Real& recon, const Real& direct,
                                        const Real& pieces, double rel_tol)
{
    const Real denom = max(abs(direct), pieces);
    return make_residual(id, n, std::nullopt, (recon - direct) / denom, Real(rel_tol),
                         "x = " + x.to_string(6));
}

} // namespace detail

/// P_n(x; lambda, t) = int_0^lambda E(xi) A_n(xi,t) P_{n-1}(x; xi, t) dxi + E(0) P_n(x; 0, t),
/// E(xi) = exp(1/2 int_xi^lambda B_n(y, t) dy), with the xi-integrals on graded
/// Gauss rules of recurrence tables.
inline IdentityReport check_thm4_lambda(const Params& center, int n_max, const std::vector<Real>& xs,
                                        const PrecisionContext& ctx, ReconstructionOptions opt = {})
{
    if (!(center.lambda > 0) || !(center.t > 0))
        throw DomainError("check_thm4_lambda: requires lambda > 0 and t > 0");
    const auto qctx = detail::reconstruction_context(ctx, opt);
    PrecisionScope scope(qctx.digits);
    const auto direct = build_recurrence(center, n_max, qctx);
    const auto prudnikov = build_recurrence(center.with_lambda(Real(0)), n_max, qctx);
    const auto rule = graded_rule(Real(0), center.lambda, opt.points, opt.layers);
    std::vector<RecurrenceTable> tables;
    for (const auto& xi : rule.nodes)
        tables.push_back(build_recurrence(center.with_lambda(xi), n_max, qctx));

    IdentityReport rep{"thm4-lambda", center, {}};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Real> B(rule.nodes.size());
        for (std::size_t i = 0; i < B.size(); ++i) B[i] = tables[i].B[n];
        const auto upto = cumulative_integral(rule, B);
        Real total(0);
        for (std::size_t i = 0; i < B.size(); ++i) total += rule.weights[i] * B[i];
        for (const auto& x : xs) {
            Real integral(0), pieces(0);
            for (std::size_t i = 0; i < B.size(); ++i) {
                const Real term = rule.weights[i] * exp((total - upto[i]) / 2) * tables[i].A[n] *
                                  eval_poly(tables[i], n - 1, x, EvalRoute::coefficients);
                integral += term;
                pieces += abs(term);
            }
            const Real boundary = exp(total / 2) * eval_poly(prudnikov, n, x, EvalRoute::coefficients);
            const Real recon = integral + boundary;
            rep.residuals.push_back(detail::reconstruction_residual(
                "lambda-integral-reconstruction", n, x, recon, eval_poly(direct, n, x, EvalRoute::coefficients),
                max(pieces, abs(boundary)), opt.rel_tol));
        }
    }
    return rep;
}

/// P_n(x; lambda, t) = a_n(lambda,t) [ int_0^t G(y) dy / (y a_n(lambda,y)) + Lhat_n(x)/a_n(lambda,0) ],
/// G = x d_x P_n - n P_n - lambda A_n P_{n-1} at (lambda, y), Lhat_n the t = 0
/// (modified Laguerre) polynomial. The integrand behaves like y^{nu-1} at 0,
/// handled by geometric grading.
inline IdentityReport check_thm4_t(const Params& center, int n_max, const std::vector<Real>& xs,
                                   const PrecisionContext& ctx, ReconstructionOptions opt = {})
{
    if (!(center.lambda > 0) || !(center.t > 0))
        throw DomainError("check_thm4_t: requires lambda > 0 and t > 0");
    if (!(center.nu > 0))
        throw DomainError("check_thm4_t: requires nu > 0 (t = 0 data)");
    const auto qctx = detail::reconstruction_context(ctx, opt);
    PrecisionScope scope(qctx.digits);
    const auto direct = build_recurrence(center, n_max, qctx);
    const auto rule = graded_rule(Real(0), center.t, opt.points, opt.layers);
    std::vector<RecurrenceTable> tables;
    for (const auto& y : rule.nodes)
        tables.push_back(build_recurrence(center.with_t(y), n_max, qctx));

    IdentityReport rep{"thm4-t", center, {}};
    for (int n = 0; n <= n_max; ++n) {
        const auto lhat = modified_laguerre_coefficients(n, center.alpha, center.nu, center.lambda);
        for (const auto& x : xs) {
            Real integral(0), pieces(0);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const auto& T = tables[i];
                Real g = x * poly_eval(poly_derivative(T.coeffs[n]), x) - n * poly_eval(T.coeffs[n], x);
                if (n >= 1) g -= center.lambda * T.A[n] * poly_eval(T.coeffs[n - 1], x);
                const Real term = rule.weights[i] * g / (rule.nodes[i] * T.a[n]);
                integral += term;
                pieces += abs(term);
            }
            const Real initial = poly_eval(lhat, x) / lhat[n];
            const Real recon = direct.a[n] * (integral + initial);
            rep.residuals.push_back(detail::reconstruction_residual(
                "t-integral-reconstruction", n, x, recon, poly_eval(direct.coeffs[n], x),
                direct.a[n] * max(pieces, abs(initial)), opt.rel_tol));
        }
    }
    return rep;
}

} // namespace rhopoly

#endif // RHOPOLY_CALCULUS_HPP
