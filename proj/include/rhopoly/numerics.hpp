#ifndef RHOPOLY_NUMERICS_HPP
#define RHOPOLY_NUMERICS_HPP

// Precision-managed elementary numerics: contexts and parameter points,
// gamma functions, double-exponential quadrature over (0, inf), Gauss-Legendre
// rules on finite intervals and finite-difference derivatives.

#include "rhopoly/real.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace rhopoly {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or arguments outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure (quadrature, eigen-iteration) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A Hankel matrix that must be positive definite was not.
class PositiveDefiniteError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// PrecisionContext

/// Working precision, target tolerance and escalation cap.
///
/// Invariants: digits >= 30, tol >= 10^-(digits-10), digits <= max_digits <= 300.
struct PrecisionContext {
    int digits = 120;
    double tol = 1e-110;
    int max_digits = 240;

    static PrecisionContext make(int digits, std::optional<double> tol = {}, int max_digits = 0)
    {
        PrecisionContext ctx;
        ctx.digits = digits;
        ctx.tol = tol ? *tol : std::pow(10.0, -(digits - 10));
        ctx.max_digits = max_digits > 0 ? max_digits : std::max(240, digits);
        ctx.validate();
        return ctx;
    }

    void validate() const
    {
        if (digits < 30)
            throw DomainError("precision: digits must be >= 30");
        if (max_digits < digits || max_digits > 300)
            throw DomainError("precision: need digits <= max_digits <= 300");
        if (!(tol > 0.0) || !std::isfinite(tol))
            throw DomainError("precision: tol must be positive");
        // Allow for the rounding of 10^-(digits-10) to double.
        if (tol < std::pow(10.0, -(digits - 10)) * (1.0 - 1e-12))
            throw DomainError("precision: tol below what the working precision delivers");
    }

    PrecisionContext with_tol(double new_tol) const
    {
        PrecisionContext c = *this;
        c.tol = new_tol;
        c.validate();
        return c;
    }

    bool can_escalate() const { return digits < max_digits; }

    /// Doubles the working precision (never beyond max_digits); tol is kept.
    PrecisionContext escalated() const
    {
        PrecisionContext c = *this;
        c.digits = std::min(2 * digits, max_digits);
        return c;
    }

    Real tolerance() const { return Real(tol); }
};

// ---------------------------------------------------------------------------
// Params

/// The parameter point (alpha, nu, lambda, t) of the weight
/// x^alpha e^{-lambda x} rho_nu(x t).
struct Params {
    Real alpha;
    Real nu;
    Real lambda;
    Real t;

    static Params make(const Real& alpha, const Real& nu, const Real& lambda, const Real& t)
    {
        Params p{alpha, nu, lambda, t};
        p.validate();
        return p;
    }

    static Params parse(std::string_view alpha, std::string_view nu, std::string_view lambda,
                        std::string_view t)
    {
        return make(Real(alpha), Real(nu), Real(lambda), Real(t));
    }

    void validate() const
    {
        if (!(alpha > -1))
            throw DomainError("params: alpha must be > -1");
        if (nu < 0)
            throw DomainError("params: nu must be >= 0");
        if (lambda < 0)
            throw DomainError("params: lambda must be >= 0");
        if (t < 0)
            throw DomainError("params: t must be >= 0");
        if (is_zero(lambda) && is_zero(t))
            throw DomainError("params: lambda^2 + t^2 must be nonzero");
        if (is_zero(t) && is_zero(nu))
            throw DomainError("params: t = 0 requires nu > 0 (rho_nu(0) = Gamma(nu))");
    }

    Params with_lambda(const Real& l) const { return Params{alpha, nu, l, t}; }
    Params with_t(const Real& tt) const { return Params{alpha, nu, lambda, tt}; }

    std::string describe(int digits = 8) const
    {
        std::ostringstream os;
        os << "(alpha=" << alpha.to_string(digits) << ", nu=" << nu.to_string(digits)
           << ", lambda=" << lambda.to_string(digits) << ", t=" << t.to_string(digits) << ")";
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Gamma function

inline bool is_nonpositive_integer(const Real& z) { return z <= 0 && is_integer(z); }

/// Euler's gamma function.
inline Real gamma_fn(const Real& z, const PrecisionContext& ctx)
{
    if (is_nonpositive_integer(z))
        throw DomainError("gamma_fn: pole at non-positive integer " + z.to_string(6));
    PrecisionScope scope(ctx.digits);
    return tgamma(z);
}

/// log|Gamma(z)|.
inline Real log_gamma(const Real& z, const PrecisionContext& ctx)
{
    if (is_nonpositive_integer(z))
        throw DomainError("log_gamma: pole at non-positive integer " + z.to_string(6));
    PrecisionScope scope(ctx.digits);
    return lgamma(z);
}

/// Rising factorial (a)_n.
inline Real pochhammer(const Real& a, int n)
{
    Real r(1);
    for (int k = 0; k < n; ++k)
        r *= a + k;
    return r;
}

inline Real factorial(int n)
{
    Real r(1);
    for (int k = 2; k <= n; ++k)
        r *= k;
    return r;
}

// ---------------------------------------------------------------------------
// Quadrature over (0, inf)

enum class QuadratureScheme { tanh_sinh, composite_gauss };

/// tanh_sinh: double-exponential rule u = exp(pi/2 sinh(tau)) with step 2^-level.
/// composite_gauss: Gauss-Legendre panels between split points (the last split
/// point is the truncation point), each panel halved per level.
struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::tanh_sinh;
    int min_level = 2;
    int max_level = 10;
    int gauss_points = 16;
    std::vector<double> split_points;
};

template <class T>
struct QuadratureLevel {
    int level;
    T value;
    T err_estimate;
    long nodes;
};

template <class T>
struct QuadratureResult {
    T value;
    T err_estimate;
    T l1_norm;
    int level = 0;
    long evaluations = 0;
    std::vector<QuadratureLevel<T>> history;
};

namespace detail {

template <class T>
struct ExpSinhNode {
    T u;
    T log_u;
    T jacobian;
};

template <class T>
T pi_value()
{
    if constexpr (std::is_same_v<T, double>)
        return 3.14159265358979323846;
    else
        return pi();
}

/// Nodes of one refinement level walking away from tau = 0 in one direction.
/// Level 0 holds tau = 0, 1, 2, ... ; level l > 0 holds the odd multiples of 2^-l.
template <class T>
class ExpSinhLevelNodes {
public:
    ExpSinhLevelNodes(int level, int direction) : level_(level), direction_(direction) {}

    const ExpSinhNode<T>& at(std::size_t i)
    {
        while (nodes_.size() <= i)
            nodes_.push_back(make(nodes_.size()));
        return nodes_[i];
    }

    T tau(std::size_t i) const
    {
        long k = level_ == 0 ? static_cast<long>(i) : static_cast<long>(2 * i + 1);
        if (level_ == 0 && direction_ < 0) k = static_cast<long>(i) + 1;
        return T(direction_) * T(k) * step();
    }

    T step() const
    {
        if constexpr (std::is_same_v<T, double>)
            return std::ldexp(1.0, -level_);
        else
            return ldexp(T(1), -level_);
    }

private:
    ExpSinhNode<T> make(std::size_t i) const
    {
        using std::cosh;
        using std::exp;
        using std::sinh;
        const T half_pi = pi_value<T>() / 2;
        const T tau_i = tau(i);
        const T s = half_pi * sinh(tau_i);
        const T u = exp(s);
        return ExpSinhNode<T>{u, s, half_pi * cosh(tau_i) * u};
    }

    int level_;
    int direction_;
    std::deque<ExpSinhNode<T>> nodes_; // stable references under nested use
};

template <class T>
class ExpSinhCache {
public:
    ExpSinhLevelNodes<T>& get(mpfr_prec_t bits, int level, int direction)
    {
        auto key = std::make_tuple(bits, level, direction);
        auto it = levels_.find(key);
        if (it == levels_.end())
            it = levels_.emplace(key, ExpSinhLevelNodes<T>(level, direction)).first;
        return it->second;
    }

private:
    std::map<std::tuple<mpfr_prec_t, int, int>, ExpSinhLevelNodes<T>> levels_;
};

template <class T>
ExpSinhCache<T>& exp_sinh_cache()
{
    thread_local ExpSinhCache<T> cache;
    return cache;
}

template <class T>
mpfr_prec_t cache_bits()
{
    if constexpr (std::is_same_v<T, double>)
        return 53;
    else
        return working_bits();
}

template <class T>
T tau_limit()
{
    if constexpr (std::is_same_v<T, double>)
        return 6.5;
    else
        return T(12);
}

template <class T, class F>
T call_integrand(F& f, const ExpSinhNode<T>& node)
{
    if constexpr (std::is_invocable_v<F&, const T&, const T&>)
        return f(node.u, node.log_u);
    else
        return f(node.u);
}

template <class T>
T abs_value(const T& x)
{
    using std::abs;
    return abs(x);
}

template <class T>
std::string show(const T& x)
{
    if constexpr (std::is_same_v<T, double>) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    } else {
        return x.to_string(25);
    }
}

template <class T, class F>
QuadratureResult<T> exp_sinh(F& f, const T& rel_tol, const QuadratureSpec& spec)
{
    const T negligible = rel_tol / T(1000);
    const T limit = tau_limit<T>();
    auto& cache = exp_sinh_cache<T>();
    const mpfr_prec_t bits = cache_bits<T>();

    QuadratureResult<T> result{T(0), T(0), T(0)};
    T sum(0), l1(0), previous(0);
    for (int level = 0; level <= spec.max_level; ++level) {
        T level_sum(0), level_l1(0);
        long nodes = 0;
        for (int direction : {1, -1}) {
            auto& walker = cache.get(bits, level, direction);
            int quiet = 0;
            for (std::size_t i = 0;; ++i) {
                T tau = walker.tau(i);
                if (abs_value(tau) > limit) break;
                const auto& node = walker.at(i);
                T term = call_integrand<T>(f, node) * node.jacobian;
                ++nodes;
                level_sum += term;
                T a = abs_value(term);
                level_l1 += a;
                T scale = l1 + level_l1 * walker.step();
                if (a * walker.step() <= negligible * scale)
                    ++quiet;
                else
                    quiet = 0;
                if (quiet >= 3) break;
            }
        }
        result.evaluations += nodes;
        const T h = cache.get(bits, level, 1).step();
        if (level == 0) {
            sum = level_sum * h;
            l1 = level_l1 * h;
        } else {
            sum = sum / T(2) + level_sum * h;
            l1 = l1 / T(2) + level_l1 * h;
        }
        T err = level == 0 ? abs_value(sum) : abs_value(sum - previous);
        result.history.push_back({level, sum, err, nodes});
        result.value = sum;
        result.err_estimate = err;
        result.l1_norm = l1;
        result.level = level;
        if (level >= spec.min_level && err <= rel_tol * l1)
            return result;
        previous = sum;
    }
    const auto& h = result.history;
    std::string msg = "integrate_semiline: no convergence after level " +
                      std::to_string(spec.max_level) + "; last levels " +
                      show(h[h.size() - 2].value) + " and " + show(h.back().value);
    throw ConvergenceError(msg);
}

} // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1] at the working precision.
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

/// m-point Gauss-Legendre rule computed by Newton iteration on P_m.
inline const GaussLegendre& gauss_legendre(int m)
{
    thread_local std::map<std::pair<mpfr_prec_t, int>, GaussLegendre> cache;
    auto key = std::make_pair(working_bits(), m);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    GaussLegendre rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const Real eps = pow10(-working_digits() - 3);
    const Real pi_r = pi();
    for (int i = 0; i < (m + 1) / 2; ++i) {
        Real x = cos(pi_r * (Real(i) + Real(0.75)) / (Real(m) + Real(0.5)));
        Real dp;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0(1), p1 = x;
            for (int k = 2; k <= m; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            // p1 = P_m(x), p0 = P_{m-1}(x)
            dp = m * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= eps)
                break;
        }
        {
            Real p0(1), p1 = x;
            for (int k = 2; k <= m; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1)
        rule.nodes[m / 2] = Real(0);
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace detail {

template <class F>
QuadratureResult<Real> composite_gauss(F& f, const Real& rel_tol, const QuadratureSpec& spec)
{
    if (spec.split_points.empty())
        throw DomainError("integrate_semiline: composite Gauss needs a truncation point");
    std::vector<Real> edges{Real(0)};
    for (double s : spec.split_points) {
        if (!(s > 0) || Real(s) <= edges.back())
            throw DomainError("integrate_semiline: split points must be positive and increasing");
        edges.emplace_back(s);
    }
    const auto& gl = gauss_legendre(spec.gauss_points);
    QuadratureResult<Real> result{Real(0), Real(0), Real(0)};
    Real previous;
    for (int level = 0; level <= spec.max_level; ++level) {
        const int pieces = 1 << level;
        Real sum(0), l1(0);
        long nodes = 0;
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const Real width = (edges[e + 1] - edges[e]) / pieces;
            for (int p = 0; p < pieces; ++p) {
                const Real a = edges[e] + width * p;
                const Real half = width / 2;
                const Real mid = a + half;
                for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                    const Real x = mid + half * gl.nodes[i];
                    Real term;
                    if constexpr (std::is_invocable_v<F&, const Real&, const Real&>)
                        term = gl.weights[i] * half * f(x, log(x));
                    else
                        term = gl.weights[i] * half * f(x);
                    sum += term;
                    l1 += abs(term);
                    ++nodes;
                }
            }
        }
        result.evaluations += nodes;
        Real err = level == 0 ? abs(sum) : abs(sum - previous);
        result.history.push_back({level, sum, err, nodes});
        result.value = sum;
        result.err_estimate = err;
        result.l1_norm = l1;
        result.level = level;
        if (level >= std::max(1, spec.min_level) && err <= rel_tol * l1)
            return result;
        previous = sum;
    }
    const auto& h = result.history;
    throw ConvergenceError("integrate_semiline: composite Gauss did not converge; last levels " +
                           h[h.size() - 2].value.to_string(25) + " and " +
                           h.back().value.to_string(25));
}

} // namespace detail

/// Integrates f over (0, inf) to relative accuracy rel_tol (relative to the
/// integral of |f|). Works for T = double and T = Real. The integrand is never
/// evaluated at 0. A callable accepting (u, log u) receives both.
template <class T, class F>
QuadratureResult<T> integrate_semiline(F&& f, const T& rel_tol, const QuadratureSpec& spec = {})
{
    if (spec.scheme == QuadratureScheme::composite_gauss) {
        if constexpr (std::is_same_v<T, Real>)
            return detail::composite_gauss(f, rel_tol, spec);
        else
            throw DomainError("integrate_semiline: composite Gauss requires Real");
    }
    return detail::exp_sinh<T>(f, rel_tol, spec);
}

/// Real-valued integration at the context's precision and tolerance.
template <class F>
QuadratureResult<Real> integrate_semiline(F&& f, const PrecisionContext& ctx,
                                          const QuadratureSpec& spec = {})
{
    PrecisionScope scope(ctx.digits);
    return integrate_semiline<Real>(f, ctx.tolerance(), spec);
}

/// int_R g(w) dw for a positive unimodal g, analytic near the real axis and
/// decaying at both ends. Trapezoid rule on the lattice w0 + k h, summed
/// outward from w0 until three consecutive terms drop below rel_tol/1000 of
/// the running sum; h is halved until two levels agree to rel_tol.
template <class G>
Real integrate_line_trapezoid(G&& g, const Real& w0, const Real& rel_tol, Real h = Real(1) / 2,
                              int max_level = 14)
{
    const Real negligible = rel_tol / 1000;
    Real previous(0);
    for (int level = 0; level <= max_level; ++level) {
        Real sum = g(w0);
        for (int direction : {1, -1}) {
            int quiet = 0;
            for (long k = 1;; ++k) {
                const Real term = g(w0 + h * (direction * k));
                sum += term;
                quiet = term <= negligible * sum ? quiet + 1 : 0;
                if (quiet >= 3) break;
            }
        }
        const Real value = sum * h;
        if (level >= 2 && abs(value - previous) <= rel_tol * value)
            return value;
        previous = value;
        h /= 2;
    }
    throw ConvergenceError("integrate_line_trapezoid: no convergence");
}

// ---------------------------------------------------------------------------
// Integration over a finite parameter interval

/// Composite Gauss-Legendre rule on [a, b] with panels graded geometrically
/// toward a: [a, a + r^K w], [a + r^K w, a + r^{K-1} w], ..., [a + r w, b],
/// w = b - a. Handles integrable algebraic behaviour at a.
struct GradedRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
    std::vector<Real> panel_edges;
    int points_per_panel = 0;
};

inline GradedRule graded_rule(const Real& a, const Real& b, int points, int layers,
                              const Real& ratio = Real(1) / 4)
{
    GradedRule rule;
    rule.points_per_panel = points;
    const Real w = b - a;
    rule.panel_edges.push_back(a);
    for (int k = layers; k >= 1; --k)
        rule.panel_edges.push_back(a + w * pow(ratio, static_cast<long>(k)));
    rule.panel_edges.push_back(b);
    const auto& gl = gauss_legendre(points);
    for (std::size_t e = 0; e + 1 < rule.panel_edges.size(); ++e) {
        const Real half = (rule.panel_edges[e + 1] - rule.panel_edges[e]) / 2;
        const Real mid = rule.panel_edges[e] + half;
        for (int i = 0; i < points; ++i) {
            rule.nodes.push_back(mid + half * gl.nodes[i]);
            rule.weights.push_back(half * gl.weights[i]);
        }
    }
    return rule;
}

/// For each node x_i of a graded rule, the integral of the interpolant of
/// values[] from the rule's left end to x_i (panelwise Lagrange interpolation
/// through the panel's Gauss nodes, integrated exactly).
inline std::vector<Real> cumulative_integral(const GradedRule& rule, const std::vector<Real>& values)
{
    const int m = rule.points_per_panel;
    const auto& gl = gauss_legendre(m);
    // Legendre values P_k(x_j) for the reference nodes.
    std::vector<std::vector<Real>> leg(m + 1, std::vector<Real>(m));
    for (int j = 0; j < m; ++j) {
        const Real& x = gl.nodes[j];
        leg[0][j] = Real(1);
        if (m >= 1) leg[1][j] = x;
        for (int k = 1; k < m; ++k)
            leg[k + 1][j] = ((2 * k + 1) * x * leg[k][j] - k * leg[k - 1][j]) / (k + 1);
    }
    // integral_{-1}^{x_i} P_k = (P_{k+1}(x_i) - P_{k-1}(x_i)) / (2k+1), k >= 1.
    std::vector<std::vector<Real>> spectral(m, std::vector<Real>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Real s(0);
            for (int k = 0; k < m; ++k) {
                Real integral_pk = k == 0 ? gl.nodes[i] + 1
                                          : (leg[k + 1][i] - leg[k - 1][i]) / (2 * k + 1);
                s += gl.weights[j] * leg[k][j] * (Real(2 * k + 1) / 2) * integral_pk;
            }
            spectral[i][j] = s;
        }
    }
    std::vector<Real> out(values.size());
    Real before(0);
    const std::size_t panels = rule.panel_edges.size() - 1;
    for (std::size_t p = 0; p < panels; ++p) {
        const Real half = (rule.panel_edges[p + 1] - rule.panel_edges[p]) / 2;
        Real panel_total(0);
        for (int i = 0; i < m; ++i) {
            Real s(0);
            for (int j = 0; j < m; ++j)
                s += spectral[i][j] * values[p * m + j];
            out[p * m + i] = before + half * s;
            panel_total += gl.weights[i] * values[p * m + i];
        }
        before += half * panel_total;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite differences

struct DerivativeEstimate {
    Real value;
    Real err_estimate;
    Real step;
    bool one_sided = false;
};

/// Default step 10^{-digits/(order+2)}: balances O(h^2) truncation against
/// O(10^-digits / h^order) cancellation.
inline Real default_step(int digits, int order = 1)
{
    return pow10(-static_cast<long>(digits / (order + 2)));
}

namespace detail {

template <class G>
Real central_stencil(G& g, const Real& at, const Real& h, int order)
{
    switch (order) {
    case 1:
        return (g(at + h) - g(at - h)) / (2 * h);
    case 2:
        return (g(at + h) - 2 * g(at) + g(at - h)) / (h * h);
    case 3:
        return (g(at + 2 * h) - 2 * g(at + h) + 2 * g(at - h) - g(at - 2 * h)) / (2 * h * h * h);
    default:
        throw DomainError("finite difference: order must be 1, 2 or 3");
    }
}

template <class G>
Real forward_stencil(G& g, const Real& at, const Real& h)
{
    return (-3 * g(at) + 4 * g(at + h) - g(at + 2 * h)) / (2 * h);
}

} // namespace detail

/// Derivative of order 1..3 by a second-order stencil plus one Richardson level.
/// If lower_bound is given and the central stencil would cross it, a one-sided
/// (forward) first-derivative stencil is used and the estimate is flagged.
template <class G>
DerivativeEstimate finite_difference(G&& g, const Real& at, int order, const PrecisionContext& ctx,
                                     std::optional<Real> step = {},
                                     std::optional<Real> lower_bound = {})
{
    PrecisionScope scope(ctx.digits);
    const Real h = step ? *step : default_step(ctx.digits, order);
    DerivativeEstimate est;
    est.step = h;
    const Real reach = order == 3 ? 2 * h : h;
    Real coarse, fine;
    if (lower_bound && at - reach < *lower_bound) {
        if (order != 1)
            throw DomainError("finite difference: one-sided stencil only for first derivatives");
        est.one_sided = true;
        coarse = detail::forward_stencil(g, at, h);
        fine = detail::forward_stencil(g, at, h / 2);
    } else {
        coarse = detail::central_stencil(g, at, h, order);
        fine = detail::central_stencil(g, at, h / 2, order);
    }
    est.value = (4 * fine - coarse) / 3;
    const Real rounding = pow10(-ctx.digits) * max(Real(1), abs(g(at))) / pow(h, order);
    est.err_estimate = abs(fine - coarse) / 3 + rounding;
    // A one-sided estimate at a boundary carries a degraded bound.
    if (est.one_sided)
        est.err_estimate *= 10;
    return est;
}

/// First derivative of a scalar function of one parameter.
template <class G>
DerivativeEstimate param_derivative(G&& g, const Real& at, const PrecisionContext& ctx,
                                    std::optional<Real> lower_bound = {})
{
    return finite_difference(std::forward<G>(g), at, 1, ctx, std::nullopt, lower_bound);
}

/// Componentwise first derivative of a vector-valued function by the same
/// central stencil with one Richardson level. f(at + k h/2) is requested for
/// k = -2, -1, 1, 2.
template <class F>
std::vector<Real> central_derivative_vec(F&& f, const Real& at, const Real& h)
{
    auto fm2 = f(at - h);
    auto fm1 = f(at - h / 2);
    auto fp1 = f(at + h / 2);
    auto fp2 = f(at + h);
    std::vector<Real> out(fm2.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        Real coarse = (fp2[i] - fm2[i]) / (2 * h);
        Real fine = (fp1[i] - fm1[i]) / h;
        out[i] = (4 * fine - coarse) / 3;
    }
    return out;
}

} // namespace rhopoly

#endif // RHOPOLY_NUMERICS_HPP
