#ifndef RHOPOLY_KERNELS_HPP
#define RHOPOLY_KERNELS_HPP

// The scaled Macdonald function rho_nu(x) = 2 x^{nu/2} K_nu(2 sqrt(x)), the
// Tricomi function Psi(a, b; z), the weight omega(x) = x^alpha e^{-lambda x}
// rho_nu(x t), and pointwise checks of the kernel identities.

#include "rhopoly/laguerre.hpp"
#include "rhopoly/numerics.hpp"

#include <cmath>
#include <string>

namespace rhopoly {

enum class RhoRoute { laplace_integral, bessel_k, recurrence };

inline std::string to_string(RhoRoute r)
{
    switch (r) {
    case RhoRoute::laplace_integral: return "laplace-integral";
    case RhoRoute::bessel_k: return "bessel-k";
    case RhoRoute::recurrence: return "recurrence";
    }
    return "?";
}

struct KernelPoint {
    Real nu;
    Real x;
    Real value;
    RhoRoute route;
};

namespace detail {

/// int_R exp(mu w - e^w - x e^{-w}) dw for mu >= 0, x < 1, by the trapezoidal
/// rule on a window outside which the integrand is below the tolerance. The
/// integrand is entire and decays at both ends, so halving the step squares
/// the error.
inline Real rho_log_trapezoid(const Real& mu, const Real& x, const PrecisionContext& ctx)
{
    const Real tol = ctx.tolerance();
    const Real log_cut = log(-log(tol) + 10); // e^{-e^w} negligible beyond w = log_cut
    Real lo = log(x) - log_cut;
    if (mu > 0)
        lo = max(lo, (log(tol) - 10) / mu);
    const Real hi = log_cut + 1;
    auto f = [&](const Real& w) {
        const Real e = exp(w);
        return exp(mu * w - e - x / e);
    };
    long panels = (hi - lo).to_long() * 2 + 2;
    Real step = (hi - lo) / panels;
    Real sum = (f(lo) + f(hi)) / 2;
    for (long i = 1; i < panels; ++i)
        sum += f(lo + step * i);
    Real value = sum * step;
    for (int level = 1; level <= 12; ++level) {
        Real mid(0);
        for (long i = 0; i < panels; ++i)
            mid += f(lo + step * (2 * i + 1) / 2);
        sum += mid;
        panels *= 2;
        step /= 2;
        const Real next = sum * step;
        const Real err = abs(next - value);
        value = next;
        if (level >= 2 && err <= tol * value)
            return value;
    }
    throw ConvergenceError("rho_eval: trapezoidal rule did not converge at x = " + x.to_string(10));
}

} // namespace detail

/// rho_nu(x) from the Laplace integral  int_0^inf y^{nu-1} e^{-y-x/y} dy.
///
/// For sqrt(x) >= 1, y = sqrt(x) e^s and folding s -> -s give
///   x^{nu/2} e^{-2 sqrt(x)} int_0^inf 2 cosh(nu s) e^{-4 sqrt(x) sinh^2(s/2)} ds,
/// and s = c sigma with c = x^{-1/4} keeps the peak at unit width (exp-sinh rule).
/// For sqrt(x) < 1 the integral is taken in w = log y, after mapping a negative
/// order through rho_{-mu}(x) = x^{-mu} rho_mu(x). Any real nu; x > 0.
inline Real rho_eval(const Real& nu, const Real& x, const PrecisionContext& ctx)
{
    if (!(x > 0))
        throw DomainError("rho_eval: x must be > 0 (rho_0 is singular at 0), got " + x.to_string(6));
    PrecisionScope scope(ctx.digits);
    const Real sx = sqrt(x);
    if (sx < 1) {
        const Real r = detail::rho_log_trapezoid(abs(nu), x, ctx);
        return nu < 0 ? exp(nu * log(x)) * r : r;
    }
    const Real c = 1 / sqrt(sx);
    const Real four_sx = 4 * sx;
    auto integrand = [&](const Real& sigma) {
        const Real s = c * sigma;
        const Real sh = sinh(s / 2);
        const Real e = four_sx * sh * sh;
        return exp(nu * s - e) + exp(-nu * s - e);
    };
    auto r = integrate_semiline<Real>(integrand, ctx.tolerance());
    return exp(nu / 2 * log(x) - 2 * sx) * c * r.value;
}

/// rho_nu(x) by the selected route. bessel_k evaluates 2 x^{nu/2} K_nu(2 sqrt x)
/// in double precision; recurrence uses rho_nu = (nu-1) rho_{nu-1} + x rho_{nu-2}.
inline KernelPoint rho_point(const Real& nu, const Real& x, RhoRoute route, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    KernelPoint kp{nu, x, Real(0), route};
    switch (route) {
    case RhoRoute::laplace_integral:
        kp.value = rho_eval(nu, x, ctx);
        break;
    case RhoRoute::bessel_k: {
        if (!(x > 0)) throw DomainError("rho_point: x must be > 0");
        const double xd = x.to_double(), nd = std::fabs(nu.to_double());
        kp.value = Real(2.0 * std::pow(xd, nu.to_double() / 2) * std::cyl_bessel_k(nd, 2.0 * std::sqrt(xd)));
        break;
    }
    case RhoRoute::recurrence:
        kp.value = (nu - 1) * rho_eval(nu - 1, x, ctx) + x * rho_eval(nu - 2, x, ctx);
        break;
    }
    return kp;
}

/// rho_{nu+1}(x) - nu rho_nu(x) - x rho_{nu-1}(x); vanishes identically.
inline Real rho_recurrence_residual(const Real& nu, const Real& x, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    return rho_eval(nu + 1, x, ctx) - nu * rho_eval(nu, x, ctx) - x * rho_eval(nu - 1, x, ctx);
}

struct DerivativeCheck {
    Real finite_difference;
    Real expected;
    Real residual;
    Real bound;
};

/// Compares the n-th finite-difference derivative of x -> rho_nu(x) with
/// (-1)^n rho_{nu-n}(x), n in {1, 2, 3}.
inline DerivativeCheck rho_derivative_check(const Real& nu, int n, const Real& x, const PrecisionContext& ctx)
{
    if (n < 1 || n > 3)
        throw DomainError("rho_derivative_check: n must be 1, 2 or 3");
    PrecisionScope scope(ctx.digits);
    auto g = [&](const Real& y) { return rho_eval(nu, y, ctx); };
    auto est = finite_difference(g, x, n, ctx);
    DerivativeCheck c;
    c.finite_difference = est.value;
    c.expected = rho_eval(nu - n, x, ctx);
    if (n % 2 == 1) c.expected = -c.expected;
    c.residual = abs(c.finite_difference - c.expected);
    // quadrature noise in rho is amplified by the stencil as tol / h^n
    c.bound = 10 * (est.err_estimate + ctx.tolerance() * abs(c.expected) / pow(est.step, n));
    return c;
}

/// Tricomi confluent hypergeometric function Psi(a, b; z) = U(a, b, z) from
///   (1/Gamma(a)) int_0^inf e^{-z s} s^{a-1} (1+s)^{b-a-1} ds,  a > 0, z > 0.
/// For z > 1 the substitution v = z s is used.
inline Real tricomi_psi(const Real& a, const Real& b, const Real& z, const PrecisionContext& ctx)
{
    if (!(a > 0))
        throw DomainError("tricomi_psi: a <= 0 is not supported");
    if (!(z > 0))
        throw DomainError("tricomi_psi: z must be > 0");
    PrecisionScope scope(ctx.digits);
    const Real am1 = a - 1;
    const Real power = b - a - 1;
    if (z < Real(1) / 10000) {
        // scales s ~ 1 and s ~ 1/z: uniform steps in w = log s
        auto g = [&](const Real& w) { return exp(a * w - z * exp(w) + power * log1p(exp(w))); };
        return integrate_line_trapezoid(g, Real(0), ctx.tolerance()) * exp(-lgamma(a));
    }
    if (z <= 1) {
        auto f = [&](const Real& s, const Real& log_s) {
            return exp(am1 * log_s - z * s + power * log1p(s));
        };
        auto r = integrate_semiline<Real>(f, ctx.tolerance());
        return r.value * exp(-lgamma(a));
    }
    const Real inv_z = 1 / z;
    auto f = [&](const Real& v, const Real& log_v) {
        return exp(am1 * log_v - v + power * log1p(v * inv_z));
    };
    auto r = integrate_semiline<Real>(f, ctx.tolerance());
    return r.value * exp(-lgamma(a) - a * log(z));
}

/// omega and its first two x-derivatives at a point. The derivatives are in
/// closed form through D rho_nu = -rho_{nu-1}.
struct WeightPoint {
    Params params;
    Real x;
    Real omega;
    Real omega_d1;
    Real omega_d2;
};

inline WeightPoint weight_eval(const Params& p, const Real& x, const PrecisionContext& ctx)
{
    p.validate();
    if (!(x > 0))
        throw DomainError("weight_eval: x must be > 0");
    PrecisionScope scope(ctx.digits);
    const Real g = exp(p.alpha * log(x) - p.lambda * x);
    const Real ell = p.alpha / x - p.lambda;
    const Real g1 = g * ell;
    const Real g2 = g * (ell * ell - p.alpha / (x * x));
    WeightPoint w{p, x, Real(0), Real(0), Real(0)};
    if (is_zero(p.t)) {
        const Real r0 = tgamma(p.nu);
        w.omega = g * r0;
        w.omega_d1 = g1 * r0;
        w.omega_d2 = g2 * r0;
        return w;
    }
    const Real xt = x * p.t;
    const Real r0 = rho_eval(p.nu, xt, ctx);
    const Real r1 = rho_eval(p.nu - 1, xt, ctx);
    const Real r2 = rho_eval(p.nu - 2, xt, ctx);
    w.omega = g * r0;
    w.omega_d1 = g1 * r0 - p.t * g * r1;
    w.omega_d2 = g2 * r0 - 2 * p.t * g1 * r1 + p.t * p.t * g * r2;
    return w;
}

struct ScaledResidual {
    Real value;
    Real scale;
    Real relative() const { return is_zero(scale) ? abs(value) : abs(value) / scale; }
};

/// Residual of the weight's second-order ODE
///   x^2 w'' - (2(alpha - lambda x) + nu - 1) x w'
///     + ((alpha - lambda x)^2 + x(lambda(1 - nu) - t) + alpha nu) w = 0,
/// with scale = the largest of the three terms.
inline ScaledResidual weight_ode_residual(const Params& p, const Real& x, const PrecisionContext& ctx)
{
    if (!(p.t > 0))
        throw DomainError("weight_ode_residual: requires t > 0");
    PrecisionScope scope(ctx.digits);
    const auto w = weight_eval(p, x, ctx);
    const Real c = p.alpha - p.lambda * x;
    const Real t1 = x * x * w.omega_d2;
    const Real t2 = -(2 * c + p.nu - 1) * x * w.omega_d1;
    const Real t3 = (c * c + x * (p.lambda * (1 - p.nu) - p.t) + p.alpha * p.nu) * w.omega;
    return {t1 + t2 + t3, max(abs(t1), max(abs(t2), abs(t3)))};
}

struct QuotientCheck {
    double lhs;
    double rhs;
    double relative_difference() const { return std::fabs(lhs - rhs) / std::fabs(lhs); }
};

namespace detail {

/// J_mu^2(z) + Y_mu^2(z) in double precision.
inline double bessel_modulus_sq(double mu, double z)
{
    if (z > 1e3) {
        // Asymptotic modulus; the next term is O(z^-6).
        const double m = mu * mu;
        const double z2 = z * z;
        return 2.0 / (3.14159265358979323846 * z) *
               (1.0 + 0.5 * (m - 0.25) / z2 + 0.375 * (m - 0.25) * (m - 2.25) / (z2 * z2));
    }
    const double j = std::cyl_bessel_j(mu, z);
    const double y = std::cyl_neumann(mu, z);
    return j * j + y * y;
}

} // namespace detail

/// rho_nu(x)/rho_{nu+1}(x) against
///   (1/pi^2) int_0^inf dy / (y (x+y) (J_{nu+1}^2(2 sqrt y) + Y_{nu+1}^2(2 sqrt y))).
/// The left side is taken at 30 digits, the integral in double precision.
inline QuotientCheck ismail_quotient_check(const Real& nu, const Real& x)
{
    if (nu < 0)
        throw DomainError("ismail_quotient_check: nu must be >= 0");
    if (!(x > 0))
        throw DomainError("ismail_quotient_check: x must be > 0");
    const auto ctx = PrecisionContext::make(30, 1e-20);
    PrecisionScope scope(ctx.digits);
    const double lhs = (rho_eval(nu, x, ctx) / rho_eval(nu + 1, x, ctx)).to_double();

    const double mu = nu.to_double() + 1.0;
    const double xd = x.to_double();
    const double pi_d = 3.14159265358979323846;
    const double small_coef = pi_d * pi_d / (std::tgamma(mu) * std::tgamma(mu));
    auto f = [&](double y) {
        if (y < 1e-12) // J^2 + Y^2 ~ (Gamma(mu)/pi)^2 y^{-mu}
            return small_coef * std::pow(y, mu - 1.0) / (xd + y);
        return 1.0 / (y * (xd + y) * detail::bessel_modulus_sq(mu, 2.0 * std::sqrt(y)));
    };
    auto r = integrate_semiline<double>(f, 1e-10);
    return {lhs, r.value / (pi_d * pi_d)};
}

struct IntegralCheck {
    Real lhs;
    Real rhs;
    Real residual;
    Real scale;
    Real relative() const { return abs(residual) / scale; }
};

/// ((-1)^n x^n / n!) rho_nu(x)  versus  int_0^inf y^{nu+n-1} e^{-y-x/y} L_n^nu(y) dy.
inline IntegralCheck laguerre_product_check(const Real& nu, int n, const Real& x, const PrecisionContext& ctx)
{
    if (n < 0)
        throw DomainError("laguerre_product_check: n must be >= 0");
    if (!(x > 0))
        throw DomainError("laguerre_product_check: x must be > 0");
    PrecisionScope scope(ctx.digits);
    const auto lag = laguerre_coefficients(n, nu);
    const Real power = nu + n - 1;
    auto f = [&](const Real& y, const Real& log_y) {
        return exp(power * log_y - y - x / y) * poly_eval(lag, y);
    };
    auto r = integrate_semiline<Real>(f, ctx.tolerance());
    IntegralCheck c;
    c.lhs = pow(x, n) / factorial(n) * rho_eval(nu, x, ctx);
    if (n % 2 == 1) c.lhs = -c.lhs;
    c.rhs = r.value;
    c.residual = c.lhs - c.rhs;
    c.scale = max(r.l1_norm, abs(c.lhs));
    return c;
}

/// Right-sided Riemann-Liouville integral (I_-^order f)(x) of f = rho_index,
///   (1/Gamma(order)) int_0^inf r^{order-1} rho_index(x + r) dr.
inline Real rl_integral_of_rho(const Real& order, const Real& index, const Real& x, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.digits);
    const Real om1 = order - 1;
    auto f = [&](const Real& r, const Real& log_r) {
        return exp(om1 * log_r) * rho_eval(index, x + r, ctx);
    };
    auto res = integrate_semiline<Real>(f, ctx.tolerance());
    return res.value / tgamma(order);
}

struct FractionalCheck {
    Real nu_on_mu;   // (I^nu rho_mu)(x)
    Real mu_on_nu;   // (I^mu rho_nu)(x)
    Real target;     // rho_{nu+mu}(x)
    Real residual_nu_on_mu() const { return nu_on_mu - target; }
    Real residual_mu_on_nu() const { return mu_on_nu - target; }
};

/// Index law  I_-^nu rho_mu = I_-^mu rho_nu = rho_{nu+mu}.
inline FractionalCheck fractional_integral_check(const Real& nu, const Real& mu, const Real& x,
                                                 const PrecisionContext& ctx)
{
    if (!(nu > 0) || !(mu > 0) || nu > 3 || mu > 3)
        throw DomainError("fractional_integral_check: nu, mu must lie in (0, 3]");
    if (!(x > 0))
        throw DomainError("fractional_integral_check: x must be > 0");
    PrecisionScope scope(ctx.digits);
    FractionalCheck c;
    c.nu_on_mu = rl_integral_of_rho(nu, mu, x, ctx);
    c.mu_on_nu = rl_integral_of_rho(mu, nu, x, ctx);
    c.target = rho_eval(nu + mu, x, ctx);
    return c;
}

} // namespace rhopoly

#endif // RHOPOLY_KERNELS_HPP
