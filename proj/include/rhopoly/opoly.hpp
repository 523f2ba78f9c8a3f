#ifndef RHOPOLY_OPOLY_HPP
#define RHOPOLY_OPOLY_HPP

// Orthonormal polynomials P_n(x; lambda, t) from the Hankel Cholesky factor,
// their recurrence coefficients, Christoffel-Darboux sums and Gauss rules.

#include "rhopoly/laguerre.hpp"
#include "rhopoly/moments.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace rhopoly {

/// P_n(x) = sum_k coeffs[n][k] x^k with a_n = coeffs[n][n] > 0, and
/// x P_n = A_{n+1} P_{n+1} + B_n P_n + A_n P_{n-1}.
struct RecurrenceTable {
    Params params;
    int N = 0;
    int digits = 0;
    MomentTable moments;
    std::vector<std::vector<Real>> coeffs;
    std::vector<Real> a;       // leading coefficients
    std::vector<Real> b;       // coefficients of x^{n-1} (b_0 = 0)
    std::vector<Real> d;       // coefficients of x^{n-2} (d_0 = d_1 = 0)
    std::vector<Real> a_const; // constant terms
    std::vector<Real> A;       // A_n = a_{n-1}/a_n, A_0 = 0
    std::vector<Real> B;       // B_n = int x P_n^2 omega

    Real b_over_a(int n) const { return b[n] / a[n]; }
};

/// Builds P_0 ... P_N. The precision used is the (possibly escalated) one the
/// moment table needed; later evaluation should run at table.digits.
inline RecurrenceTable build_recurrence(const Params& p, int N, const PrecisionContext& ctx)
{
    RecurrenceTable table;
    table.moments = build_moment_table(p, N, ctx);
    table.params = p;
    table.N = N;
    table.digits = table.moments.digits;
    PrecisionScope scope(table.digits);
    const auto& mu = table.moments.mu;
    const Matrix c = lower_inverse(cholesky(hankel(mu, N + 1)));
    for (int n = 0; n <= N; ++n) {
        std::vector<Real> row(c[n].begin(), c[n].begin() + n + 1);
        table.a.push_back(row[n]);
        table.b.push_back(n >= 1 ? row[n - 1] : Real(0));
        table.d.push_back(n >= 2 ? row[n - 2] : Real(0));
        table.a_const.push_back(row[0]);
        table.A.push_back(n >= 1 ? table.a[n - 1] / table.a[n] : Real(0));
        Real s(0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                s += row[i] * row[j] * mu[i + j + 1];
        table.B.push_back(s);
        table.coeffs.push_back(std::move(row));
    }
    return table;
}

/// int P_m(x) P_n(x) x^shift omega(x) dx from the moments.
inline Real moment_product(const RecurrenceTable& t, int m, int n, int shift = 0)
{
    PrecisionScope scope(t.digits);
    Real s(0);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j)
            s += t.coeffs[m][i] * t.coeffs[n][j] * t.moments.mu[i + j + shift];
    return s;
}

/// int p(x) x^shift omega(x) dx for a coefficient vector p.
inline Real moment_functional(const RecurrenceTable& t, const std::vector<Real>& p, int shift = 0)
{
    PrecisionScope scope(t.digits);
    Real s(0);
    for (std::size_t i = 0; i < p.size(); ++i)
        s += p[i] * t.moments.mu[i + shift];
    return s;
}

/// Same with |p_i| mu_{i+shift}: the scale against which the value cancels.
inline Real moment_functional_scale(const RecurrenceTable& t, const std::vector<Real>& p, int shift = 0)
{
    PrecisionScope scope(t.digits);
    Real s(0);
    for (std::size_t i = 0; i < p.size(); ++i)
        s += abs(p[i]) * t.moments.mu[i + shift];
    return s;
}

/// max_{m,n <= N} |int P_m P_n omega - delta_mn|.
inline Real orthonormality_defect(const RecurrenceTable& t)
{
    PrecisionScope scope(t.digits);
    Real worst(0);
    for (int m = 0; m <= t.N; ++m)
        for (int n = m; n <= t.N; ++n)
            worst = max(worst, abs(moment_product(t, m, n) - (m == n ? 1 : 0)));
    return worst;
}

enum class EvalRoute { recurrence, coefficients };

inline Real eval_poly(const RecurrenceTable& t, int n, const Real& x, EvalRoute route = EvalRoute::recurrence)
{
    if (n < 0 || n > t.N)
        throw DomainError("eval_poly: degree outside the table");
    PrecisionScope scope(t.digits);
    if (route == EvalRoute::coefficients)
        return poly_eval(t.coeffs[n], x);
    Real prev(0), cur = t.a[0];
    for (int k = 0; k < n; ++k) {
        Real next = ((x - t.B[k]) * cur - t.A[k] * prev) / t.A[k + 1];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Coefficientwise residual max_k |x P_n - A_{n+1} P_{n+1} - B_n P_n - A_n P_{n-1}|, n < N.
inline Real recurrence_residual(const RecurrenceTable& t, int n)
{
    PrecisionScope scope(t.digits);
    std::vector<Real> r(n + 2);
    for (int k = 0; k <= n; ++k) {
        r[k + 1] += t.coeffs[n][k];
        r[k] -= t.B[n] * t.coeffs[n][k];
    }
    for (int k = 0; k <= n + 1; ++k)
        r[k] -= t.A[n + 1] * t.coeffs[n + 1][k];
    if (n >= 1)
        for (int k = 0; k < n; ++k)
            r[k] -= t.A[n] * t.coeffs[n - 1][k];
    Real worst(0);
    for (auto& v : r)
        worst = max(worst, abs(v));
    return worst;
}

struct ChristoffelDarboux {
    Real sum_form;
    Real quotient_form;
    bool confluent = false;
};

/// sum_{k<=n} P_k(x) P_k(y) against A_{n+1}(P_{n+1}(x)P_n(y) - P_n(x)P_{n+1}(y))/(x - y);
/// for |x - y| < 10^{-digits/2} the quotient is replaced by its limit
/// A_{n+1}(P'_{n+1}(x)P_n(x) - P'_n(x)P_{n+1}(x)).
inline ChristoffelDarboux christoffel_darboux(const RecurrenceTable& t, int n, const Real& x, const Real& y)
{
    if (n < 0 || n + 1 > t.N)
        throw DomainError("christoffel_darboux: need n <= N-1");
    PrecisionScope scope(t.digits);
    ChristoffelDarboux cd;
    for (int k = 0; k <= n; ++k)
        cd.sum_form += eval_poly(t, k, x) * eval_poly(t, k, y);
    if (abs(x - y) < pow10(-t.digits / 2)) {
        cd.confluent = true;
        const Real pn = poly_eval(t.coeffs[n], x);
        const Real pn1 = poly_eval(t.coeffs[n + 1], x);
        const Real dpn = poly_eval(poly_derivative(t.coeffs[n]), x);
        const Real dpn1 = poly_eval(poly_derivative(t.coeffs[n + 1]), x);
        cd.quotient_form = t.A[n + 1] * (dpn1 * pn - dpn * pn1);
    } else {
        cd.quotient_form = t.A[n + 1] *
                           (eval_poly(t, n + 1, x) * eval_poly(t, n, y) - eval_poly(t, n, x) * eval_poly(t, n + 1, y)) /
                           (x - y);
    }
    return cd;
}

struct GaussRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
    int N = 0;
    int digits = 0;
};

namespace detail {

/// Eigenvalues of the symmetric tridiagonal matrix (diag, off) and the first
/// components of its normalized eigenvectors, by implicit QL with Wilkinson shifts.
inline void tridiagonal_ql(std::vector<Real>& diag, std::vector<Real> off, std::vector<Real>& first)
{
    const int n = static_cast<int>(diag.size());
    off.resize(n);
    off[n - 1] = Real(0);
    first.assign(n, Real(0));
    first[0] = Real(1);
    const Real eps = pow10(-working_digits() - 2);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            for (; m < n - 1; ++m) {
                const Real dd = abs(diag[m]) + abs(diag[m + 1]);
                if (abs(off[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (++iter > 60)
                throw ConvergenceError("gauss_rule: QL iteration did not converge");
            Real g = (diag[l + 1] - diag[l]) / (2 * off[l]);
            Real r = sqrt(g * g + 1);
            g = diag[m] - diag[l] + off[l] / (g + (g < 0 ? -abs(r) : abs(r)));
            Real s(1), c(1), p(0);
            int i = m - 1;
            for (; i >= l; --i) {
                Real f = s * off[i];
                const Real b = c * off[i];
                r = sqrt(f * f + g * g);
                off[i + 1] = r;
                if (is_zero(r)) {
                    diag[i + 1] -= p;
                    off[m] = Real(0);
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if (is_zero(r) && i >= l)
                continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = Real(0);
        }
    }
}

} // namespace detail

/// N-point Gauss rule for omega: nodes are the eigenvalues of the Jacobi
/// matrix with diagonal B_0..B_{N-1} and off-diagonal A_1..A_{N-1};
/// weights mu_0 z_j^2 with z_j the first eigenvector components.
inline GaussRule gauss_rule(const RecurrenceTable& t, int N)
{
    if (N < 1 || N > t.N)
        throw DomainError("gauss_rule: need 1 <= N <= table depth");
    PrecisionScope scope(t.digits);
    std::vector<Real> diag(t.B.begin(), t.B.begin() + N);
    std::vector<Real> off;
    for (int k = 1; k < N; ++k)
        off.push_back(t.A[k]);
    std::vector<Real> first;
    detail::tridiagonal_ql(diag, off, first);
    std::vector<std::pair<Real, Real>> pairs;
    for (int j = 0; j < N; ++j)
        pairs.emplace_back(diag[j], t.moments.mu[0] * first[j] * first[j]);
    std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    GaussRule rule;
    rule.N = N;
    rule.digits = t.digits;
    for (auto& [x, w] : pairs) {
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    return rule;
}

/// Weighted integrals int P_n x^{n+k} omega (k = 0, 1, 2) as moment combinations,
/// next to 1/a_n, -b_{n+1}/(a_{n+1} a_n) and
/// b_{n+2} b_{n+1}/(a_{n+2} a_{n+1} a_n) - d_{n+2}/(a_{n+2} a_n).
struct NormalizationIntegrals {
    Real computed[3];
    Real predicted[3];
};

inline NormalizationIntegrals normalization_integrals(const RecurrenceTable& t, int n)
{
    if (n < 0 || n + 2 > t.N)
        throw DomainError("normalization_integrals: table depth must be at least n+2");
    PrecisionScope scope(t.digits);
    NormalizationIntegrals r;
    for (int k = 0; k < 3; ++k)
        r.computed[k] = moment_functional(t, t.coeffs[n], n + k);
    r.predicted[0] = 1 / t.a[n];
    r.predicted[1] = -t.b[n + 1] / (t.a[n + 1] * t.a[n]);
    r.predicted[2] = t.b[n + 2] * t.b[n + 1] / (t.a[n + 2] * t.a[n + 1] * t.a[n]) - t.d[n + 2] / (t.a[n + 2] * t.a[n]);
    return r;
}

/// Second and third moments of P_n^2 and the relation between d_n, b_n and the
/// recurrence coefficients. Each entry pairs a moment-side value with the
/// recurrence-side expression.
struct SquareMoments {
    Real second_moment;   // int P_n^2 x^2 omega
    Real second_formula;  // A_{n+1}^2 + B_n^2 + A_n^2
    Real third_moment;    // int P_n^2 x^3 omega
    Real third_formula;   // A_{n+1}^2 (B_{n+1} + 2 B_n) + A_n^2 B_{n-1} + (2 A_n^2 + B_n^2) B_n
    Real d_relation;      // d_n/a_n - d_{n+2}/a_{n+2} - (b_{n+1}/a_{n+1})(B_n + B_{n+1})
};

inline SquareMoments square_moments(const RecurrenceTable& t, int n)
{
    if (n < 0 || n + 2 > t.N)
        throw DomainError("square_moments: table depth must be at least n+2");
    PrecisionScope scope(t.digits);
    SquareMoments s;
    const Real& An = t.A[n];
    const Real& An1 = t.A[n + 1];
    const Real& Bn = t.B[n];
    const Real& Bn1 = t.B[n + 1];
    const Real Bm1 = n >= 1 ? t.B[n - 1] : Real(0);
    s.second_moment = moment_product(t, n, n, 2);
    s.second_formula = An1 * An1 + Bn * Bn + An * An;
    s.third_moment = moment_product(t, n, n, 3);
    s.third_formula = An1 * An1 * (Bn1 + 2 * Bn) + An * An * Bm1 + (2 * An * An + Bn * Bn) * Bn;
    s.d_relation = t.d[n] / t.a[n] - t.d[n + 2] / t.a[n + 2] - t.b[n + 1] / t.a[n + 1] * (Bn + Bn1);
    return s;
}

/// Orthonormal Laguerre table for t = 0: coefficient vectors of
/// sqrt(n! lambda^{alpha+1}/(Gamma(n+alpha+1) Gamma(nu))) (-1)^n L_n^alpha(lambda x).
inline std::vector<std::vector<Real>> modified_laguerre_table(const Params& p, int N, int digits)
{
    PrecisionScope scope(digits);
    std::vector<std::vector<Real>> out;
    for (int n = 0; n <= N; ++n)
        out.push_back(modified_laguerre_coefficients(n, p.alpha, p.nu, p.lambda));
    return out;
}

} // namespace rhopoly

#endif // RHOPOLY_OPOLY_HPP
