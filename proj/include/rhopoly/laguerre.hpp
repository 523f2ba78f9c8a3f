#ifndef RHOPOLY_LAGUERRE_HPP
#define RHOPOLY_LAGUERRE_HPP

// Classical associated Laguerre polynomials and small polynomial helpers.

#include "rhopoly/numerics.hpp"

#include <vector>

namespace rhopoly {

/// Horner evaluation of sum_k c[k] x^k.
inline Real poly_eval(const std::vector<Real>& c, const Real& x)
{
    Real r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + *it;
    return r;
}

/// Coefficients of d/dx p.
inline std::vector<Real> poly_derivative(const std::vector<Real>& c)
{
    std::vector<Real> d;
    for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(c[k] * static_cast<long>(k));
    return d;
}

/// Coefficients of L_n^a(y) = sum_k (-1)^k (a+k+1)_{n-k} / ((n-k)! k!) y^k.
inline std::vector<Real> laguerre_coefficients(int n, const Real& a)
{
    std::vector<Real> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        Real v = pochhammer(a + k + 1, n - k) / (factorial(n - k) * factorial(k));
        c[k] = (k % 2 == 0) ? v : -v;
    }
    return c;
}

inline Real laguerre(int n, const Real& a, const Real& y)
{
    return poly_eval(laguerre_coefficients(n, a), y);
}

/// Orthonormal modified Laguerre polynomial for the weight Gamma(nu) x^alpha e^{-lambda x},
/// with positive leading coefficient:
///   sqrt(n! lambda^{alpha+1} / (Gamma(n+alpha+1) Gamma(nu))) (-1)^n L_n^alpha(lambda x).
inline std::vector<Real> modified_laguerre_coefficients(int n, const Real& alpha, const Real& nu,
                                                        const Real& lambda)
{
    auto c = laguerre_coefficients(n, alpha);
    Real norm = sqrt(factorial(n) * pow(lambda, alpha + 1) / (tgamma(alpha + n + 1) * tgamma(nu)));
    if (n % 2 == 1) norm = -norm;
    Real scale(1);
    for (auto& ck : c) {
        ck *= norm * scale;
        scale *= lambda;
    }
    return c;
}

} // namespace rhopoly

#endif // RHOPOLY_LAGUERRE_HPP
