#ifndef RHOPOLY_LINALG_HPP
#define RHOPOLY_LINALG_HPP

// Dense lower-triangular helpers for Hankel factorizations.

#include "rhopoly/numerics.hpp"

#include <vector>

namespace rhopoly {

using Matrix = std::vector<std::vector<Real>>;

inline Matrix hankel(const std::vector<Real>& mu, int size, int shift = 0)
{
    Matrix h(size, std::vector<Real>(size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            h[i][j] = mu[i + j + shift];
    return h;
}

/// Cholesky factor L (H = L L^T). Throws PositiveDefiniteError at the first
/// non-positive pivot.
inline Matrix cholesky(const Matrix& h)
{
    const std::size_t n = h.size();
    Matrix l(n, std::vector<Real>(n));
    for (std::size_t j = 0; j < n; ++j) {
        Real d = h[j][j];
        for (std::size_t k = 0; k < j; ++k)
            d -= l[j][k] * l[j][k];
        if (!(d > 0))
            throw PositiveDefiniteError("cholesky: non-positive pivot at index " + std::to_string(j));
        l[j][j] = sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real s = h[i][j];
            for (std::size_t k = 0; k < j; ++k)
                s -= l[i][k] * l[j][k];
            l[i][j] = s / l[j][j];
        }
    }
    return l;
}

/// Inverse of a lower-triangular matrix by forward substitution.
inline Matrix lower_inverse(const Matrix& l)
{
    const std::size_t n = l.size();
    Matrix inv(n, std::vector<Real>(n));
    for (std::size_t j = 0; j < n; ++j) {
        inv[j][j] = 1 / l[j][j];
        for (std::size_t i = j + 1; i < n; ++i) {
            Real s(0);
            for (std::size_t k = j; k < i; ++k)
                s += l[i][k] * inv[k][j];
            inv[i][j] = -s / l[i][i];
        }
    }
    return inv;
}

} // namespace rhopoly

#endif // RHOPOLY_LINALG_HPP
