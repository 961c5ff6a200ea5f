#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sqao/matrix.hpp"
#include "sqao/spectral.hpp"

namespace sqao {

/// Result of the best skew-square approximation of a square matrix A in the
/// Frobenius norm: u_star minimizes ||K^2 - A||_F over all skew-symmetric K.
struct SkewSquareResult {
    Matrix u_star;                ///< the approximant, symmetric with paired non-positive spectrum
    Matrix n_factor;              ///< orthogonal eigenvector matrix of sym_part(A), eigenvalues non-increasing
    std::vector<double> d_star;   ///< diagonal of the approximant in the n_factor basis
    std::vector<double> mu_star;  ///< the floor(n/2) clamped pair means, non-increasing, all <= 0
    double residual;              ///< ||u_star - A||_F
};

/// Optimal diagonal for a non-increasing eigenvalue list.
///
/// Consecutive eigenvalues are paired (after a leading slot pinned to zero
/// when n is odd) and each pair is replaced by its mean if that mean is
/// non-positive, else by zero. A pair summing to exactly zero takes the mean
/// branch; both branches agree there.
inline std::vector<double> d_star_from_lambda(const std::vector<double>& lambda) {
    const std::size_t n = lambda.size();
    if (n == 0) throw std::invalid_argument("d_star_from_lambda: empty eigenvalue list");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (lambda[i] < lambda[i + 1])
            throw std::invalid_argument("d_star_from_lambda: eigenvalues must be non-increasing");

    std::vector<double> d(n, 0.0);
    const std::size_t first = n % 2;  // odd n pins slot 0 to zero
    for (std::size_t p = first; p + 1 < n; p += 2) {
        const double mean = (lambda[p] + lambda[p + 1]) / 2.0;
        const double mu = mean <= 0.0 ? mean : 0.0;
        d[p] = mu;
        d[p + 1] = mu;
    }
    return d;
}

/// Best Frobenius-norm approximation of A by a squared skew-symmetric
/// matrix. Only the symmetric part of A matters for the minimizer; the skew
/// part contributes an irreducible orthogonal residual.
inline SkewSquareResult approximate(const Matrix& a) {
    const Matrix b = sym_part(a);
    SpectralDecomp dec = eig_symmetric(b);
    std::vector<double> d = d_star_from_lambda(dec.lambda);

    std::vector<double> mu;
    mu.reserve(d.size() / 2);
    for (std::size_t p = d.size() % 2; p + 1 < d.size(); p += 2) mu.push_back(d[p]);

    const Matrix u = sym_part(dec.n_factor * Matrix::diagonal(d) * dec.n_factor.transposed());
    const double res = frobenius_norm(u - a);
    return SkewSquareResult{u, dec.n_factor, std::move(d), std::move(mu), res};
}

/// Membership test for the squared-skew cone: S belongs iff it is symmetric
/// and its spectrum is non-positive and pairable (plus one zero eigenvalue
/// when n is odd). All comparisons use the scale-aware slack
/// tol * (1 + ||S||_F).
inline bool is_member(const Matrix& s, double tol = 1e-8) {
    if (tol < 0.0) throw std::invalid_argument("is_member: tolerance must be >= 0");
    const double slack = tol * (1.0 + frobenius_norm(s));
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j)
            if (std::abs(s(i, j) - s(j, i)) > slack) return false;

    const std::vector<double> lam = eig_symmetric(s).lambda;
    const std::size_t n = lam.size();
    for (double l : lam)
        if (l > slack) return false;
    const std::size_t first = n % 2;
    if (first == 1 && std::abs(lam[0]) > slack) return false;
    for (std::size_t p = first; p + 1 < n; p += 2)
        if (std::abs(lam[p] - lam[p + 1]) > slack) return false;
    return true;
}

/// One skew-symmetric square root of a cone member: K with K^2 = U.
///
/// In the eigenvector basis the root is block diagonal with 2x2 blocks
/// [[0, -r], [r, 0]], r = sqrt(-mu), one block per eigenvalue pair, and a
/// scalar zero block leading when n is odd. The sign of each block is not
/// determined by U; this routine fixes the upper-right entry negative.
/// Inputs failing the membership test are rejected.
inline Matrix skew_square_root(const Matrix& u, double tol = 1e-8) {
    if (!is_member(u, tol)) throw std::invalid_argument("skew_square_root: input is not a squared skew-symmetric matrix");
    SpectralDecomp dec = eig_symmetric(u);
    const int n = u.dim();
    Matrix block(n);
    for (int p = n % 2; p + 1 < n; p += 2) {
        const double mean = (dec.lambda[static_cast<std::size_t>(p)] + dec.lambda[static_cast<std::size_t>(p) + 1]) / 2.0;
        const double r = std::sqrt(std::max(0.0, -mean));  // clamp rounding above zero
        block(p, p + 1) = -r;
        block(p + 1, p) = r;
    }
    return skew_part(dec.n_factor * block * dec.n_factor.transposed());
}

}  // namespace sqao
