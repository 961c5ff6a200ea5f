#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sqao/matrix.hpp"

namespace sqao {

/// Spectral decomposition S = N * diag(lambda) * N^T with orthogonal N and
/// eigenvalues sorted in non-increasing order.
struct SpectralDecomp {
    Matrix n_factor;             ///< orthogonal eigenvector matrix, columns match lambda order
    std::vector<double> lambda;  ///< eigenvalues, non-increasing
};

namespace detail {

inline double off_diagonal_norm(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) s += 2.0 * m(i, j) * m(i, j);
    return std::sqrt(s);
}

}  // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// The input is symmetrized defensively, so callers may pass matrices that
/// are symmetric only up to rounding. Sweeps run until the off-diagonal
/// Frobenius mass drops to 1e-14 * ||S||_F, with a hard cap of 100 sweeps
/// (a violation throws, converged inputs need ~6). Output is deterministic:
/// the sort on equal eigenvalues is stable with respect to the rotation
/// order, and each eigenvector's sign is fixed by making its
/// largest-magnitude entry positive (ties resolved to the first such entry).
inline SpectralDecomp eig_symmetric(const Matrix& s) {
    const int n = s.dim();
    Matrix m = sym_part(s);
    Matrix v = Matrix::identity(n);
    const double tol = 1e-14 * frobenius_norm(m);
    constexpr int max_sweeps = 100;

    int sweep = 0;
    while (detail::off_diagonal_norm(m) > tol) {
        if (sweep++ >= max_sweeps) throw std::runtime_error("eig_symmetric: Jacobi sweeps did not converge");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                m(p, p) -= t * apq;
                m(q, q) += t * apq;
                m(p, q) = m(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = m(p, k) = c * mkp - sn * mkq;
                    m(k, q) = m(q, k) = sn * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&m](int a, int b) { return m(a, a) > m(b, b); });

    SpectralDecomp d{Matrix(n), std::vector<double>(static_cast<std::size_t>(n))};
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        d.lambda[static_cast<std::size_t>(j)] = m(src, src);
        int peak = 0;
        for (int r = 1; r < n; ++r)
            if (std::abs(v(r, src)) > std::abs(v(peak, src))) peak = r;
        const double flip = v(peak, src) < 0.0 ? -1.0 : 1.0;
        for (int r = 0; r < n; ++r) d.n_factor(r, j) = flip * v(r, src);
    }
    return d;
}

}  // namespace sqao
