#pragma once

// Shared fixtures and independent oracles for the test suites: random
// matrix generators, a brute-force spectrum-pairing check, and a gradient
// descent minimizer over skew-symmetric squares used to challenge the
// closed-form approximant.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sqao/matrix.hpp"

namespace support {

using sqao::Matrix;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    return m;
}

inline Matrix random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
    return sqao::sym_part(random_matrix(n, rng, scale));
}

inline Matrix random_skew(int n, std::mt19937_64& rng, double scale = 1.0) {
    return sqao::skew_part(random_matrix(n, rng, scale));
}

inline std::vector<double> random_sorted_desc(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = gauss(rng);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// --- spectrum pairing oracle -------------------------------------------

// True iff the values can be grouped into equal-valued non-positive pairs,
// with exactly one leftover ~zero value when the count is odd. Exhaustive
// search, independent of the library's sorted-pairing shortcut.
inline bool pairable_non_positive(std::vector<double> vals, double slack) {
    if (vals.size() % 2 == 1) {
        bool found = false;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (std::abs(vals[i]) <= slack) {
                std::vector<double> rest = vals;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                if (pairable_non_positive(std::move(rest), slack)) {
                    found = true;
                    break;
                }
            }
        }
        return found;
    }
    if (vals.empty()) return true;
    const double head = vals[0];
    if (head > slack) return false;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (std::abs(vals[i] - head) <= slack && vals[i] <= slack) {
            std::vector<double> rest;
            for (std::size_t k = 1; k < vals.size(); ++k)
                if (k != i) rest.push_back(vals[k]);
            if (pairable_non_positive(std::move(rest), slack)) return true;
        }
    }
    return false;
}

// --- descent oracle over skew squares ----------------------------------

inline int skew_param_count(int n) { return n * (n - 1) / 2; }

inline Matrix skew_from_params(int n, const std::vector<double>& p) {
    Matrix k(n);
    int m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            k(i, j) = p[static_cast<std::size_t>(m)];
            k(j, i) = -p[static_cast<std::size_t>(m)];
            ++m;
        }
    return k;
}

inline std::vector<double> params_from_skew(const Matrix& k) {
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(skew_param_count(k.dim())));
    for (int i = 0; i < k.dim(); ++i)
        for (int j = i + 1; j < k.dim(); ++j) p.push_back(k(i, j));
    return p;
}

inline double skew_square_objective(const Matrix& a, const Matrix& k) {
    const Matrix r = k * k - a;
    return sqao::frobenius_inner(r, r);
}

// d/dp of ||K(p)^2 - A||_F^2; the matrix gradient 2(XK^T + K^T X) with
// X = K^2 - A restricted to the skew directions E_ij - E_ji.
inline std::vector<double> skew_square_gradient(const Matrix& a, const Matrix& k) {
    const Matrix x = k * k - a;
    const Matrix kt = k.transposed();
    const Matrix g = 2.0 * (x * kt + kt * x);
    std::vector<double> grad;
    grad.reserve(static_cast<std::size_t>(skew_param_count(k.dim())));
    for (int i = 0; i < k.dim(); ++i)
        for (int j = i + 1; j < k.dim(); ++j) grad.push_back(g(i, j) - g(j, i));
    return grad;
}

// Backtracking gradient descent on the skew parameters; returns the best
// objective value reached. Used as a local-optimality challenger.
inline double descend_skew_square(const Matrix& a, const Matrix& k0, int max_iter = 400) {
    const int n = a.dim();
    std::vector<double> p = params_from_skew(k0);
    double f = skew_square_objective(a, skew_from_params(n, p));
    double step = 1e-2;
    for (int iter = 0; iter < max_iter; ++iter) {
        const std::vector<double> g = skew_square_gradient(a, skew_from_params(n, p));
        double gnorm2 = 0.0;
        for (double v : g) gnorm2 += v * v;
        if (gnorm2 <= 1e-20 * (1.0 + f * f)) break;
        bool advanced = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> q(p.size());
            for (std::size_t m = 0; m < p.size(); ++m) q[m] = p[m] - step * g[m];
            const double fq = skew_square_objective(a, skew_from_params(n, q));
            if (fq <= f - 1e-4 * step * gnorm2) {
                p = std::move(q);
                f = fq;
                step *= 1.5;
                advanced = true;
                break;
            }
            step /= 2.0;
        }
        if (!advanced) break;
    }
    return f;
}

}  // namespace support
