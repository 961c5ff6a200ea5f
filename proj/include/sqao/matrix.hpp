#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqao {

/// 3-component real vector; carries rotation axes and body-frame angular
/// velocity/acceleration.
struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vector3 operator+(const Vector3& a, const Vector3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vector3 operator-(const Vector3& a, const Vector3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vector3 operator*(double s, const Vector3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vector3 operator-(const Vector3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vector3& v) { return std::sqrt(dot(v, v)); }

inline bool all_finite(const Vector3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Dense real n-by-n matrix, row-major. The single carrier type for the
/// whole library; constructors reject non-finite entries.
class Matrix {
public:
    explicit Matrix(int n) : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    Matrix(int n, std::vector<double> entries) : n_(check_dim(n)), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(n_) * n_)
            throw std::invalid_argument("Matrix: entry count does not match dimension");
        for (double v : a_)
            if (!std::isfinite(v)) throw std::invalid_argument("Matrix: non-finite entry");
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.dim(); ++i) {
            if (!std::isfinite(d[static_cast<std::size_t>(i)]))
                throw std::invalid_argument("Matrix: non-finite entry");
            m(i, i) = d[static_cast<std::size_t>(i)];
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const int n = static_cast<int>(rows.size());
        std::vector<double> a;
        a.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("Matrix: from_rows requires square data");
            a.insert(a.end(), row.begin(), row.end());
        }
        return Matrix(n, std::move(a));
    }

    int dim() const { return n_; }

    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    Matrix transposed() const {
        Matrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    const std::vector<double>& data() const { return a_; }

private:
    static int check_dim(int n) {
        if (n < 1) throw std::invalid_argument("Matrix: dimension must be >= 1");
        return n;
    }

    int n_;
    std::vector<double> a_;
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.dim() != b.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "operator+");
    Matrix c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "operator-");
    Matrix c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline Matrix operator-(const Matrix& a) {
    Matrix c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) = -a(i, j);
    return c;
}

inline Matrix operator*(double s, const Matrix& a) {
    Matrix c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "operator*");
    const int n = a.dim();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Vector3 operator*(const Matrix& m, const Vector3& v) {
    if (m.dim() != 3) throw std::invalid_argument("Matrix*Vector3: matrix must be 3x3");
    return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
            m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
            m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

/// Entrywise inner product <X,Y> = sum_ij X_ij Y_ij.
inline double frobenius_inner(const Matrix& x, const Matrix& y) {
    require_same_dim(x, y, "frobenius_inner");
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) s += x(i, j) * y(i, j);
    return s;
}

inline double frobenius_norm(const Matrix& x) { return std::sqrt(frobenius_inner(x, x)); }

inline double trace(const Matrix& x) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x(i, i);
    return s;
}

/// Symmetric half of the sym/skew split; sym_part(A) + skew_part(A)
/// recombines to A within one rounding step per entry.
inline Matrix sym_part(const Matrix& a) {
    Matrix s(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s(i, j) = (a(i, j) + a(j, i)) / 2.0;
    return s;
}

inline Matrix skew_part(const Matrix& a) {
    Matrix k(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) k(i, j) = (a(i, j) - a(j, i)) / 2.0;
    return k;
}

/// Skew 3x3 -> R^3: (W32, W13, W21). Rejects input whose symmetric residue
/// exceeds 1e-9*(1+||W||_F), a scale-aware misuse guard.
inline Vector3 star(const Matrix& w) {
    if (w.dim() != 3) throw std::invalid_argument("star: matrix must be 3x3");
    double max_sym = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) max_sym = std::max(max_sym, std::abs(w(i, j) + w(j, i)));
    if (max_sym > 1e-9 * (1.0 + frobenius_norm(w)))
        throw std::invalid_argument("star: input is not skew-symmetric");
    return {w(2, 1), w(0, 2), w(1, 0)};
}

/// R^3 -> skew 3x3, inverse of star.
inline Matrix ast(const Vector3& v) {
    Matrix k(3);
    k(0, 1) = -v.z;
    k(0, 2) = v.y;
    k(1, 0) = v.z;
    k(1, 2) = -v.x;
    k(2, 0) = -v.y;
    k(2, 1) = v.x;
    return k;
}

/// Random orthogonal matrix, deterministic per seed. Built as a product of
/// plane rotations with uniform random angles followed by random column
/// sign flips, so orthogonality holds to machine precision by construction
/// and both determinant signs occur.
inline Matrix random_orthogonal(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_orthogonal: dimension must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    Matrix q = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double t = angle(rng);
            const double c = std::cos(t), s = std::sin(t);
            for (int r = 0; r < n; ++r) {
                const double qi = q(r, i), qj = q(r, j);
                q(r, i) = c * qi + s * qj;
                q(r, j) = -s * qi + c * qj;
            }
        }
    for (int j = 0; j < n; ++j)
        if (rng() & 1u)
            for (int r = 0; r < n; ++r) q(r, j) = -q(r, j);
    return q;
}

}  // namespace sqao
