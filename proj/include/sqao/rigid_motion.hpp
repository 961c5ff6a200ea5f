#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqao/matrix.hpp"

namespace sqao {

/// Rotation about a fixed axis by angle theta (axis must be unit length).
inline Matrix rodrigues(const Vector3& axis, double theta) {
    if (std::abs(norm(axis) - 1.0) > 1e-9) throw std::invalid_argument("rodrigues: axis must be a unit vector");
    const double c = std::cos(theta), s = std::sin(theta);
    Matrix r(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double outer = axis[i] * axis[j];
            r(i, j) = outer + ((i == j ? 1.0 : 0.0) - outer) * c;
        }
    const Matrix hat = ast(axis);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) += hat(i, j) * s;
    return r;
}

enum class ProfileKind { punctuated, constant, oscillatory };

/// Fixed-axis rotation profile theta(tau) with closed-form first and second
/// derivatives.
///
/// punctuated:  three-term Fourier ramp whose rate is a raised triangle
///              wave in [~0.03*omega_m, ~0.97*omega_m]; period tau1.
/// constant:    theta = omega_m * tau (tau1 is carried but unused).
/// oscillatory: rocking motion; the rate is a +-omega_m triangle wave, so
///              the spin direction reverses twice per period tau1.
///
/// All quantities are nondimensional; the axis is normalized at
/// construction.
class MotionProfile {
public:
    MotionProfile(ProfileKind kind, double omega_m, double tau1, const Vector3& axis)
        : kind_(kind), omega_m_(omega_m), tau1_(tau1), axis_(axis) {
        if (!(omega_m > 0.0) || !std::isfinite(omega_m)) throw std::invalid_argument("MotionProfile: omega_m must be > 0");
        if (!(tau1 > 0.0) || !std::isfinite(tau1)) throw std::invalid_argument("MotionProfile: tau1 must be > 0");
        if (!all_finite(axis)) throw std::invalid_argument("MotionProfile: axis must be finite");
        const double len = norm(axis);
        if (!(len > 0.0)) throw std::invalid_argument("MotionProfile: axis must be nonzero");
        axis_ = (1.0 / len) * axis_;
    }

    ProfileKind kind() const { return kind_; }
    double omega_m() const { return omega_m_; }
    double tau1() const { return tau1_; }
    const Vector3& axis() const { return axis_; }

    double theta(double tau) const {
        switch (kind_) {
            case ProfileKind::constant:
                return omega_m_ * tau;
            case ProfileKind::punctuated: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += std::sin(2.0 * n * pi * tau / tau1_) / (n * n * n);
                return omega_m_ / 2.0 * tau - 2.0 * omega_m_ * tau1_ / (pi * pi * pi) * s;
            }
            case ProfileKind::oscillatory: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += alt_sign(n) * std::cos(2.0 * n * pi * tau / tau1_) / (n * n * n);
                return omega_m_ * tau1_ / 8.0 + 4.0 * omega_m_ * tau1_ / (pi * pi * pi) * s;
            }
        }
        throw std::logic_error("MotionProfile: unknown kind");
    }

    double theta_dot(double tau) const {
        switch (kind_) {
            case ProfileKind::constant:
                return omega_m_;
            case ProfileKind::punctuated: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += std::cos(2.0 * n * pi * tau / tau1_) / (n * n);
                return omega_m_ / 2.0 - 4.0 * omega_m_ / (pi * pi) * s;
            }
            case ProfileKind::oscillatory: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += alt_sign(n) * std::sin(2.0 * n * pi * tau / tau1_) / (n * n);
                return -8.0 * omega_m_ / (pi * pi) * s;
            }
        }
        throw std::logic_error("MotionProfile: unknown kind");
    }

    double theta_ddot(double tau) const {
        switch (kind_) {
            case ProfileKind::constant:
                return 0.0;
            case ProfileKind::punctuated: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += std::sin(2.0 * n * pi * tau / tau1_) / n;
                return 8.0 * omega_m_ / (pi * tau1_) * s;
            }
            case ProfileKind::oscillatory: {
                double s = 0.0;
                for (int n : {1, 3, 5}) s += alt_sign(n) * std::cos(2.0 * n * pi * tau / tau1_) / n;
                return -16.0 * omega_m_ / (pi * tau1_) * s;
            }
        }
        throw std::logic_error("MotionProfile: unknown kind");
    }

    /// Attitude at tau; for fixed-axis motion R^T R' = ast(theta_dot * axis).
    Matrix rotation(double tau) const { return rodrigues(axis_, theta(tau)); }

    Vector3 body_angular_velocity(double tau) const { return theta_dot(tau) * axis_; }
    Vector3 body_angular_accel(double tau) const { return theta_ddot(tau) * axis_; }

private:
    static constexpr double pi = std::numbers::pi;
    // (-1)^((n+1)/2) for odd n: -1, +1, -1 for n = 1, 3, 5
    static double alt_sign(int n) { return ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0; }

    ProfileKind kind_;
    double omega_m_;
    double tau1_;
    Vector3 axis_;
};

}  // namespace sqao
