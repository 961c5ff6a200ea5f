#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sqao/matrix.hpp"
#include "sqao/rigid_motion.hpp"

namespace sqao {

/// Time series of simulated accelerometer-array readouts. Each instant
/// carries the 3x3 matrix P = ast(w)^2 + ast(w'), optionally corrupted by
/// i.i.d. Gaussian noise per entry, plus the ground-truth angular velocity.
/// truth_w is empty when the series was parsed from a file without truth
/// columns; noise_sigma and seed are generation metadata only.
struct MeasurementSeries {
    std::vector<double> times;     ///< strictly increasing sample instants
    std::vector<Matrix> p_tilde;   ///< one 3x3 readout per instant
    std::vector<Vector3> truth_w;  ///< ground-truth angular velocity, empty if unknown
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Uniform grid 0, 1/rate, 2/rate, ... covering [0, duration].
inline std::vector<double> uniform_grid(double duration, double rate) {
    if (!(duration > 0.0) || !(rate > 0.0)) throw std::invalid_argument("uniform_grid: duration and rate must be > 0");
    const auto count = static_cast<std::size_t>(std::floor(duration * rate + 1e-9)) + 1;
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i) / rate;
    return t;
}

namespace detail {

// per-instant generator seed; keeps instants independent and the series
// reproducible under any evaluation order
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t instant) {
    std::uint64_t z = seed + (instant + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Simulated readout series for a motion profile. With noise_sigma = 0 the
/// symmetric part of each readout is exactly ast(w)^2 and the skew part is
/// exactly ast(w'). Noise draws are seeded per (seed, instant), so a fixed
/// seed reproduces the series byte for byte.
inline MeasurementSeries generate(const MotionProfile& profile, const std::vector<double>& times,
                                  double noise_sigma, std::uint64_t seed) {
    if (times.empty()) throw std::invalid_argument("generate: empty time grid");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw std::invalid_argument("generate: time grid must be strictly increasing");
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("generate: noise sigma must be >= 0");

    MeasurementSeries series;
    series.times = times;
    series.noise_sigma = noise_sigma;
    series.seed = seed;
    series.p_tilde.reserve(times.size());
    series.truth_w.reserve(times.size());

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double tau = times[i];
        const Vector3 w = profile.body_angular_velocity(tau);
        const Matrix hat_w = ast(w);
        Matrix p = hat_w * hat_w + ast(profile.body_angular_accel(tau));
        if (noise_sigma > 0.0) {
            std::mt19937_64 rng(detail::mix_seed(seed, i));
            std::normal_distribution<double> gauss(0.0, noise_sigma);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) p(r, c) += gauss(rng);
        }
        series.p_tilde.push_back(std::move(p));
        series.truth_w.push_back(w);
    }
    return series;
}

}  // namespace sqao
