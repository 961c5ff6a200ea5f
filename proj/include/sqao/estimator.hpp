#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqao/matrix.hpp"
#include "sqao/measurement.hpp"
#include "sqao/skew_square.hpp"
#include "sqao/spectral.hpp"

namespace sqao {

enum class Method { sqrt_ao, ao_integration };

inline std::string method_name(Method m) { return m == Method::sqrt_ao ? "sqrt_ao" : "ao_integration"; }

/// Angular-velocity estimate on a time grid.
struct EstimateSeries {
    std::vector<double> times;
    std::vector<Vector3> w_est;
    Method method = Method::sqrt_ao;
};

/// Projection of a symmetric 3x3 measurement onto the squared-skew cone:
/// b_hat = n_factor * diag(0, mu_star, mu_star) * n_factor^T.
struct Projection3 {
    Matrix b_hat;
    Matrix n_factor;
    double mu_star = 0.0;
};

inline Projection3 project_b(const Matrix& b_tilde) {
    if (b_tilde.dim() != 3) throw std::invalid_argument("project_b: matrix must be 3x3");
    double max_asym = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) max_asym = std::max(max_asym, std::abs(b_tilde(i, j) - b_tilde(j, i)));
    if (max_asym > 1e-9 * (1.0 + frobenius_norm(b_tilde)))
        throw std::invalid_argument("project_b: input must be symmetric");
    SkewSquareResult r = approximate(b_tilde);
    return Projection3{std::move(r.u_star), std::move(r.n_factor), r.mu_star[0]};
}

/// Skew root of a projected measurement with the sign ambiguity resolved by
/// continuity: of the two roots +-W the one with a non-negative Frobenius
/// inner product against prev_w is returned (ties and absent prev_w take
/// the positive branch). mu_star = 0 yields the zero matrix.
inline Matrix extract_w(const Matrix& n_factor, double mu_star, const std::optional<Matrix>& prev_w) {
    if (n_factor.dim() != 3) throw std::invalid_argument("extract_w: basis must be 3x3");
    if (mu_star > 0.0) throw std::invalid_argument("extract_w: mu_star must be <= 0");
    const double r = std::sqrt(-mu_star);
    Matrix block(3);
    block(1, 2) = -r;
    block(2, 1) = r;
    Matrix w = skew_part(n_factor * block * n_factor.transposed());
    if (prev_w && frobenius_inner(w, *prev_w) < 0.0) w = -w;
    return w;
}

/// Angular-velocity estimation from the symmetric measurement part alone.
///
/// Per instant the symmetric part is projected onto the squared-skew cone
/// and its skew root is taken. The root's sign ambiguity (the symmetric
/// part cannot distinguish +-W) is resolved against a dead-reckoned
/// comparator: w0 advanced by trapezoidal integration of the measured
/// angular acceleration star(skew_part(P)). Dead reckoning drifts too
/// slowly to corrupt a sign decision over experiment-scale windows, never
/// feeds the noisy roots back into itself, and follows the velocity
/// through rest spans and spin reversals; the roots themselves supply the
/// drift-free magnitude and direction of the estimate.
inline EstimateSeries run_sqrt_ao(const MeasurementSeries& series, const Vector3& w0) {
    if (series.times.empty()) throw std::invalid_argument("run_sqrt_ao: empty series");
    if (series.p_tilde.size() != series.times.size())
        throw std::invalid_argument("run_sqrt_ao: instants and readouts disagree");
    if (!all_finite(w0)) throw std::invalid_argument("run_sqrt_ao: w0 must be finite");

    EstimateSeries est;
    est.times = series.times;
    est.method = Method::sqrt_ao;
    est.w_est.reserve(series.times.size());

    Vector3 reckoned = w0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const Projection3 proj = project_b(sym_part(series.p_tilde[i]));
        const Matrix w = extract_w(proj.n_factor, proj.mu_star, ast(reckoned));
        est.w_est.push_back(star(w));
        if (i + 1 < series.times.size()) {
            const double dt = series.times[i + 1] - series.times[i];
            const Vector3 a0 = star(skew_part(series.p_tilde[i]));
            const Vector3 a1 = star(skew_part(series.p_tilde[i + 1]));
            reckoned = reckoned + (dt / 2.0) * (a0 + a1);
        }
    }
    return est;
}

/// Baseline: trapezoidal integration of the measured angular acceleration
/// star(skew_part(P)) from the initial velocity w0.
inline EstimateSeries run_ao_baseline(const MeasurementSeries& series, const Vector3& w0) {
    if (series.times.size() < 2) throw std::invalid_argument("run_ao_baseline: need at least two instants");
    if (series.p_tilde.size() != series.times.size())
        throw std::invalid_argument("run_ao_baseline: instants and readouts disagree");
    if (!all_finite(w0)) throw std::invalid_argument("run_ao_baseline: w0 must be finite");

    EstimateSeries est;
    est.times = series.times;
    est.method = Method::ao_integration;
    est.w_est.reserve(series.times.size());

    Vector3 w = w0;
    Vector3 prev_a = star(skew_part(series.p_tilde[0]));
    est.w_est.push_back(w);
    for (std::size_t i = 1; i < series.times.size(); ++i) {
        const Vector3 a = star(skew_part(series.p_tilde[i]));
        const double dt = series.times[i] - series.times[i - 1];
        w = w + (dt / 2.0) * (prev_a + a);
        est.w_est.push_back(w);
        prev_a = a;
    }
    return est;
}

/// Relative L2 error ||est - truth|| / ||truth|| over the estimate's grid,
/// both norms by trapezoidal quadrature. Identically zero truth has no
/// relative error and is rejected.
inline double relative_l2_error(const EstimateSeries& est, const std::vector<Vector3>& truth_w) {
    if (est.times.size() != est.w_est.size() || est.times.size() != truth_w.size())
        throw std::invalid_argument("relative_l2_error: grid mismatch");
    if (est.times.size() < 2) throw std::invalid_argument("relative_l2_error: need at least two instants");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < est.times.size(); ++i) {
        const double dt = est.times[i + 1] - est.times[i];
        const Vector3 e0 = est.w_est[i] - truth_w[i];
        const Vector3 e1 = est.w_est[i + 1] - truth_w[i + 1];
        num += dt / 2.0 * (dot(e0, e0) + dot(e1, e1));
        den += dt / 2.0 * (dot(truth_w[i], truth_w[i]) + dot(truth_w[i + 1], truth_w[i + 1]));
    }
    if (!(den > 0.0)) throw std::invalid_argument("relative_l2_error: truth is identically zero");
    return std::sqrt(num / den);
}

/// A-posteriori error relations between a true root/cone pair and their
/// estimates. The quartic velocity bound
///     ||W_true - W_est||_F^4 <= c_n * ||B - B_hat||_F^2
/// holds for n in {2, 3} (c_2 = 2, c_3 = 8) whenever the roots are not
/// anti-aligned; outside that regime the report is marked not applicable.
/// When the raw measurement is supplied the projection bound
///     ||B - B_hat||_F <= 2 * ||B - B_tilde||_F
/// is evaluated as well.
struct ErrorBoundReport {
    bool applicable = false;      ///< n in {2,3} and <W_true, W_est> > 0
    double inner = 0.0;           ///< <W_true, W_est>_F
    double c_n = 0.0;
    double w_err_pow4 = 0.0;      ///< ||W_true - W_est||_F^4
    double proj_err_sq = 0.0;     ///< c_n * ||B - B_hat||_F^2
    bool w_bound_holds = false;
    bool has_approx_bound = false;
    double b_err = 0.0;           ///< ||B - B_hat||_F
    double b_tilde_err_x2 = 0.0;  ///< 2 * ||B - B_tilde||_F
    bool approx_bound_holds = false;
};

inline ErrorBoundReport check_error_bounds(const Matrix& w_true, const Matrix& w_est, const Matrix& b,
                                           const Matrix& b_hat, const std::optional<Matrix>& b_tilde = std::nullopt) {
    require_same_dim(w_true, w_est, "check_error_bounds");
    require_same_dim(w_true, b, "check_error_bounds");
    require_same_dim(w_true, b_hat, "check_error_bounds");

    ErrorBoundReport rep;
    rep.inner = frobenius_inner(w_true, w_est);
    const int n = w_true.dim();
    if ((n == 2 || n == 3) && rep.inner > 0.0) {
        rep.applicable = true;
        rep.c_n = n == 2 ? 2.0 : 8.0;
        const double werr = frobenius_norm(w_true - w_est);
        rep.w_err_pow4 = werr * werr * werr * werr;
        const double berr = frobenius_norm(b - b_hat);
        rep.proj_err_sq = rep.c_n * berr * berr;
        rep.w_bound_holds = rep.w_err_pow4 <= rep.proj_err_sq;
    }
    if (b_tilde) {
        require_same_dim(w_true, *b_tilde, "check_error_bounds");
        rep.has_approx_bound = true;
        rep.b_err = frobenius_norm(b - b_hat);
        rep.b_tilde_err_x2 = 2.0 * frobenius_norm(b - *b_tilde);
        rep.approx_bound_holds = rep.b_err <= rep.b_tilde_err_x2;
    }
    return rep;
}

}  // namespace sqao
