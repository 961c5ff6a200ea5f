#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sqao/estimator.hpp"
#include "sqao/io.hpp"
#include "support.hpp"

using namespace sqao;

namespace {

MeasurementSeries zero_series(std::size_t count) {
    MeasurementSeries s;
    for (std::size_t i = 0; i < count; ++i) {
        s.times.push_back(static_cast<double>(i) * 0.01);
        s.p_tilde.emplace_back(3);
    }
    return s;
}

}  // namespace

TEST_CASE("projection onto the cone: fixed point, zero branch, golden case", "[estimator]") {
    const Matrix member = Matrix::diagonal({-4, -4, 0});
    const Projection3 fixed = project_b(member);
    CHECK(support::max_abs_diff(fixed.b_hat, member) <= 1e-12);
    CHECK(fixed.mu_star == Catch::Approx(-4.0).margin(1e-12));

    const Projection3 positive = project_b(Matrix::diagonal({1, 2, 3}));
    CHECK(frobenius_norm(positive.b_hat) == 0.0);
    CHECK(positive.mu_star == 0.0);

    const Matrix b = Matrix::from_rows({{-1, 3, 0}, {3, -1, 0}, {0, 0, -6}});
    const Projection3 golden = project_b(b);
    CHECK(golden.mu_star == Catch::Approx(-5.0).margin(1e-9));
    const Matrix expected = Matrix::from_rows({{-2.5, 2.5, 0}, {2.5, -2.5, 0}, {0, 0, -5}});
    CHECK(support::max_abs_diff(golden.b_hat, expected) <= 1e-9);

    CHECK_THROWS_AS(project_b(Matrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(project_b(Matrix::identity(2)), std::invalid_argument);
}

TEST_CASE("root extraction follows the matched-sign rule", "[estimator]") {
    const Projection3 proj = project_b(Matrix::diagonal({-4, -4, 0}));
    const Matrix toward = extract_w(proj.n_factor, proj.mu_star, ast({0, 0, 1.9}));
    CHECK(support::max_abs_diff(toward, ast({0, 0, 2})) <= 1e-12);
    const Matrix away = extract_w(proj.n_factor, proj.mu_star, -ast({0, 0, 2}));
    CHECK(support::max_abs_diff(away, ast({0, 0, -2})) <= 1e-12);

    const Matrix rest = extract_w(proj.n_factor, 0.0, ast({0, 0, 1}));
    CHECK(frobenius_norm(rest) == 0.0);

    // absent comparator takes the positive branch deterministically
    const Matrix plus = extract_w(proj.n_factor, proj.mu_star, std::nullopt);
    CHECK(support::max_abs_diff(plus, ast({0, 0, 2})) <= 1e-12);

    CHECK_THROWS_AS(extract_w(proj.n_factor, 0.5, std::nullopt), std::invalid_argument);
}

TEST_CASE("extracted root squares back to the projection", "[estimator]") {
    auto rng = support::make_rng(501);
    for (int trial = 0; trial < 500; ++trial) {
        const Matrix b_tilde = support::random_symmetric(3, rng, 5.0);
        const Projection3 proj = project_b(b_tilde);
        const Matrix w = extract_w(proj.n_factor, proj.mu_star, std::nullopt);
        REQUIRE(support::max_abs_diff(w, -w.transposed()) == 0.0);
        REQUIRE(frobenius_norm(w * w - proj.b_hat) <= 1e-8 * (1.0 + frobenius_norm(proj.b_hat)));
    }
}

TEST_CASE("noiseless pipeline is exact for all three profiles", "[estimator]") {
    struct Case {
        MotionProfile profile;
        double duration;
    };
    const Case cases[] = {
        {MotionProfile(ProfileKind::punctuated, 31.41, 5.81, {-0.27, -0.28, -0.92}), 3.0 * 5.81},
        {MotionProfile(ProfileKind::constant, 31.41, 5.81, {0, 0, 1}), 3.0 * 5.81},
        {MotionProfile(ProfileKind::oscillatory, 31.41, 11.62, {0, 0, 1}), 3.0 * 11.62},
    };
    for (const Case& c : cases) {
        const MeasurementSeries s = generate(c.profile, uniform_grid(c.duration, 1600.0), 0.0, 0);
        const EstimateSeries est = run_sqrt_ao(s, s.truth_w.front());
        REQUIRE(relative_l2_error(est, s.truth_w) <= 1e-6);
    }
}

TEST_CASE("constant spin is recovered instant by instant", "[estimator]") {
    const MotionProfile p(ProfileKind::constant, 31.41, 5.81, {0, 0, 1});
    const MeasurementSeries s = generate(p, uniform_grid(1.0, 400.0), 0.0, 0);
    const EstimateSeries est = run_sqrt_ao(s, {0, 0, 31.41});
    for (const Vector3& w : est.w_est) REQUIRE(norm(w - Vector3{0, 0, 31.41}) <= 1e-7);
}

TEST_CASE("zero readouts yield zero estimates", "[estimator]") {
    const EstimateSeries est = run_sqrt_ao(zero_series(50), {1, 2, 3});
    for (const Vector3& w : est.w_est) REQUIRE(norm(w) == 0.0);
}

TEST_CASE("sign continuity holds along noiseless non-reversing runs", "[estimator]") {
    const MotionProfile profiles[] = {
        MotionProfile(ProfileKind::punctuated, 31.41, 5.81, {-0.27, -0.28, -0.92}),
        MotionProfile(ProfileKind::constant, 31.41, 5.81, {0, 0, 1}),
    };
    for (const MotionProfile& p : profiles) {
        const MeasurementSeries s = generate(p, uniform_grid(5.81, 1600.0), 0.0, 0);
        const EstimateSeries est = run_sqrt_ao(s, s.truth_w.front());
        for (std::size_t i = 1; i < est.w_est.size(); ++i) {
            // <ast(a),ast(b)>_F = 2 a.b
            REQUIRE(2.0 * dot(est.w_est[i - 1], est.w_est[i]) >= 0.0);
        }
    }
}

TEST_CASE("baseline integration: constant spin stays at the initial velocity", "[estimator]") {
    const MotionProfile p(ProfileKind::constant, 31.41, 5.81, {0, 0, 1});
    const MeasurementSeries s = generate(p, uniform_grid(1.0, 400.0), 0.0, 0);
    const EstimateSeries est = run_ao_baseline(s, {0, 0, 31.41});
    for (const Vector3& w : est.w_est) REQUIRE(norm(w - Vector3{0, 0, 31.41}) == 0.0);
    CHECK(est.method == Method::ao_integration);

    MeasurementSeries single = zero_series(1);
    CHECK_THROWS_AS(run_ao_baseline(single, Vector3{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("baseline integration converges at second order in the step", "[estimator]") {
    const MotionProfile p(ProfileKind::punctuated, 31.41, 5.81, {-0.27, -0.28, -0.92});
    double errs[2];
    const double rates[2] = {400.0, 800.0};
    for (int k = 0; k < 2; ++k) {
        const MeasurementSeries s = generate(p, uniform_grid(5.81, rates[k]), 0.0, 0);
        const EstimateSeries est = run_ao_baseline(s, s.truth_w.front());
        errs[k] = relative_l2_error(est, s.truth_w);
    }
    CHECK(errs[0] / errs[1] > 2.5);  // halving the step should cut error ~4x
    CHECK(errs[0] / errs[1] < 6.0);
}

TEST_CASE("relative error metric anchors", "[estimator]") {
    const MotionProfile p(ProfileKind::punctuated, 31.41, 5.81, {-0.27, -0.28, -0.92});
    const MeasurementSeries s = generate(p, uniform_grid(1.0, 200.0), 0.0, 0);

    EstimateSeries est;
    est.times = s.times;
    est.w_est = s.truth_w;
    CHECK(relative_l2_error(est, s.truth_w) == 0.0);

    for (Vector3& w : est.w_est) w = 1.1 * w;
    CHECK(relative_l2_error(est, s.truth_w) == Catch::Approx(0.1).margin(1e-12));

    for (Vector3& w : est.w_est) w = {0, 0, 0};
    CHECK(relative_l2_error(est, s.truth_w) == Catch::Approx(1.0).margin(1e-12));

    EstimateSeries short_est = est;
    short_est.times.pop_back();
    short_est.w_est.pop_back();
    CHECK_THROWS_AS(relative_l2_error(short_est, s.truth_w), std::invalid_argument);
    const std::vector<Vector3> zeros(est.times.size(), Vector3{0, 0, 0});
    CHECK_THROWS_AS(relative_l2_error(est, zeros), std::invalid_argument);
}

TEST_CASE("error bounds: trivial, random, and inapplicable cases", "[estimator]") {
    auto rng = support::make_rng(502);

    const Matrix w = ast({1, 2, 3});
    const Matrix b = w * w;
    const ErrorBoundReport same = check_error_bounds(w, w, b, b);
    CHECK(same.applicable);
    CHECK(same.w_bound_holds);
    CHECK(same.w_err_pow4 == 0.0);

    int applicable = 0;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double scale = std::pow(10.0, unit(rng));
        const Matrix w_true = support::random_skew(3, rng, scale);
        const Matrix b_true = w_true * w_true;
        const Matrix b_tilde = b_true + support::random_symmetric(3, rng, 0.3 * scale * scale);
        const Projection3 proj = project_b(b_tilde);
        const Matrix w_est = extract_w(proj.n_factor, proj.mu_star, w_true);
        const ErrorBoundReport rep = check_error_bounds(w_true, w_est, b_true, proj.b_hat, b_tilde);
        REQUIRE(rep.has_approx_bound);
        REQUIRE(rep.approx_bound_holds);
        if (rep.applicable) {
            ++applicable;
            REQUIRE(rep.c_n == 8.0);
            REQUIRE(rep.w_bound_holds);
        }
    }
    CHECK(applicable > 400);  // aligned draws dominate at these noise levels

    const Matrix w4 = support::random_skew(4, rng, 1.0);
    const ErrorBoundReport high_dim = check_error_bounds(w4, w4, w4 * w4, w4 * w4);
    CHECK_FALSE(high_dim.applicable);

    const ErrorBoundReport anti = check_error_bounds(w, -w, b, b);
    CHECK_FALSE(anti.applicable);
}

TEST_CASE("estimation error stays flat while integration drifts", "[estimator]") {
    const MotionProfile p(ProfileKind::punctuated, 31.41, 5.81, {-0.27, -0.28, -0.92});
    const double duration = 3.0 * 5.81;
    const MeasurementSeries s = generate(p, uniform_grid(duration, 1600.0), 5.0, 17);
    const EstimateSeries direct = run_sqrt_ao(s, s.truth_w.front());
    const EstimateSeries integrated = run_ao_baseline(s, s.truth_w.front());

    // least-squares slope of the per-instant error magnitude against time
    const auto drift = [&](const EstimateSeries& est) {
        double st = 0, se = 0, stt = 0, ste = 0;
        const auto n = static_cast<double>(est.times.size());
        for (std::size_t i = 0; i < est.times.size(); ++i) {
            const double e = norm(est.w_est[i] - s.truth_w[i]);
            st += est.times[i];
            se += e;
            stt += est.times[i] * est.times[i];
            ste += est.times[i] * e;
        }
        const double slope = (n * ste - st * se) / (n * stt - st * st);
        return std::pair{slope, se / n};
    };

    const auto [slope_direct, mean_direct] = drift(direct);
    const auto [slope_int, mean_int] = drift(integrated);
    CHECK(std::abs(slope_direct) * duration <= 0.5 * mean_direct);
    CHECK(slope_int * duration > mean_int);
}
