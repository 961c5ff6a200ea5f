// sqao: approximate square matrices by squares of skew-symmetric matrices
// and estimate rigid-body angular velocity from accelerometer-array readouts.
//
// Subcommands:
//   approx    project a matrix CSV onto the squared-skew cone
//   simulate  synthesize a measurement series for a motion profile
//   estimate  run an estimator over a measurement series CSV
//   compare   simulate once, run both estimators, emit plot-ready columns
//
// Exit codes: 0 success, 2 usage, 3 data error, 4 numerical failure.

#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqao/estimator.hpp"
#include "sqao/io.hpp"
#include "sqao/matrix.hpp"
#include "sqao/measurement.hpp"
#include "sqao/rigid_motion.hpp"
#include "sqao/skew_square.hpp"

namespace {

/// Flag misuse distinct from file/data problems; maps to exit 2.
struct usage_error : std::exception {
    std::string message;
    explicit usage_error(std::string m) : message(std::move(m)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

/// Default output location: SQAO_OUT_DIR when set, else the working directory.
std::string resolve_out(const std::string& user_path, const std::string& default_name) {
    if (!user_path.empty()) return user_path;
    const char* dir = std::getenv("SQAO_OUT_DIR");
    if (dir != nullptr && *dir != '\0') return (std::filesystem::path(dir) / default_name).string();
    return default_name;
}

sqao::Vector3 parse_vector3(const std::string& text, const std::string& flag) {
    const auto fields = sqao::detail::split_fields(text);
    if (fields.size() != 3) throw usage_error(flag + ": expected three comma-separated numbers, got '" + text + "'");
    try {
        return {sqao::detail::parse_double(fields[0], flag), sqao::detail::parse_double(fields[1], flag),
                sqao::detail::parse_double(fields[2], flag)};
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

/// Simulation parameters shared by `simulate` and `compare`. tau1 and
/// duration default from the profile kind, so they stay unset until resolved.
struct SimConfig {
    std::string profile = "punctuated";
    double omega_m = 31.41;
    double tau1 = std::numeric_limits<double>::quiet_NaN();
    std::string axis = "-0.27,-0.28,-0.92";
    double duration = std::numeric_limits<double>::quiet_NaN();
    double rate = 1600.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

void add_sim_flags(CLI::App* cmd, SimConfig& cfg) {
    cmd->add_option("--profile", cfg.profile, "Motion profile: punctuated, constant, or oscillatory")
        ->check(CLI::IsMember({"punctuated", "constant", "oscillatory"}))
        ->capture_default_str();
    cmd->add_option("--omega-m", cfg.omega_m, "Peak rotation rate")->capture_default_str();
    cmd->add_option("--tau1", cfg.tau1, "Profile period (default 5.81; 11.62 for oscillatory)");
    cmd->add_option("--axis", cfg.axis, "Rotation axis as x,y,z (normalized internally)")->capture_default_str();
    cmd->add_option("--duration", cfg.duration, "Length of the experiment window (default 3*tau1)");
    cmd->add_option("--rate", cfg.rate, "Samples per unit time")->capture_default_str();
    cmd->add_option("--sigma", cfg.sigma, "Std dev of i.i.d. Gaussian noise per readout entry")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Noise seed")->capture_default_str();
}

sqao::ProfileKind profile_kind(const std::string& name) {
    if (name == "punctuated") return sqao::ProfileKind::punctuated;
    if (name == "constant") return sqao::ProfileKind::constant;
    return sqao::ProfileKind::oscillatory;
}

/// Fill kind-dependent defaults and synthesize the series.
sqao::MeasurementSeries simulate_series(SimConfig& cfg) {
    const sqao::ProfileKind kind = profile_kind(cfg.profile);
    if (std::isnan(cfg.tau1)) cfg.tau1 = kind == sqao::ProfileKind::oscillatory ? 11.62 : 5.81;
    if (std::isnan(cfg.duration)) cfg.duration = 3.0 * cfg.tau1;
    if (!(cfg.omega_m > 0.0)) throw usage_error("--omega-m must be positive");
    if (!(cfg.tau1 > 0.0)) throw usage_error("--tau1 must be positive");
    if (!(cfg.duration > 0.0)) throw usage_error("--duration must be positive");
    if (!(cfg.rate > 0.0)) throw usage_error("--rate must be positive");
    if (!(cfg.sigma >= 0.0)) throw usage_error("--sigma must be non-negative");

    const sqao::Vector3 axis = parse_vector3(cfg.axis, "--axis");
    const sqao::MotionProfile profile(kind, cfg.omega_m, cfg.tau1, axis);
    return sqao::generate(profile, sqao::uniform_grid(cfg.duration, cfg.rate), cfg.sigma, cfg.seed);
}

int cmd_approx(const std::string& input, const std::string& output_opt, const std::string& meta_opt) {
    const std::string output = resolve_out(output_opt, "ustar.csv");
    std::string meta = meta_opt;
    if (meta.empty()) {
        std::filesystem::path p(output);
        p.replace_extension(".json");
        meta = p.string();
    }

    const sqao::Matrix a = sqao::read_matrix_csv(input);
    const sqao::SkewSquareResult r = sqao::approximate(a);
    sqao::write_matrix_csv(output, r.u_star);

    nlohmann::json j;
    j["input"] = input;
    j["n"] = a.dim();
    j["lambda"] = sqao::eig_symmetric(sqao::sym_part(a)).lambda;
    j["d_star"] = r.d_star;
    j["mu_star"] = r.mu_star;
    j["residual"] = r.residual;
    sqao::detail::write_text(meta, j.dump(2) + "\n", "cmd_approx");

    std::cout << "wrote " << output << " and " << meta << "\n";
    std::cout << "residual = " << sqao::format_g17(r.residual) << "\n";
    return 0;
}

int cmd_simulate(SimConfig& cfg, const std::string& output_opt) {
    const std::string output = resolve_out(output_opt, "series.csv");
    const sqao::MeasurementSeries s = simulate_series(cfg);
    sqao::write_series_csv(output, s);
    std::cout << "wrote " << output << " (" << s.times.size() << " instants)\n";
    return 0;
}

int cmd_estimate(const std::string& input, const std::string& method, const std::string& w0_text,
                 const std::string& output_opt) {
    const std::string output = resolve_out(output_opt, "estimate.csv");
    const sqao::MeasurementSeries s = sqao::read_series_csv(input);

    sqao::Vector3 w0{};
    if (!w0_text.empty()) {
        w0 = parse_vector3(w0_text, "--w0");
    } else if (!s.truth_w.empty()) {
        w0 = s.truth_w.front();
    } else {
        throw usage_error("--w0 is required when the series has no truth columns");
    }

    const sqao::EstimateSeries est = method == "sqrt_ao" ? sqao::run_sqrt_ao(s, w0) : sqao::run_ao_baseline(s, w0);
    sqao::write_estimate_csv(output, est);
    std::cout << "wrote " << output << " (" << sqao::method_name(est.method) << ")\n";
    if (!s.truth_w.empty())
        std::cout << "relative_l2 = " << sqao::format_g17(sqao::relative_l2_error(est, s.truth_w)) << "\n";
    return 0;
}

int cmd_compare(SimConfig& cfg, const std::string& w0_text, const std::string& output_opt,
                const std::string& metrics_opt) {
    const std::string output = resolve_out(output_opt, "compare.csv");
    const std::string metrics = resolve_out(metrics_opt, "metrics.json");

    const sqao::MeasurementSeries s = simulate_series(cfg);
    const sqao::Vector3 w0 = w0_text.empty() ? s.truth_w.front() : parse_vector3(w0_text, "--w0");
    const sqao::EstimateSeries direct = sqao::run_sqrt_ao(s, w0);
    const sqao::EstimateSeries integrated = sqao::run_ao_baseline(s, w0);

    std::ostringstream table;
    table << "tau,truth_w1,truth_w2,truth_w3,sqrt_ao_w1,sqrt_ao_w2,sqrt_ao_w3,ao_w1,ao_w2,ao_w3\n";
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        table << sqao::format_g17(s.times[i]);
        for (const sqao::Vector3& w : {s.truth_w[i], direct.w_est[i], integrated.w_est[i]})
            table << ',' << sqao::format_g17(w.x) << ',' << sqao::format_g17(w.y) << ',' << sqao::format_g17(w.z);
        table << '\n';
    }
    sqao::detail::write_text(output, table.str(), "cmd_compare");

    const double err_direct = sqao::relative_l2_error(direct, s.truth_w);
    const double err_integrated = sqao::relative_l2_error(integrated, s.truth_w);
    nlohmann::json j;
    j["profile"] = cfg.profile;
    j["omega_m"] = cfg.omega_m;
    j["tau1"] = cfg.tau1;
    j["duration"] = cfg.duration;
    j["rate"] = cfg.rate;
    j["sigma"] = cfg.sigma;
    j["seed"] = cfg.seed;
    j["instants"] = s.times.size();
    j["sqrt_ao_relative_l2"] = err_direct;
    j["ao_relative_l2"] = err_integrated;
    sqao::detail::write_text(metrics, j.dump(2) + "\n", "cmd_compare");

    std::cout << "wrote " << output << " and " << metrics << "\n";
    std::cout << "sqrt_ao relative_l2 = " << sqao::format_g17(err_direct) << "\n";
    std::cout << "ao_integration relative_l2 = " << sqao::format_g17(err_integrated) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Skew-square matrix approximation and angular-velocity estimation"};
    app.require_subcommand(1);

    std::string approx_input, approx_output, approx_meta;
    CLI::App* approx = app.add_subcommand("approx", "Project a square matrix CSV onto the squared-skew cone");
    approx->add_option("--input", approx_input, "Square matrix CSV, one row per line")->required();
    approx->add_option("--output", approx_output, "Approximant CSV path (default ustar.csv)");
    approx->add_option("--meta", approx_meta, "Summary JSON path (default: output with .json extension)");

    SimConfig sim_cfg;
    std::string sim_output;
    CLI::App* simulate = app.add_subcommand("simulate", "Synthesize a measurement series for a motion profile");
    add_sim_flags(simulate, sim_cfg);
    simulate->add_option("--output", sim_output, "Series CSV path (default series.csv)");

    std::string est_input, est_method = "sqrt_ao", est_w0, est_output;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate angular velocity from a series CSV");
    estimate->add_option("--input", est_input, "Measurement series CSV")->required();
    estimate->add_option("--method", est_method, "sqrt_ao or ao")
        ->check(CLI::IsMember({"sqrt_ao", "ao"}))
        ->capture_default_str();
    estimate->add_option("--w0", est_w0, "Initial angular velocity x,y,z (default: first truth row)");
    estimate->add_option("--output", est_output, "Estimate CSV path (default estimate.csv)");

    SimConfig cmp_cfg;
    std::string cmp_w0, cmp_output, cmp_metrics;
    CLI::App* compare = app.add_subcommand("compare", "Simulate once and run both estimators");
    add_sim_flags(compare, cmp_cfg);
    compare->add_option("--w0", cmp_w0, "Initial angular velocity x,y,z (default: first truth row)");
    compare->add_option("--output", cmp_output, "Combined time-series CSV path (default compare.csv)");
    compare->add_option("--metrics", cmp_metrics, "Metrics JSON path (default metrics.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (approx->parsed()) return cmd_approx(approx_input, approx_output, approx_meta);
        if (simulate->parsed()) return cmd_simulate(sim_cfg, sim_output);
        if (estimate->parsed()) return cmd_estimate(est_input, est_method, est_w0, est_output);
        return cmd_compare(cmp_cfg, cmp_w0, cmp_output, cmp_metrics);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
