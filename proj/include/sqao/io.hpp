#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqao/estimator.hpp"
#include "sqao/matrix.hpp"
#include "sqao/measurement.hpp"

namespace sqao {

/// Shortest representation that round-trips a double exactly.
inline std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline double parse_double(std::string_view field, const std::string& context) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::invalid_argument(context + ": malformed number '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::vector<std::string> read_lines(const std::string& path, const std::string& context) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(context + ": cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

inline void write_text(const std::string& path, const std::string& text, const std::string& context) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(context + ": cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::invalid_argument(context + ": write failed for '" + path + "'");
}

}  // namespace detail

/// Square matrix as bare CSV: one row per line, no header.
inline Matrix read_matrix_csv(const std::string& path) {
    const auto lines = detail::read_lines(path, "read_matrix_csv");
    if (lines.empty()) throw std::invalid_argument("read_matrix_csv: '" + path + "' is empty");
    const int n = static_cast<int>(lines.size());
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& line : lines) {
        const auto fields = detail::split_fields(line);
        if (static_cast<int>(fields.size()) != n)
            throw std::invalid_argument("read_matrix_csv: '" + path + "' is not square");
        for (const auto f : fields) entries.push_back(detail::parse_double(f, "read_matrix_csv"));
    }
    return Matrix(n, std::move(entries));
}

inline void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ostringstream out;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j) out << ',';
            out << format_g17(m(i, j));
        }
        out << '\n';
    }
    detail::write_text(path, out.str(), "write_matrix_csv");
}

inline constexpr const char* series_header = "tau,p11,p12,p13,p21,p22,p23,p31,p32,p33,w1,w2,w3";
inline constexpr const char* series_header_no_truth = "tau,p11,p12,p13,p21,p22,p23,p31,p32,p33";

/// Measurement series CSV; truth columns are written when available.
inline void write_series_csv(const std::string& path, const MeasurementSeries& series) {
    if (series.p_tilde.size() != series.times.size())
        throw std::invalid_argument("write_series_csv: instants and readouts disagree");
    const bool truth = !series.truth_w.empty();
    if (truth && series.truth_w.size() != series.times.size())
        throw std::invalid_argument("write_series_csv: instants and truth disagree");

    std::ostringstream out;
    out << (truth ? series_header : series_header_no_truth) << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << format_g17(series.times[i]);
        const Matrix& p = series.p_tilde[i];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out << ',' << format_g17(p(r, c));
        if (truth) {
            const Vector3& w = series.truth_w[i];
            out << ',' << format_g17(w.x) << ',' << format_g17(w.y) << ',' << format_g17(w.z);
        }
        out << '\n';
    }
    detail::write_text(path, out.str(), "write_series_csv");
}

inline MeasurementSeries read_series_csv(const std::string& path) {
    const auto lines = detail::read_lines(path, "read_series_csv");
    if (lines.empty()) throw std::invalid_argument("read_series_csv: '" + path + "' is empty");

    bool truth = false;
    if (lines[0] == series_header)
        truth = true;
    else if (lines[0] != series_header_no_truth)
        throw std::invalid_argument("read_series_csv: '" + path + "' has an unrecognized header");
    const std::size_t expected = truth ? 13 : 10;

    MeasurementSeries series;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = detail::split_fields(lines[li]);
        if (fields.size() != expected)
            throw std::invalid_argument("read_series_csv: '" + path + "' row has wrong field count");
        std::vector<double> v(expected);
        for (std::size_t k = 0; k < expected; ++k) v[k] = detail::parse_double(fields[k], "read_series_csv");
        series.times.push_back(v[0]);
        series.p_tilde.emplace_back(3, std::vector<double>(v.begin() + 1, v.begin() + 10));
        if (truth) series.truth_w.push_back({v[10], v[11], v[12]});
    }
    if (series.times.empty()) throw std::invalid_argument("read_series_csv: '" + path + "' has no data rows");
    for (std::size_t i = 0; i + 1 < series.times.size(); ++i)
        if (!(series.times[i] < series.times[i + 1]))
            throw std::invalid_argument("read_series_csv: '" + path + "' instants are not strictly increasing");
    return series;
}

/// Estimate CSV: tau,w1,w2,w3,method.
inline void write_estimate_csv(const std::string& path, const EstimateSeries& est) {
    if (est.w_est.size() != est.times.size())
        throw std::invalid_argument("write_estimate_csv: instants and estimates disagree");
    std::ostringstream out;
    out << "tau,w1,w2,w3,method\n";
    const std::string name = method_name(est.method);
    for (std::size_t i = 0; i < est.times.size(); ++i) {
        const Vector3& w = est.w_est[i];
        out << format_g17(est.times[i]) << ',' << format_g17(w.x) << ',' << format_g17(w.y) << ','
            << format_g17(w.z) << ',' << name << '\n';
    }
    detail::write_text(path, out.str(), "write_estimate_csv");
}

}  // namespace sqao
