/*
 Copyright 2026 The secidx Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "secidx/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace secidx {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    // Shortest representation that parses back to the same bits.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

json matrix_to_json(const MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXd matrix_from_json(const json& j, const std::string& name) {
    if (!j.is_array()) throw std::runtime_error("system JSON: " + name + " must be an array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
            throw std::runtime_error("system JSON: ragged rows in " + name);
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

json meta_to_json(const Report& r) {
    return json{{"N", r.N},     {"L", r.L},           {"d", r.d},
                {"pe_order", r.pe_order}, {"tol", r.tol},      {"seed", r.seed},
                {"threads", r.threads},   {"version", r.version}};
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    const int m = static_cast<int>(traj.u.rows());
    const int p = static_cast<int>(traj.y.rows());
    out << "k";
    for (int j = 0; j < m; ++j) out << ",u" << (j + 1);
    for (int l = 0; l < p; ++l) out << ",y" << (l + 1);
    out << "\n";
    for (int k = 0; k < traj.length(); ++k) {
        out << k;
        for (int j = 0; j < m; ++j) out << ',' << format_double(traj.u(j, k));
        for (int l = 0; l < p; ++l) out << ',' << format_double(traj.y(l, k));
        out << "\n";
    }
}

Trajectory read_trajectory_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV is empty: " + path);
    const auto header = split_csv(line);
    if (header.empty() || header[0] != "k")
        throw std::runtime_error("trajectory CSV: first column must be k");
    int m = 0, p = 0;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].rfind("u", 0) == 0 && p == 0)
            ++m;
        else if (header[c].rfind("y", 0) == 0)
            ++p;
        else
            throw std::runtime_error("trajectory CSV: unexpected column " + header[c]);
    }

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != 1 + m + p)
            throw std::runtime_error("trajectory CSV: wrong field count in row " + line);
        std::vector<double> vals;
        for (std::size_t c = 1; c < fields.size(); ++c) vals.push_back(std::stod(fields[c]));
        rows.push_back(std::move(vals));
    }
    Trajectory traj;
    const int n_rows = static_cast<int>(rows.size());
    traj.u.resize(m, n_rows);
    traj.y.resize(p, n_rows);
    for (int k = 0; k < n_rows; ++k) {
        for (int j = 0; j < m; ++j) traj.u(j, k) = rows[k][j];
        for (int l = 0; l < p; ++l) traj.y(l, k) = rows[k][m + l];
    }
    return traj;
}

void write_system_json(const std::string& path, const LtiSystem& sys, int nu) {
    json j{{"A", matrix_to_json(sys.A)},
           {"B", matrix_to_json(sys.B)},
           {"C", matrix_to_json(sys.C)},
           {"nu", nu}};
    open_out(path) << j.dump(2) << "\n";
}

std::pair<LtiSystem, int> read_system_json(const std::string& path) {
    json j;
    open_in(path) >> j;
    LtiSystem sys = LtiSystem::create(matrix_from_json(j.at("A"), "A"),
                                      matrix_from_json(j.at("B"), "B"),
                                      matrix_from_json(j.at("C"), "C"));
    return {std::move(sys), j.value("nu", 0)};
}

void write_report_json(const std::string& path, const Report& report) {
    json components = json::array();
    for (const auto& row : report.rows) {
        json c{{"component", row.label}};
        auto put = [&c](const char* key, const std::optional<IndexValue>& v,
                        const std::vector<std::string>& set, double secs) {
            if (!v) return;
            c[key] = v->to_string();
            c[std::string(key) + "_witness"] = set;
            c[std::string(key) + "_seconds"] = secs;
        };
        put("delta", row.delta, row.delta_set, row.delta_seconds);
        put("rho", row.rho, row.rho_set, row.rho_seconds);
        put("rho_upper", row.rho_upper, row.rho_upper_set, row.rho_upper_seconds);
        components.push_back(std::move(c));
    }
    json j{{"meta", meta_to_json(report)}, {"components", std::move(components)}};
    open_out(path) << j.dump(2) << "\n";
}

void write_report_csv(const std::string& path, const Report& report) {
    auto out = open_out(path);
    out << "component,delta,rho,rho_upper,delta_seconds,rho_seconds,rho_upper_seconds,"
           "delta_witness,rho_witness,rho_upper_witness\n";
    auto val = [](const std::optional<IndexValue>& v) { return v ? v->to_string() : ""; };
    auto secs = [](const std::optional<IndexValue>& v, double s) {
        return v ? format_double(s) : std::string();
    };
    for (const auto& row : report.rows) {
        out << row.label << ',' << val(row.delta) << ',' << val(row.rho) << ','
            << val(row.rho_upper) << ',' << secs(row.delta, row.delta_seconds) << ','
            << secs(row.rho, row.rho_seconds) << ','
            << secs(row.rho_upper, row.rho_upper_seconds) << ','
            << join(row.delta_set, ";") << ',' << join(row.rho_set, ";") << ','
            << join(row.rho_upper_set, ";") << "\n";
    }
}

std::string format_report_table(const Report& report) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "component" << std::setw(8) << "delta"
        << std::setw(8) << "rho" << std::setw(10) << "rho_upper" << "witness\n";
    for (const auto& row : report.rows) {
        const auto& set = row.rho ? row.rho_set
                         : row.delta ? row.delta_set
                                     : row.rho_upper_set;
        out << std::left << std::setw(10) << row.label << std::setw(8)
            << (row.delta ? row.delta->to_string() : "-") << std::setw(8)
            << (row.rho ? row.rho->to_string() : "-") << std::setw(10)
            << (row.rho_upper ? row.rho_upper->to_string() : "-") << join(set, ";")
            << "\n";
    }
    return out.str();
}

}  // namespace secidx
