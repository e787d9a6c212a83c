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
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "secidx/io.hpp"

using namespace secidx;

namespace {

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("/tmp/secidx_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("trajectory CSV round-trips bit-identically") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    Trajectory tr;
    tr.u = MatrixXd(2, 17);
    tr.y = MatrixXd(3, 17);
    for (int k = 0; k < 17; ++k) {
        for (int i = 0; i < 2; ++i) tr.u(i, k) = nd(rng) * std::pow(10.0, k % 7 - 3);
        for (int i = 0; i < 3; ++i) tr.y(i, k) = nd(rng);
    }
    tr.u(0, 3) = 0.1;  // classic non-representable decimal
    tr.u(1, 4) = -0.0;

    TempPath f("traj.csv");
    write_trajectory_csv(f.path, tr);
    Trajectory back = read_trajectory_csv(f.path);
    REQUIRE(back.u.rows() == 2);
    REQUIRE(back.y.rows() == 3);
    REQUIRE(back.length() == 17);
    // Bit-identical, not approximately equal.
    for (int k = 0; k < 17; ++k) {
        for (int i = 0; i < 2; ++i) CHECK(back.u(i, k) == tr.u(i, k));
        for (int i = 0; i < 3; ++i) CHECK(back.y(i, k) == tr.y(i, k));
    }

    // Header is the documented schema.
    std::istringstream first(slurp(f.path));
    std::string header;
    std::getline(first, header);
    CHECK(header == "k,u1,u2,y1,y2,y3");

    // Writing the parsed trajectory again reproduces the file byte for byte.
    TempPath g("traj2.csv");
    write_trajectory_csv(g.path, back);
    CHECK(slurp(f.path) == slurp(g.path));
}

TEST_CASE("system JSON round-trips") {
    LtiSystem sys = random_system(3, 2, 2, 123);
    TempPath f("sys.json");
    write_system_json(f.path, sys, 1);
    auto [back, nu] = read_system_json(f.path);
    CHECK(nu == 1);
    CHECK((back.A - sys.A).norm() == doctest::Approx(0.0));
    CHECK((back.B - sys.B).norm() == doctest::Approx(0.0));
    CHECK((back.C - sys.C).norm() == doctest::Approx(0.0));
    CHECK(back.n == 3);
    CHECK(back.m == 2);
    CHECK(back.p == 2);
}

TEST_CASE("report JSON schema: meta/components, inf and capped encodings") {
    Report rep;
    rep.N = 200;
    rep.L = 10;
    rep.d = 181;
    rep.pe_order = 30;
    rep.tol = 1.0;
    rep.seed = 7;
    rep.threads = 1;
    rep.version = "secidx test";

    ReportRow r1;
    r1.label = "u1";
    r1.delta = IndexValue::finite(3);
    r1.rho = IndexValue::finite(3);
    r1.rho_upper = IndexValue::capped(4);
    r1.rho_set = {"u1", "y2", "y3"};
    r1.rho_seconds = 1.25;
    rep.rows.push_back(r1);

    ReportRow r2;
    r2.label = "y1";
    r2.rho = IndexValue::inf();
    rep.rows.push_back(r2);

    TempPath f("report.json");
    write_report_json(f.path, rep);

    nlohmann::json j = nlohmann::json::parse(slurp(f.path));
    REQUIRE(j.contains("meta"));
    REQUIRE(j.contains("components"));
    CHECK(j["meta"]["N"] == 200);
    CHECK(j["meta"]["L"] == 10);
    CHECK(j["meta"]["seed"] == 7);
    REQUIRE(j["components"].size() == 2);
    CHECK(j["components"][0]["component"] == "u1");
    CHECK(j["components"][0]["rho"] == "3");
    CHECK(j["components"][0]["rho_upper"] == ">4");
    CHECK(j["components"][1]["rho"] == "inf");

    // CSV form: one row per component, header first.
    TempPath g("report.csv");
    write_report_csv(g.path, rep);
    std::istringstream lines(slurp(g.path));
    std::string line;
    int rows = 0;
    std::string header;
    while (std::getline(lines, line)) {
        if (rows == 0) header = line;
        ++rows;
    }
    CHECK(rows == 3);
    CHECK(header.find("component") != std::string::npos);
    CHECK(header.find("rho") != std::string::npos);

    // Human-readable table mentions every component label.
    std::string table = format_report_table(rep);
    CHECK(table.find("u1") != std::string::npos);
    CHECK(table.find("y1") != std::string::npos);
    CHECK(table.find("inf") != std::string::npos);
}

TEST_CASE("read_trajectory_csv rejects malformed input") {
    TempPath f("bad.csv");
    {
        std::ofstream out(f.path);
        out << "k,u1,y1\n0,1.0\n";  // missing a column
    }
    CHECK_THROWS(read_trajectory_csv(f.path));
    CHECK_THROWS(read_trajectory_csv("/nonexistent/definitely/missing.csv"));
}
