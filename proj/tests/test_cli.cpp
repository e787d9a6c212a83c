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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Integration tests that drive the installed binary end to end. The path is
// injected at compile time so the test suite works from any build directory.
#ifndef SECIDX_CLI_PATH
#error "SECIDX_CLI_PATH must be defined"
#endif

namespace {

const std::string kDir = "/tmp/secidx_cli_test";

int run(const std::string& args) {
    const std::string cmd = std::string(SECIDX_CLI_PATH) + " " + args +
                            " >" + kDir + "/stdout.txt 2>" + kDir + "/stderr.txt";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string last_stdout() { return slurp(kDir + "/stdout.txt"); }

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

struct Setup {
    Setup() {
        if (std::system(("mkdir -p " + kDir).c_str()) != 0)
            std::perror("mkdir");
    }
};
const Setup setup;

}  // namespace

TEST_CASE("generate: platoon data has the documented shape and is seed-deterministic") {
    const std::string data = kDir + "/p5.csv", sys = kDir + "/p5.json";
    REQUIRE(run("generate --platoon 5 --N 200 --L 10 --seed 7 --data-out " + data +
                " --system-out " + sys) == 0);
    const std::string csv = slurp(data);
    CHECK(count_lines(csv) == 201);  // header + 200 samples
    std::istringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "k,u1,u2,u3,u4,u5,y1,y2,y3,y4,y5,y6,y7,y8,y9,y10");

    // Same seed, byte-identical output.
    const std::string data2 = kDir + "/p5b.csv", sys2 = kDir + "/p5b.json";
    REQUIRE(run("generate --platoon 5 --N 200 --L 10 --seed 7 --data-out " + data2 +
                " --system-out " + sys2) == 0);
    CHECK(slurp(data) == slurp(data2));
    CHECK(slurp(sys) == slurp(sys2));
}

TEST_CASE("generate: single-vehicle layout") {
    const std::string data = kDir + "/p1.csv", sys = kDir + "/p1.json";
    REQUIRE(run("generate --platoon 1 --N 40 --L 2 --seed 3 --data-out " + data +
                " --system-out " + sys) == 0);
    const std::string csv = slurp(data);
    CHECK(count_lines(csv) == 41);
    std::istringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "k,u1,y1,y2");
}

TEST_CASE("pe-check exit codes") {
    const std::string data = kDir + "/pe.csv", sys = kDir + "/pe.json";
    REQUIRE(run("generate --random-n 2 --random-m 1 --random-p 2 --N 60 --L 2 --seed 5 "
                "--data-out " + data + " --system-out " + sys) == 0);
    CHECK(run("pe-check --data " + data + " --order 6") == 0);
    // An order the data cannot possibly support (m * order > d).
    CHECK(run("pe-check --data " + data + " --order 40") == 2);
}

TEST_CASE("rho on a scalar plant: report, PE gate, --force") {
    const std::string data = kDir + "/s.csv", sys = kDir + "/s.json";
    REQUIRE(run("generate --random-n 1 --random-m 1 --random-p 1 --N 40 --L 1 --seed 11 "
                "--data-out " + data + " --system-out " + sys) == 0);

    const std::string report = kDir + "/rho.json";
    REQUIRE(run("rho --data " + data + " --L 1 --n-hat 1 --threads 1 --output " + report) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(report));
    REQUIRE(j["components"].size() == 2);
    CHECK(j["components"][0]["component"] == "u1");
    CHECK(j["components"][0]["rho"] == "2");
    CHECK(j["components"][1]["rho"] == "2");
    CHECK(j["meta"]["N"] == 40);

    // A state-dimension bound the data cannot satisfy trips the PE gate.
    CHECK(run("rho --data " + data + " --L 1 --n-hat 50 --component u1") == 2);
    // --force overrides it.
    CHECK(run("rho --data " + data + " --L 1 --n-hat 50 --component u1 --force") == 0);
}

TEST_CASE("compare: all-sensors-protected plant yields a single inf row, exit 0") {
    const std::string data = kDir + "/prot.csv", sys = kDir + "/prot.json";
    REQUIRE(run("generate --random-n 1 --random-m 1 --random-p 1 --random-nu 1 --N 40 --L 1 "
                "--seed 13 --data-out " + data + " --system-out " + sys) == 0);
    const std::string report = kDir + "/cmp.json";
    REQUIRE(run("compare --data " + data + " --system " + sys + " --L 1 --threads 1 --output " +
                report) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(report));
    REQUIRE(j["components"].size() == 1);
    CHECK(j["components"][0]["component"] == "u1");
    CHECK(j["components"][0]["delta"] == "inf");
    CHECK(j["components"][0]["rho"] == "inf");
    CHECK(j["components"][0]["rho_upper"] == "inf");
}

TEST_CASE("compare: scalar unprotected plant agrees and exits 0") {
    const std::string data = kDir + "/s.csv", sys = kDir + "/s.json";
    const std::string report = kDir + "/cmp2.csv";
    REQUIRE(run("compare --data " + data + " --system " + sys +
                " --L 1 --threads 1 --format csv --output " + report) == 0);
    const std::string csv = slurp(report);
    CHECK(count_lines(csv) == 3);  // header + u1 + y1
    CHECK(csv.find("u1,2,2,2") != std::string::npos);
}

TEST_CASE("verify-attack: pass, and infeasible support is exit 3") {
    const std::string data = kDir + "/s.csv", sys = kDir + "/s.json";
    CHECK(run("verify-attack --data " + data + " --system " + sys +
              " --L 1 --gamma u1,y1 --component u1") == 0);
    CHECK(last_stdout().find("pass") != std::string::npos);
    CHECK(run("verify-attack --data " + data + " --system " + sys +
              " --L 1 --gamma y1 --component y1") == 3);
}

TEST_CASE("unknown flags and missing subcommand fail cleanly") {
    CHECK(run("--version") == 0);
    CHECK(run("") != 0);
    CHECK(run("rho --no-such-flag") != 0);
}
