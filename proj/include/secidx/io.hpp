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
#ifndef SECIDX_IO_HPP
#define SECIDX_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "secidx/index_result.hpp"
#include "secidx/linsys.hpp"

namespace secidx {

/// Trajectory CSV: header `k,u1..um,y1..yp`, one row per step, k ascending
/// from 0. Values round-trip bit-identically (shortest exact decimal).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// System JSON: keys `A`, `B`, `C` (row-major nested arrays) and `nu`.
void write_system_json(const std::string& path, const LtiSystem& sys, int nu);
std::pair<LtiSystem, int> read_system_json(const std::string& path);

/// One per-component row of a report; absent indices were not requested.
struct ReportRow {
    std::string label;
    std::optional<IndexValue> delta, rho, rho_upper;
    std::vector<std::string> delta_set, rho_set, rho_upper_set;  // witness labels
    double delta_seconds = 0.0, rho_seconds = 0.0, rho_upper_seconds = 0.0;
};

struct Report {
    // meta
    int N = 0, L = 0, d = 0;
    int pe_order = 0;  // highest order verified on the input data
    double tol = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string version;

    std::vector<ReportRow> rows;
};

/// JSON report with top-level keys `meta` and `components`; +inf is the
/// literal string "inf", capped values ">K".
void write_report_json(const std::string& path, const Report& report);

/// Plot-ready CSV: one row per component with index and timing columns.
void write_report_csv(const std::string& path, const Report& report);

std::string format_report_table(const Report& report);

}  // namespace secidx

#endif
