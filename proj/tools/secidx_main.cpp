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
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "secidx/data_index.hpp"
#include "secidx/hankel.hpp"
#include "secidx/io.hpp"
#include "secidx/model_index.hpp"
#include "secidx/numerics.hpp"

namespace {

constexpr const char* kVersion = "secidx 1.0.0";

using namespace secidx;

int parse_component(const std::string& text, const ComponentLayout& layout) {
    const int n_comp = layout.component_count();
    if (!text.empty() && (text[0] == 'u' || text[0] == 'y')) {
        const int num = std::stoi(text.substr(1));
        const int j = text[0] == 'u' ? num - 1 : layout.m + num - 1;
        if (num < 1 || j >= n_comp || (text[0] == 'u' && num > layout.m))
            throw CLI::ValidationError("component", text + " is outside I");
        return j;
    }
    const int j = std::stoi(text) - 1;  // plain numbers are 1-based component indices
    if (j < 0 || j >= n_comp) throw CLI::ValidationError("component", text + " is outside I");
    return j;
}

std::vector<int> parse_gamma(const std::string& text, const ComponentLayout& layout) {
    std::vector<int> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(parse_component(item, layout));
    return out;
}

std::vector<std::string> labels_of(const std::vector<int>& set, const ComponentLayout& layout) {
    std::vector<std::string> out;
    for (int j : set) out.push_back(layout.label(j));
    return out;
}

struct CommonArgs {
    std::string data_path, system_path, output_path;
    std::string format = "json";
    std::string component;
    int L = 1;
    int nu = 0;
    int n_hat = -1;
    int max_card = -1;
    int threads = 0;  // 0 = hardware concurrency
    double tol_scale = 1.0;
    std::uint64_t seed = 1;
    bool force = false;

    int resolved_threads() const {
        if (threads > 0) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }
};

void add_compute_flags(CLI::App* cmd, CommonArgs& a, bool with_model, bool with_data) {
    if (with_data) {
        cmd->add_option("--data", a.data_path, "trajectory CSV")->required();
        cmd->add_option("--L", a.L, "window length")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--nu", a.nu, "protected sensor count (last nu outputs)");
        cmd->add_option("--n-hat", a.n_hat, "upper bound on the state dimension");
        cmd->add_flag("--force", a.force, "proceed even if the excitation check fails");
    }
    if (with_model)
        cmd->add_option("--system", a.system_path, "system JSON")->required(!with_data);
    cmd->add_option("--max-card", a.max_card, "cardinality cap for the subset search");
    cmd->add_option("--threads", a.threads, "worker threads (1 = deterministic serial)");
    cmd->add_option("--tol-scale", a.tol_scale, "multiplier on the global rank tolerance");
    cmd->add_option("--output", a.output_path, "report path");
    cmd->add_option("--format", a.format, "report format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

/// Exit code 2 unless the data is persistently exciting of order n_hat + 2L
/// (skipped with a warning when no state-dimension bound is available).
bool excitation_ok(const Trajectory& traj, const CommonArgs& a, int n_known, int* achieved) {
    const int n_hat = a.n_hat >= 0 ? a.n_hat : n_known;
    if (n_hat < 0) {
        std::cerr << "warning: no state-dimension bound given (--n-hat); "
                     "the excitation order required by the equivalence guarantee "
                     "cannot be verified\n";
        if (achieved) *achieved = 0;
        return true;
    }
    const int order = n_hat + 2 * a.L;
    const PeResult pe = is_persistently_exciting(traj.u, order);
    if (achieved) *achieved = pe.exciting ? order : pe.rank;
    if (!pe.exciting)
        std::cerr << "input is not persistently exciting of order " << order << " (rank "
                  << pe.rank << " of " << pe.needed_rank << " needed)\n";
    return pe.exciting;
}

Report make_report(const CommonArgs& a, int N, int d, int pe_order) {
    Report rep;
    rep.N = N;
    rep.L = a.L;
    rep.d = d;
    rep.pe_order = pe_order;
    rep.tol = global_rank_scale();
    rep.seed = a.seed;
    rep.threads = a.resolved_threads();
    rep.version = kVersion;
    return rep;
}

void emit_report(const CommonArgs& a, const Report& rep) {
    std::cout << format_report_table(rep);
    if (a.output_path.empty()) return;
    if (a.format == "csv")
        write_report_csv(a.output_path, rep);
    else
        write_report_json(a.output_path, rep);
    std::cout << "report written to " << a.output_path << "\n";
}

int cmd_generate(const CommonArgs& a, int platoon, int rand_n, int rand_m, int rand_p,
                 int rand_nu, int N, const std::string& data_out,
                 const std::string& system_out) {
    LtiSystem sys;
    ComponentLayout layout(0, 0, 0);
    Trajectory traj;
    int nu = 0;
    if (platoon > 0) {
        PlatoonConfig cfg;
        cfg.n_vehicles = platoon;
        cfg.N = N;
        cfg.seed = a.seed;
        auto [psys, playout] = build_platoon(cfg);
        traj = generate_excitation(psys, cfg, psys.n + 2 * a.L);
        sys = std::move(psys);
        layout = playout;
    } else {
        sys = random_system(rand_n, rand_m, rand_p, a.seed);
        nu = rand_nu;
        layout = ComponentLayout(sys.m, sys.p, nu);
        traj = generate_random_excitation(sys, N, a.seed, sys.n + 2 * a.L);
    }
    write_trajectory_csv(data_out, traj);
    write_system_json(system_out, sys, nu);
    const PeResult pe = is_persistently_exciting(traj.u, sys.n + 2 * a.L);
    std::cout << "wrote " << data_out << " (" << traj.length() << " samples) and "
              << system_out << "; input persistently exciting of order " << sys.n + 2 * a.L
              << ": " << (pe.exciting ? "yes" : "NO") << "\n";
    return 0;
}

int cmd_pe_check(const std::string& data_path, int order) {
    const Trajectory traj = read_trajectory_csv(data_path);
    const PeResult pe = is_persistently_exciting(traj.u, order);
    std::cout << "order " << order << ": rank " << pe.rank << " of " << pe.needed_rank
              << " -> " << (pe.exciting ? "persistently exciting" : "NOT exciting") << "\n";
    return pe.exciting ? 0 : 2;
}

int cmd_delta(const CommonArgs& a) {
    auto [sys, nu] = read_system_json(a.system_path);
    const ComponentLayout layout(sys.m, sys.p, nu);
    Report rep = make_report(a, 0, 0, 0);
    std::vector<int> targets;
    if (a.component.empty())
        for (int j = 0; j < layout.component_count(); ++j) targets.push_back(j);
    else
        targets.push_back(parse_component(a.component, layout));
    for (int j : targets) {
        const IndexResult r = delta(sys, layout, j, a.max_card, a.resolved_threads());
        ReportRow row;
        row.label = layout.label(j);
        row.delta = r.value;
        row.delta_set = labels_of(r.witness_set, layout);
        row.delta_seconds = r.elapsed_seconds;
        rep.rows.push_back(std::move(row));
    }
    emit_report(a, rep);
    return 0;
}

int cmd_rho(const CommonArgs& a, bool upper_bound) {
    const Trajectory traj = read_trajectory_csv(a.data_path);
    const ComponentLayout layout(static_cast<int>(traj.u.rows()),
                                 static_cast<int>(traj.y.rows()), a.nu);
    int achieved = 0;
    if (!excitation_ok(traj, a, -1, &achieved) && !a.force) return 2;
    const HankelBlocks blocks = build_blocks(traj, a.L, layout);
    Report rep = make_report(a, traj.length(), blocks.d, achieved);
    std::vector<int> targets;
    if (a.component.empty())
        for (int j = 0; j < layout.component_count(); ++j) targets.push_back(j);
    else
        targets.push_back(parse_component(a.component, layout));
    for (int j : targets) {
        ReportRow row;
        row.label = layout.label(j);
        if (upper_bound) {
            const IndexResult r = rho_upper(blocks, j, a.resolved_threads());
            row.rho_upper = r.value;
            row.rho_upper_set = labels_of(r.witness_set, layout);
            row.rho_upper_seconds = r.elapsed_seconds;
        } else {
            const IndexResult r = rho(blocks, j, a.max_card, a.resolved_threads());
            row.rho = r.value;
            row.rho_set = labels_of(r.witness_set, layout);
            row.rho_seconds = r.elapsed_seconds;
        }
        rep.rows.push_back(std::move(row));
    }
    emit_report(a, rep);
    return 0;
}

int cmd_compare(const CommonArgs& a) {
    const Trajectory traj = read_trajectory_csv(a.data_path);
    std::optional<LtiSystem> sys;
    int nu = a.nu;
    if (!a.system_path.empty()) {
        auto loaded = read_system_json(a.system_path);
        sys = std::move(loaded.first);
        nu = loaded.second;
    }
    const ComponentLayout layout(static_cast<int>(traj.u.rows()),
                                 static_cast<int>(traj.y.rows()), nu);
    int achieved = 0;
    if (!excitation_ok(traj, a, sys ? sys->n : -1, &achieved) && !a.force) return 2;
    const HankelBlocks blocks = build_blocks(traj, a.L, layout);
    Report rep = make_report(a, traj.length(), blocks.d, achieved);

    bool bound_sound = true;
    bool delta_matches = true;
    for (int j = 0; j < layout.component_count(); ++j) {
        ReportRow row;
        row.label = layout.label(j);
        const IndexResult rr = rho(blocks, j, a.max_card, a.resolved_threads());
        row.rho = rr.value;
        row.rho_set = labels_of(rr.witness_set, layout);
        row.rho_seconds = rr.elapsed_seconds;
        const IndexResult ru = rho_upper(blocks, j, a.resolved_threads());
        row.rho_upper = ru.value;
        row.rho_upper_set = labels_of(ru.witness_set, layout);
        row.rho_upper_seconds = ru.elapsed_seconds;
        if (rr.value.is_finite() &&
            (!ru.value.is_finite() || ru.value.value < rr.value.value))
            bound_sound = false;
        if (rr.value.is_inf() && ru.value.is_finite()) bound_sound = false;
        if (sys) {
            const IndexResult rd = delta(*sys, layout, j, a.max_card, a.resolved_threads());
            row.delta = rd.value;
            row.delta_set = labels_of(rd.witness_set, layout);
            row.delta_seconds = rd.elapsed_seconds;
            if (!(rd.value == rr.value)) delta_matches = false;
        }
        rep.rows.push_back(std::move(row));
    }
    emit_report(a, rep);
    if (!bound_sound) std::cerr << "rho exceeded rho_upper on some component\n";
    if (!delta_matches) std::cerr << "delta and rho disagree on some component\n";
    return (bound_sound && delta_matches) ? 0 : 1;
}

int cmd_verify_attack(const CommonArgs& a, const std::string& gamma_text) {
    const Trajectory traj = read_trajectory_csv(a.data_path);
    auto [sys, nu] = read_system_json(a.system_path);
    const ComponentLayout layout(sys.m, sys.p, nu);
    if (!excitation_ok(traj, a, sys.n, nullptr) && !a.force) return 2;
    const HankelBlocks blocks = build_blocks(traj, a.L, layout);
    const GammaSets gs = GammaSets::make(parse_gamma(gamma_text, layout), layout);
    const int i = parse_component(a.component, layout);

    WitnessSequence w;
    try {
        w = synthesize_data_witness(blocks, gs, i);
    } catch (const std::invalid_argument& e) {
        std::cout << "infeasible: " << e.what() << "\n";
        return 3;
    }
    const int K = w.attack.length();
    const MatrixXd y = simulate_attacked(sys, layout, VectorXd::Zero(sys.n),
                                         MatrixXd::Zero(sys.m, K), w.attack);
    const double a_max = w.attack.a.cwiseAbs().maxCoeff();
    const double residual = y.cwiseAbs().maxCoeff();
    const bool pass = residual <= 1e-6 * a_max;
    std::cout << "max output residual " << residual << " (attack magnitude " << a_max
              << ") over " << K << " steps -> " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"security index computation from input/output data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonArgs a;
    int platoon = 0, rand_n = 3, rand_m = 1, rand_p = 2, rand_nu = 0, N = 200;
    std::string data_out = "data.csv", system_out = "system.json";
    int pe_order = 1;
    std::string gamma_text;

    auto* gen = app.add_subcommand("generate", "simulate a benchmark system and write data");
    gen->add_option("--platoon", platoon, "vehicle count for the platoon benchmark");
    gen->add_option("--random-n", rand_n, "state dim of a random system");
    gen->add_option("--random-m", rand_m, "input dim of a random system");
    gen->add_option("--random-p", rand_p, "output dim of a random system");
    gen->add_option("--random-nu", rand_nu, "protected sensors of a random system");
    gen->add_option("--N", N, "data length");
    gen->add_option("--L", a.L, "window length the data should support");
    gen->add_option("--seed", a.seed, "pseudo-random seed");
    gen->add_option("--data-out", data_out, "trajectory CSV path");
    gen->add_option("--system-out", system_out, "system JSON path");

    auto* pe = app.add_subcommand("pe-check", "check persistency of excitation");
    pe->add_option("--data", a.data_path, "trajectory CSV")->required();
    pe->add_option("--order", pe_order, "excitation order to verify")->required();

    auto* del = app.add_subcommand("delta", "model-based security index");
    add_compute_flags(del, a, true, false);
    del->add_option("--component", a.component, "target component (default: all)");

    auto* rho_cmd = app.add_subcommand("rho", "data-driven security index");
    add_compute_flags(rho_cmd, a, false, true);
    rho_cmd->add_option("--component", a.component, "target component (default: all)");

    auto* bound = app.add_subcommand("rho-bound", "greedy upper bound on rho");
    add_compute_flags(bound, a, false, true);
    bound->add_option("--component", a.component, "target component (default: all)");

    auto* cmp = app.add_subcommand("compare", "full per-component index table");
    add_compute_flags(cmp, a, false, true);
    cmp->add_option("--system", a.system_path, "system JSON (enables delta)");

    auto* ver = app.add_subcommand("verify-attack", "synthesize and replay a data witness");
    add_compute_flags(ver, a, false, true);
    ver->add_option("--system", a.system_path, "system JSON of the true plant")->required();
    ver->add_option("--gamma", gamma_text, "attack support, e.g. u5,y9,y10")->required();
    ver->add_option("--component", a.component, "active component")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        set_global_rank_scale(a.tol_scale);
        if (gen->parsed())
            return cmd_generate(a, platoon, rand_n, rand_m, rand_p, rand_nu, N, data_out,
                                system_out);
        if (pe->parsed()) return cmd_pe_check(a.data_path, pe_order);
        if (del->parsed()) return cmd_delta(a);
        if (rho_cmd->parsed()) return cmd_rho(a, false);
        if (bound->parsed()) return cmd_rho(a, true);
        if (cmp->parsed()) return cmd_compare(a);
        if (ver->parsed()) return cmd_verify_attack(a, gamma_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
