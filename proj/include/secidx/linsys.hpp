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
#ifndef SECIDX_LINSYS_HPP
#define SECIDX_LINSYS_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace secidx {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Discrete-time LTI plant x(k+1) = A x(k) + B u(k), y(k) = C x(k).
struct LtiSystem {
    MatrixXd A;  // n x n
    MatrixXd B;  // n x m
    MatrixXd C;  // p x n
    int n = 0, m = 0, p = 0;
    bool controllable = false;
    bool observable = false;

    /// Validates dimensions and full column rank of B (error), and checks
    /// controllability/observability (recorded, not enforced: user-supplied
    /// data systems may be unverifiable).
    static LtiSystem create(MatrixXd A, MatrixXd B, MatrixXd C);
};

/// Maps component indices onto actuator/sensor roles. Components are 0-based
/// in code: j in [0, m) is actuator j+1, j in [m, m+p-nu) is unprotected
/// sensor j-m+1. The last nu outputs are protected.
struct ComponentLayout {
    int m = 0;   // actuator count
    int p = 0;   // sensor count
    int nu = 0;  // protected sensors (last nu outputs)

    ComponentLayout() = default;
    ComponentLayout(int m_, int p_, int nu_);

    int unprotected() const { return p - nu; }
    int component_count() const { return m + p - nu; }
    bool is_actuator(int j) const { return j < m; }
    /// 0-based output index of unprotected-sensor component j (j >= m).
    int sensor_of(int j) const { return j - m; }
    /// Column of the full (m+p)-wide attack vector driven by component j.
    /// Actuator j -> column j; sensor component -> column m + nu + (j - m).
    int attack_column(int j) const;
    /// Display label: "u3" or "y2".
    std::string label(int j) const;
};

/// B_a = [B 0], D_a with I_{p-nu} in its top-right block. Columns for
/// protected-sensor channels are identically zero.
struct AttackStructure {
    MatrixXd Ba;  // n x (m+p)
    MatrixXd Da;  // p x (m+p)
};
AttackStructure build_attack_structure(const LtiSystem& sys, const ComponentLayout& layout);

/// Input/output record; columns are time steps.
struct Trajectory {
    MatrixXd u;  // m x N
    MatrixXd y;  // p x N
    int length() const { return static_cast<int>(u.cols()); }
};

/// Attack signal in the full m+p layout of the attack vector; protected
/// channels must stay zero.
struct AttackSignal {
    MatrixXd a;  // (m+p) x K
    int length() const { return static_cast<int>(a.cols()); }
    /// Active components (0-based indices into I), by relative threshold.
    std::vector<int> support(const ComponentLayout& layout, double rel_tol = 1e-7) const;
};

struct PlatoonConfig {
    int n_vehicles = 5;
    double Ts = 0.1;
    double Kp = 1.0;
    double noise_var = 1.0;
    double spacing = 10.0;   // reference inter-vehicle distance
    double speed = 1.0;      // reference velocity
    std::uint64_t seed = 0;
    int N = 200;             // data length
};

/// y = C x under the stated recursion; optionally exposes the state sequence.
Trajectory simulate(const LtiSystem& sys, const VectorXd& x0, const MatrixXd& u,
                    MatrixXd* states = nullptr);

/// Output of the compromised system over a.cols() steps; u shorter than the
/// attack is zero-padded.
MatrixXd simulate_attacked(const LtiSystem& sys, const ComponentLayout& layout,
                           const VectorXd& x0, const MatrixXd& u, const AttackSignal& a);

/// Chain of double integrators with the platoon measurement layout:
/// y_{2l-1} = position of vehicle l, y_2 = velocity of vehicle 1,
/// y_{2l} (l >= 2) = relative position between vehicles l-1 and l.
std::pair<LtiSystem, ComponentLayout> build_platoon(const PlatoonConfig& cfg);

/// Closed-loop excitation u_l = Kp * (x_l* - x_l) + w around a constant
/// spacing / constant velocity reference. Regenerates with a fresh seed until
/// the input is persistently exciting of pe_order (bounded retries).
Trajectory generate_excitation(const LtiSystem& sys, const PlatoonConfig& cfg, int pe_order);

/// Seeded random controllable/observable stable system (for test suites).
LtiSystem random_system(int n, int m, int p, std::uint64_t seed);

/// Open-loop data from i.i.d. standard-normal inputs, PE-checked as above.
Trajectory generate_random_excitation(const LtiSystem& sys, int N, std::uint64_t seed,
                                      int pe_order);

}  // namespace secidx

#endif
