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
#ifndef SECIDX_DATA_INDEX_HPP
#define SECIDX_DATA_INDEX_HPP

#include <utility>
#include <vector>

#include "secidx/hankel.hpp"
#include "secidx/index_result.hpp"
#include "secidx/subspace.hpp"

namespace secidx {

/// A component subset and its actuator/sensor split.
struct GammaSets {
    std::vector<int> gamma;   // components of I (0-based, sorted)
    std::vector<int> gu;      // actuators in gamma (input channel indices)
    std::vector<int> gu_bar;  // actuators not in gamma
    std::vector<int> gy;      // unprotected output channels in gamma
    std::vector<int> gy_bar;  // unprotected output channels not in gamma

    static GammaSets make(std::vector<int> gamma, const ComponentLayout& layout);
};

struct FixedPointTrace {
    std::vector<int> dims;  // dim of each iterate, starting at the 0th
    int steps_to_converge = 0;
};

/// Largest subspace of coefficient space compatible with the zero constraints
/// and extendable one step forward, as the limit of V_{t+1} = V_0 /\ Pre(V_t).
std::pair<Subspace, FixedPointTrace> v_infinity(const HankelBlocks& blocks,
                                                const GammaSets& gamma);

/// Subspace reachable from the zero-initial anchor while staying inside
/// V_infinity; the set union of the recursion is realized as subspace sum
/// (a linear map vanishes on the span iff it vanishes on both parts).
std::pair<Subspace, FixedPointTrace> r_infinity(const HankelBlocks& blocks,
                                                const GammaSets& gamma, const Subspace& vinf);

/// True iff R_infinity(gamma) is not contained in ker L^f_i.
bool data_feasible(const HankelBlocks& blocks, const GammaSets& gamma, int i);

/// Data-driven security index rho(i): level-wise subset search over the
/// fixed-point feasibility test. max_card < 0 means the full search.
IndexResult rho(const HankelBlocks& blocks, int i, int max_card = -1, int threads = 1);

/// Greedy upper bound: grow gamma from {i} by the candidate with the largest
/// gain in s(gamma) = dim(L^f_i R_infinity(gamma)); ties break to the
/// largest component index (sensors before actuators).
IndexResult rho_upper(const HankelBlocks& blocks, int i, int threads = 1);

/// A concrete coefficient chain certifying feasibility, with the trajectory
/// and attack it reconstructs.
struct WitnessSequence {
    MatrixXd g;        // d x (K+1): g(0), ..., g(K)
    GammaSets gamma;
    int component = 0;
    MatrixXd u;        // m x (K+1): reconstructed input, first future block
    MatrixXd y;        // p x (K+1): reconstructed output, first future block
    AttackSignal attack;  // col(u, -y) mapped onto attack channels
};

/// Synthesizes a witness chain of the given horizon (default: R-convergence
/// step + 2L) by a one-shot null-space solve of all chain constraints with
/// g(k) parametrized inside V_infinity.
WitnessSequence synthesize_data_witness(const HankelBlocks& blocks, const GammaSets& gamma,
                                        int i, int horizon = -1);

}  // namespace secidx

#endif
