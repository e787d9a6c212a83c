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
#ifndef SECIDX_MODEL_INDEX_HPP
#define SECIDX_MODEL_INDEX_HPP

#include <cstdint>
#include <vector>

#include "secidx/index_result.hpp"
#include "secidx/linsys.hpp"

namespace secidx {

/// Normal rank of the transfer matrix from the attack channels in gamma to
/// the output: maximum rank of G(z) over pseudo-random evaluation points off
/// the unit circle (eigenvalue collisions are re-drawn).
int normal_rank(const LtiSystem& sys, const ComponentLayout& layout,
                const std::vector<int>& gamma, std::uint64_t seed = 1);

/// True iff a perfectly undetectable attack supported in gamma with component
/// i active exists: normal_rank(gamma) == normal_rank(gamma \ {i}).
bool model_feasible(const LtiSystem& sys, const ComponentLayout& layout,
                    const std::vector<int>& gamma, int i);

/// Model-based security index delta(i): level-wise brute-force minimum over
/// all gamma containing i. max_card < 0 means the full search; a truncated
/// search reports "> max_card". The finite result carries a verified witness
/// attack.
IndexResult delta(const LtiSystem& sys, const ComponentLayout& layout, int i,
                  int max_card = -1, int threads = 1);

/// A finite-support perfectly undetectable attack in gamma with component i
/// active: a kernel vector of the block-Toeplitz response map with zero
/// initial and terminal state (equivalently, the coefficients of a polynomial
/// kernel vector of the transfer matrix), padded with zeros to the horizon.
AttackSignal synthesize_model_attack(const LtiSystem& sys, const ComponentLayout& layout,
                                     const std::vector<int>& gamma, int i, int horizon);

}  // namespace secidx

#endif
