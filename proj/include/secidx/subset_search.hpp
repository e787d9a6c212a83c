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
#ifndef SECIDX_SUBSET_SEARCH_HPP
#define SECIDX_SUBSET_SEARCH_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "secidx/numerics.hpp"

namespace secidx {

/// Lexicographic enumeration of all size-q subsets of {0..n_comp-1} that
/// contain i. Batches are evaluated in parallel; the reduction is
/// deterministic (the lexicographically first feasible subset wins), so
/// parallel and serial runs return identical witnesses.
inline std::optional<std::vector<int>> first_feasible_subset(
    int n_comp, int i, int q, int threads,
    const std::function<bool(const std::vector<int>&)>& feasible) {
    std::vector<int> others;
    for (int j = 0; j < n_comp; ++j)
        if (j != i) others.push_back(j);
    const int k = q - 1;
    if (k > static_cast<int>(others.size()) || k < 0) return std::nullopt;

    std::vector<std::vector<int>> batch;
    const int batch_size = std::max(1, threads) * 8;
    auto flush = [&]() -> std::optional<std::vector<int>> {
        std::vector<char> ok(batch.size(), 0);
        parallel_for(static_cast<int>(batch.size()), threads,
                     [&](int idx) { ok[idx] = feasible(batch[idx]) ? 1 : 0; });
        for (std::size_t idx = 0; idx < batch.size(); ++idx)
            if (ok[idx]) return batch[idx];
        batch.clear();
        return std::nullopt;
    };

    std::vector<int> pick(k);
    for (int t = 0; t < k; ++t) pick[t] = t;
    bool done = false;
    while (!done) {
        std::vector<int> gamma;
        gamma.reserve(q);
        for (int t = 0; t < k; ++t) gamma.push_back(others[pick[t]]);
        gamma.push_back(i);
        std::sort(gamma.begin(), gamma.end());
        batch.push_back(std::move(gamma));
        if (static_cast<int>(batch.size()) >= batch_size) {
            if (auto hit = flush()) return hit;
        }

        if (k == 0) break;
        int t = k - 1;
        while (t >= 0 && pick[t] == static_cast<int>(others.size()) - k + t) --t;
        if (t < 0) {
            done = true;
        } else {
            ++pick[t];
            for (int s = t + 1; s < k; ++s) pick[s] = pick[s - 1] + 1;
        }
    }
    if (!batch.empty()) {
        if (auto hit = flush()) return hit;
    }
    return std::nullopt;
}

}  // namespace secidx

#endif
