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
#ifndef SECIDX_INDEX_RESULT_HPP
#define SECIDX_INDEX_RESULT_HPP

#include <optional>
#include <string>
#include <vector>

#include "secidx/linsys.hpp"

namespace secidx {

/// A security-index value: a cardinality, +inf (infeasible), or "> cap"
/// when a search cap truncated the level-wise enumeration.
struct IndexValue {
    enum class Kind { finite, infinite, capped };
    Kind kind = Kind::infinite;
    int value = 0;  // the cardinality (finite) or the cap (capped)

    static IndexValue finite(int v) { return {Kind::finite, v}; }
    static IndexValue inf() { return {Kind::infinite, 0}; }
    static IndexValue capped(int cap) { return {Kind::capped, cap}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_inf() const { return kind == Kind::infinite; }
    bool is_capped() const { return kind == Kind::capped; }

    /// "3", "inf", or ">4".
    std::string to_string() const {
        switch (kind) {
            case Kind::finite: return std::to_string(value);
            case Kind::infinite: return "inf";
            default: return ">" + std::to_string(value);
        }
    }

    friend bool operator==(const IndexValue& a, const IndexValue& b) {
        return a.kind == b.kind && (a.kind == Kind::infinite || a.value == b.value);
    }
};

struct IndexResult {
    int component = 0;
    IndexValue value;
    std::vector<int> witness_set;  // minimizing Gamma (empty unless finite)
    std::optional<AttackSignal> witness_attack;
    double elapsed_seconds = 0.0;
};

}  // namespace secidx

#endif
