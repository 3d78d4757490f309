// Copyright 2026 The polydyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYDYN_ORBIT_HPP
#define POLYDYN_ORBIT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

inline constexpr u64 kDefaultOrbitBudget = 10'000'000;

struct SeedPeriod {
    std::vector<u64> seed;
    // Exact when `exact`; otherwise preperiod + period is only known to
    // exceed `rho_lower_bound` and both fields are zero.
    bool exact;
    u64 period;
    u64 preperiod;
    u64 rho_lower_bound;
    u64 steps;  // map evaluations spent
    // Period of the emitted projection (u_{n,0}, ..., u_{n,m-1}) along the
    // cycle; always divides `period`.
    std::optional<u64> projection_period;

    std::string to_ndjson() const;
};

// Brent's cycle detection on the orbit of `seed`, spending at most
// `max_steps` map evaluations. When `expect_permutation` is set a nonzero
// preperiod throws std::logic_error. The projection period needs the cycle in
// memory and is only computed for periods up to `max_steps`.
SeedPeriod period_of_seed(const TriangularSystem& sys, std::span<const u64> seed, u64 max_steps = kDefaultOrbitBudget,
                          bool with_projection = false, bool expect_permutation = false);

struct CycleStructure {
    u64 p;
    std::size_t m;
    u64 states;
    bool bijective;                // every state has exactly one preimage
    std::map<u64, u64> cycles;     // length -> count
    u64 cycle_states;
    u64 transient_states;          // states off every cycle (0 when bijective)
    u64 max_preperiod;
    bool maximal_period;           // a single cycle through all p^{m+1} states

    std::string to_ndjson() const;
    friend bool operator==(const CycleStructure&, const CycleStructure&) = default;
};

// Exact functional-graph decomposition of the map on F_p^{m+1}. Throws
// BudgetExceeded when p^{m+1} exceeds `budget`.
CycleStructure full_cycle_structure(const TriangularSystem& sys, u64 budget = kDefaultOrbitBudget);

// Same, starting the sweeps from the state indices in `order` (a permutation
// of 0..p^{m+1}-1) rather than in increasing index order.
CycleStructure full_cycle_structure(const TriangularSystem& sys, std::span<const u64> order,
                                    u64 budget = kDefaultOrbitBudget);

}  // namespace polydyn

#endif  // POLYDYN_ORBIT_HPP
