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

#include "polydyn/orbit.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polydyn/errors.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/state_space.hpp"

namespace polydyn {

namespace {

void write_vector(std::ostream& os, std::span<const u64> v) {
    os << '[';
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
    os << ']';
}

// Smallest d | period with proj(x_{n+d}) == proj(x_n) along the stored cycle.
u64 projection_period_of(const std::vector<u64>& cycle, std::size_t m, u64 period) {
    std::vector<u64> divisors;
    for (u64 d = 1; d * d <= period; ++d) {
        if (period % d == 0) {
            divisors.push_back(d);
            if (d != period / d) divisors.push_back(period / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    const std::size_t w = m + 1;
    for (u64 d : divisors) {
        bool ok = true;
        for (u64 n = 0; ok && n < period; ++n) {
            const u64 shifted = (n + d) % period;
            for (std::size_t j = 0; j < m; ++j) {
                if (cycle[n * w + j] != cycle[shifted * w + j]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return d;
    }
    return period;
}

}  // namespace

std::string SeedPeriod::to_ndjson() const {
    std::ostringstream os;
    os << "{\"seed\":";
    write_vector(os, seed);
    os << ",\"exact\":" << (exact ? "true" : "false");
    if (exact) {
        os << ",\"period\":" << period << ",\"preperiod\":" << preperiod;
    } else {
        os << ",\"rho_lower_bound\":" << rho_lower_bound;
    }
    os << ",\"steps\":" << steps;
    if (projection_period) os << ",\"projection_period\":" << *projection_period;
    os << "}\n";
    return os.str();
}

SeedPeriod period_of_seed(const TriangularSystem& sys, std::span<const u64> seed, u64 max_steps,
                          bool with_projection, bool expect_permutation) {
    if (seed.size() != sys.nvars()) {
        throw UsageError("seed has " + std::to_string(seed.size()) + " coordinates, expected " +
                         std::to_string(sys.nvars()));
    }
    for (u64 v : seed) {
        if (v >= sys.modulus()) throw UsageError("seed coordinate " + std::to_string(v) + " is not canonical");
    }
    const Stepper stepper(sys);
    const std::size_t w = sys.nvars();
    SeedPeriod out{std::vector<u64>(seed.begin(), seed.end()), false, 0, 0, 0, 0, std::nullopt};

    std::vector<u64> tortoise(seed.begin(), seed.end());
    std::vector<u64> hare(w), scratch(w);
    auto advance = [&](std::vector<u64>& x) {
        stepper.step(x, scratch);
        x.swap(scratch);
        ++out.steps;
    };

    // Phase 1: find the period. After a phase with power P ends without a
    // match, preperiod + period > P.
    hare = tortoise;
    advance(hare);
    u64 power = 1, lambda = 1;
    while (tortoise != hare) {
        if (power == lambda) {
            out.rho_lower_bound = power;
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        if (out.steps >= max_steps) return out;
        advance(hare);
        ++lambda;
    }

    // Phase 2: preperiod, with the hare lambda steps ahead of the tortoise.
    tortoise.assign(seed.begin(), seed.end());
    hare = tortoise;
    for (u64 t = 0; t < lambda; ++t) {
        if (out.steps >= max_steps) return out;
        advance(hare);
    }
    u64 mu = 0;
    while (tortoise != hare) {
        if (out.steps + 1 >= max_steps) return out;
        advance(tortoise);
        advance(hare);
        ++mu;
    }
    out.exact = true;
    out.period = lambda;
    out.preperiod = mu;
    out.rho_lower_bound = mu + lambda - 1;
    if (expect_permutation && mu != 0) {
        throw std::logic_error("permutation system produced a nonzero preperiod");
    }

    if (with_projection && lambda <= max_steps) {
        // tortoise sits at the cycle entry.
        std::vector<u64> cycle;
        cycle.reserve(lambda * w);
        for (u64 n = 0; n < lambda; ++n) {
            cycle.insert(cycle.end(), tortoise.begin(), tortoise.end());
            advance(tortoise);
        }
        out.projection_period = projection_period_of(cycle, sys.m(), lambda);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string CycleStructure::to_ndjson() const {
    std::ostringstream os;
    os << "{\"p\":" << p << ",\"m\":" << m << ",\"states\":" << states
       << ",\"bijective\":" << (bijective ? "true" : "false") << ",\"cycles\":[";
    bool first = true;
    for (const auto& [len, count] : cycles) {
        os << (first ? "" : ",") << "{\"length\":" << len << ",\"count\":" << count << '}';
        first = false;
    }
    os << "],\"cycle_states\":" << cycle_states << ",\"transient_states\":" << transient_states
       << ",\"max_preperiod\":" << max_preperiod << ",\"maximal_period\":" << (maximal_period ? "true" : "false")
       << "}\n";
    return os.str();
}

namespace {

using Index = std::uint32_t;

std::vector<Index> successor_table(const TriangularSystem& sys, u64 size) {
    const Stepper stepper(sys);
    const StateIndexer idx(sys.modulus(), sys.nvars(), size);
    std::vector<Index> next(size);
    std::vector<u64> x(sys.nvars(), 0), y(sys.nvars());
    for (u64 s = 0; s < size; ++s) {
        stepper.step(x, y);
        next[s] = static_cast<Index>(idx.encode(y));
        idx.next(x);
    }
    return next;
}

template <typename StartAt>
CycleStructure decompose(const TriangularSystem& sys, u64 size, StartAt&& start_at) {
    const std::vector<Index> next = successor_table(sys, size);

    CycleStructure cs{sys.modulus(), sys.m(), size, true, {}, 0, 0, 0, false};
    {
        std::vector<std::uint8_t> indegree(size, 0);
        for (Index t : next) {
            if (indegree[t] < 2) ++indegree[t];
        }
        cs.bijective = std::all_of(indegree.begin(), indegree.end(), [](std::uint8_t d) { return d == 1; });
    }

    // depth[s]: steps from s to its cycle, once known. Walks mark their states
    // with kOnPath and record the path, so meeting the current walk means a new
    // cycle and meeting an older walk means a tree attaching to a known depth.
    constexpr u64 kUnknown = std::numeric_limits<u64>::max();
    constexpr u64 kOnPath = kUnknown - 1;
    std::vector<u64> depth(size, kUnknown);
    std::vector<Index> path;
    for (u64 i = 0; i < size; ++i) {
        const u64 start = start_at(i);
        if (depth[start] != kUnknown) continue;
        path.clear();
        u64 s = start;
        while (depth[s] == kUnknown) {
            depth[s] = kOnPath;
            path.push_back(static_cast<Index>(s));
            s = next[s];
        }
        std::size_t tail_len = path.size();
        u64 base_depth = depth[s];
        if (depth[s] == kOnPath) {
            // s lies on this walk: everything from s onward is a new cycle.
            const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), s) - path.begin());
            const u64 len = path.size() - pos;
            ++cs.cycles[len];
            cs.cycle_states += len;
            for (std::size_t t = pos; t < path.size(); ++t) depth[path[t]] = 0;
            tail_len = pos;
            base_depth = 0;
        }
        for (std::size_t t = tail_len; t-- > 0;) {
            depth[path[t]] = base_depth + (tail_len - t);
            cs.max_preperiod = std::max(cs.max_preperiod, depth[path[t]]);
        }
    }
    cs.transient_states = size - cs.cycle_states;
    cs.maximal_period = cs.cycles.size() == 1 && cs.cycles.begin()->first == size;
    return cs;
}

u64 checked_state_count(const TriangularSystem& sys, u64 budget) {
    const auto size = checked_power(sys.modulus(), sys.nvars());
    if (!size || *size > budget) {
        throw BudgetExceeded("p^{m+1} states exceed the budget of " + std::to_string(budget));
    }
    if (*size >= std::numeric_limits<Index>::max()) {
        throw BudgetExceeded("state space too large for the cycle sweep");
    }
    return *size;
}

}  // namespace

CycleStructure full_cycle_structure(const TriangularSystem& sys, u64 budget) {
    const u64 size = checked_state_count(sys, budget);
    return decompose(sys, size, [](u64 i) { return i; });
}

CycleStructure full_cycle_structure(const TriangularSystem& sys, std::span<const u64> order, u64 budget) {
    const u64 size = checked_state_count(sys, budget);
    if (order.size() != size) throw UsageError("visit order must list every state exactly once");
    std::vector<bool> seen(size, false);
    for (u64 s : order) {
        if (s >= size || seen[s]) throw UsageError("visit order must list every state exactly once");
        seen[s] = true;
    }
    return decompose(sys, size, [&](u64 i) { return order[i]; });
}

}  // namespace polydyn
