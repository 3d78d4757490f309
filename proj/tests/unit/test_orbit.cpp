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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "polydyn/errors.hpp"
#include "polydyn/orbit.hpp"
#include "test_support.hpp"

using namespace polydyn;
using namespace polydyn::testing;

namespace {

// Steps with a memory of every visited state.
std::pair<u64, u64> naive_period(const TriangularSystem& sys, std::vector<u64> x) {
    std::map<std::vector<u64>, u64> seen;
    u64 n = 0;
    while (!seen.count(x)) {
        seen[x] = n++;
        x = sys.apply(x);
    }
    return {n - seen[x], seen[x]};
}

TriangularSystem identity_system(u64 p, std::size_t m) {
    const PrimeField F(p);
    std::vector<SparsePoly> g(m, SparsePoly::constant(F, m + 1, 1)), h(m, SparsePoly(F, m + 1));
    return TriangularSystem(F, m, g, h, 1, 0);
}

}  // namespace

TEST_CASE("orbit: period examples") {
    // Only the last coordinate moves: x_m -> x_m + 1.
    const auto shift = identity_system(11, 1);
    const PrimeField F(11);
    const TriangularSystem linear(F, 1, {SparsePoly::constant(F, 2, 1)}, {SparsePoly(F, 2)}, 1, 1);
    const auto r = period_of_seed(linear, std::vector<u64>{4, 7});
    CHECK(r.exact);
    CHECK(r.period == 11);
    CHECK(r.preperiod == 0);

    const auto id = period_of_seed(shift, std::vector<u64>{3, 3}, kDefaultOrbitBudget, true);
    CHECK(id.period == 1);
    CHECK(id.projection_period == std::optional<u64>(1));

    const auto sys = chain_p5();
    const auto brent = period_of_seed(sys, std::vector<u64>{2, 1});
    const auto naive = naive_period(sys, {2, 1});
    CHECK(brent.period == naive.first);
    CHECK(brent.preperiod == naive.second);
    CHECK(brent.period == 5);
}

TEST_CASE("orbit: budget exhaustion reports a lower bound") {
    const auto sys = chain(1000003, 2);
    const auto r = period_of_seed(sys, std::vector<u64>{1, 2, 3}, 1000);
    CHECK_FALSE(r.exact);
    CHECK(r.rho_lower_bound >= 256);
    CHECK(r.steps <= 1000);
    CHECK(r.to_ndjson().find("\"rho_lower_bound\"") != std::string::npos);
}

TEST_CASE("orbit property: Brent agrees with naive stepping on small spaces") {
    Rng rng(64);
    for (int t = 0; t < 25; ++t) {
        const u64 p = std::vector<u64>{3, 5, 7, 11}[uniform(rng, 0, 3)];
        const std::size_t m = p <= 7 ? uniform(rng, 1, 3) : uniform(rng, 1, 2);
        const auto sys = uniform(rng, 0, 2) == 0 ? planted_zero(p, m) : random_valid_system(rng, p, m);
        for (int s = 0; s < 10; ++s) {
            std::vector<u64> seed(sys.nvars());
            for (auto& v : seed) v = uniform(rng, 0, p - 1);
            const auto r = period_of_seed(sys, seed, kDefaultOrbitBudget, true);
            const auto [period, pre] = naive_period(sys, seed);
            CHECK(r.exact);
            CHECK(r.period == period);
            CHECK(r.preperiod == pre);
            REQUIRE(r.projection_period);
            CHECK(period % *r.projection_period == 0);
        }
    }
}

TEST_CASE("orbit: cycle structure of permutation systems") {
    for (u64 p : {3, 5, 7}) {
        for (const auto& sys : {chain(p, 1), chain(p, 2), full_product(p, 2)}) {
            const auto cs = full_cycle_structure(sys);
            CHECK(cs.bijective);
            u64 total = 0;
            for (const auto& [len, count] : cs.cycles) total += len * count;
            CHECK(total == cs.states);
            CHECK(cs.transient_states == 0);
            CHECK(cs.max_preperiod == 0);
            CHECK(cs.maximal_period == (cs.cycles.size() == 1 && cs.cycles.begin()->first == cs.states));
            for (const auto& x : all_points(p, sys.nvars())) {
                CHECK(period_of_seed(sys, x, kDefaultOrbitBudget, false, true).preperiod == 0);
            }
        }
    }
    const auto cs = full_cycle_structure(chain_p5());
    CHECK(cs.states == 25);
    CHECK(cs.cycles == std::map<u64, u64>{{5, 1}, {20, 1}});
    CHECK_FALSE(cs.maximal_period);
}

TEST_CASE("orbit: maximal period flag") {
    // Over F_3, g_0 = X1^2 + 1 multiplies to 1 around the x_1 cycle, so some
    // constant h_0 makes the whole space a single cycle.
    const PrimeField F(3);
    bool found = false;
    for (u64 b0 = 0; b0 < 3; ++b0) {
        for (u64 b = 1; b < 3; ++b) {
            const TriangularSystem sys(F, 1, {SparsePoly::parse("X1^2 + 1", F, 2)},
                                       {SparsePoly::constant(F, 2, b0)}, 1, b);
            const auto cs = full_cycle_structure(sys);
            CHECK(cs.maximal_period == (cs.cycles == std::map<u64, u64>{{9, 1}}));
            found = found || cs.maximal_period;
        }
    }
    CHECK(found);
}

TEST_CASE("orbit: non-permutation systems show rho shapes") {
    for (u64 p : {5, 7}) {
        const auto sys = planted_zero(p, 1);
        const auto cs = full_cycle_structure(sys);
        CHECK_FALSE(cs.bijective);
        CHECK(cs.transient_states > 0);
        CHECK(cs.max_preperiod > 0);
        CHECK_FALSE(cs.maximal_period);
        CHECK(cs.cycle_states + cs.transient_states == cs.states);
        u64 on_cycles = 0;
        for (const auto& [len, count] : cs.cycles) on_cycles += len * count;
        CHECK(on_cycles == cs.cycle_states);
        // Cross-check against per-seed periods.
        u64 max_pre = 0;
        for (const auto& x : all_points(p, 2)) max_pre = std::max(max_pre, naive_period(sys, x).second);
        CHECK(max_pre == cs.max_preperiod);
    }
}

TEST_CASE("orbit property: structure invariant under visit order") {
    Rng rng(12);
    for (const auto& sys : {chain(5, 2), planted_zero(7, 1), full_product(3, 3)}) {
        const auto reference = full_cycle_structure(sys);
        std::vector<u64> order(reference.states);
        std::iota(order.begin(), order.end(), 0);
        for (int t = 0; t < 3; ++t) {
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(full_cycle_structure(sys, order) == reference);
        }
    }
    std::vector<u64> bad(25, 0);
    CHECK_THROWS_AS(full_cycle_structure(chain_p5(), bad), UsageError);
    CHECK_THROWS_AS(full_cycle_structure(chain(101, 3), 1000), BudgetExceeded);
}
