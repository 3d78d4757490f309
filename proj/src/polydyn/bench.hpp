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

#ifndef POLYDYN_BENCH_HPP
#define POLYDYN_BENCH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

struct BenchReport {
    u64 p;
    std::size_t m;
    StepPath path;
    u64 steps;
    double seconds;
    double steps_per_second;
    u64 checksum;  // xor of every emitted coordinate, keeps the loop honest
    // Field multiplications per step for each component 0..m, from an
    // instrumented run of `counted_steps` steps.
    u64 counted_steps;
    std::vector<double> muls_per_component;
    // Whether the system matches the chain shape g_i = X_{i+1}^2 - c_i.
    bool chain_family;

    // Single JSON object on one line.
    std::string to_json() const;
};

// Times `steps` steps of the generator from `seed` emitting m-vectors into a
// buffer, then counts multiplications over a short instrumented run. For the
// chain family a count other than 2 per emitted component throws
// std::logic_error.
BenchReport run_bench(const TriangularSystem& sys, std::span<const u64> seed, u64 steps, bool allow_fast_path = true,
                      u64 counted_steps = 1000);

bool is_chain_family(const TriangularSystem& sys);

const char* step_path_name(StepPath path) noexcept;

}  // namespace polydyn

#endif  // POLYDYN_BENCH_HPP
