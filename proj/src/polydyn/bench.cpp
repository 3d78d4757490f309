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

#include "polydyn/bench.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "polydyn/errors.hpp"
#include "polydyn/format.hpp"

namespace polydyn {

const char* step_path_name(StepPath path) noexcept {
    return path == StepPath::product_form ? "product_form" : "generic";
}

bool is_chain_family(const TriangularSystem& sys) {
    for (std::size_t i = 0; i < sys.m(); ++i) {
        auto fac = square_minus_constant_factors(sys.g()[i]);
        if (!fac || fac->size() != 1 || (*fac)[0].first != i + 1) return false;
        if (sys.h()[i].total_degree() > 0) return false;
    }
    return true;
}

BenchReport run_bench(const TriangularSystem& sys, std::span<const u64> seed, u64 steps, bool allow_fast_path,
                      u64 counted_steps) {
    Generator gen(sys, seed, allow_fast_path);
    const std::size_t m = sys.m();
    BenchReport r{sys.modulus(), m, gen.path(), steps, 0, 0, 0, counted_steps, {}, is_chain_family(sys)};

    constexpr u64 kBlock = 4096;
    std::vector<u64> buf(kBlock * m);
    const auto t0 = std::chrono::steady_clock::now();
    for (u64 done = 0; done < steps;) {
        const u64 n = std::min(kBlock, steps - done);
        gen.emit_into(n, buf);
        for (u64 t = 0; t < n * m; ++t) r.checksum ^= buf[t];
        done += n;
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.steps_per_second = r.seconds > 0 ? static_cast<double>(steps) / r.seconds : 0.0;

    const Stepper stepper(sys, allow_fast_path);
    std::vector<u64> x(seed.begin(), seed.end()), y(x.size());
    std::vector<u64> muls(m + 1, 0);
    for (u64 t = 0; t < counted_steps; ++t) {
        stepper.step_counted(x, y, muls);
        x.swap(y);
    }
    r.muls_per_component.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        r.muls_per_component[i] =
            counted_steps ? static_cast<double>(muls[i]) / static_cast<double>(counted_steps) : 0.0;
    }
    if (r.chain_family && r.path == StepPath::product_form && counted_steps > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            if (muls[i] != 2 * counted_steps) {
                throw std::logic_error("chain family spent " + format_double(r.muls_per_component[i]) +
                                       " multiplications on component " + std::to_string(i) + ", expected 2");
            }
        }
    }
    return r;
}

std::string BenchReport::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << p << ",\"m\":" << m << ",\"path\":\"" << step_path_name(path) << "\",\"steps\":" << steps
       << ",\"seconds\":" << format_double(seconds) << ",\"steps_per_second\":" << format_double(steps_per_second)
       << ",\"checksum\":" << checksum << ",\"counted_steps\":" << counted_steps
       << ",\"chain_family\":" << (chain_family ? "true" : "false") << ",\"muls_per_component\":[";
    for (std::size_t i = 0; i < muls_per_component.size(); ++i) {
        os << (i ? "," : "") << format_double(muls_per_component[i]);
    }
    os << "]}\n";
    return os.str();
}

}  // namespace polydyn
