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

#ifndef POLYDYN_GENERATOR_HPP
#define POLYDYN_GENERATOR_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/poly.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

enum class StepPath {
    generic,       // evaluate every f_i as a sparse polynomial
    product_form,  // g_i = prod (X_j^2 - c_ij), h_i constant
};

// One application of the system map, u_{n+1} = F(u_n), with all coordinates
// computed from the previous vector.
//
// The product-form path squares each coordinate once per step, then forms
// each component as x_i * prod(sq_j - c_ij) + b_i. For the chain family
// (g_i = X_{i+1}^2 - a_i) that is one squaring and one product per
// component. The multiplication for x_j^2 is charged to component j - 1.
class Stepper {
public:
    explicit Stepper(const TriangularSystem& sys, bool allow_fast_path = true);

    StepPath path() const noexcept { return path_; }
    std::size_t dims() const noexcept { return m_ + 1; }
    const PrimeField& field() const noexcept { return field_; }

    void step(std::span<const u64> in, std::span<u64> out) const;

    // Same as step, additionally adding the number of field multiplications
    // spent on each component into `muls` (size m + 1).
    void step_counted(std::span<const u64> in, std::span<u64> out, std::span<u64> muls) const;

private:
    template <bool Count>
    void step_product(std::span<const u64> in, std::span<u64> out, u64* muls) const;

    PrimeField field_;
    std::size_t m_;
    StepPath path_ = StepPath::generic;
    std::vector<SparsePoly> f_;
    std::vector<std::vector<std::pair<std::size_t, u64>>> factors_;
    std::vector<u64> h_const_;
    std::vector<bool> squared_;  // squared_[j]: some factor needs x_j^2
    u64 a_, b_;
};

// One emitted vector (u_{n,0}/p, ..., u_{n,m-1}/p). Coordinate m is never
// part of the output.
struct OutputPoint {
    std::vector<u64> numerators;
    u64 denominator;

    double coordinate(std::size_t j) const {
        return static_cast<double>(numerators[j]) / static_cast<double>(denominator);
    }
};

enum class OutputFormat { csv, ndjson, u64le };

// A streaming orbit u_0 = seed, u_{n+1} = F(u_n). Single owner; copyable.
class Generator {
public:
    Generator(const TriangularSystem& sys, std::span<const u64> seed, bool allow_fast_path = true);

    const std::vector<u64>& state() const noexcept { return u_; }
    u64 steps() const noexcept { return n_; }
    std::size_t m() const noexcept { return stepper_.dims() - 1; }
    u64 modulus() const noexcept { return stepper_.field().modulus(); }
    StepPath path() const noexcept { return stepper_.path(); }

    void step();
    // k sequential steps.
    void jump(u64 k);

    // The next `count` points, starting with the current state, advancing by
    // `count` steps.
    std::vector<OutputPoint> emit(std::size_t count);
    // Same, writing count * m numerators row by row.
    void emit_into(std::size_t count, std::span<u64> numerators);

    // Writes `count` records of u_{n,0..m-1}:
    //   csv     each value followed by ',' and the record by '\n'
    //   ndjson  {"n":<step>,"u":[...]} per line
    //   u64le   8 little-endian bytes per value, no separators
    // `sink` receives the output in chunks.
    void write(std::size_t count, OutputFormat format, const std::function<void(std::string_view)>& sink);
    void write(std::size_t count, OutputFormat format, std::ostream& os);

private:
    Stepper stepper_;
    std::vector<u64> u_;
    std::vector<u64> scratch_;
    u64 n_ = 0;
};

OutputFormat parse_output_format(std::string_view name);

}  // namespace polydyn

#endif  // POLYDYN_GENERATOR_HPP
