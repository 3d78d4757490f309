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

#ifndef POLYDYN_POLY_HPP
#define POLYDYN_POLY_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "polydyn/field.hpp"

namespace polydyn {

// Degree reported for the zero polynomial.
inline constexpr std::int64_t kDegreeOfZero = std::numeric_limits<std::int64_t>::min();

// Exponent vector X_0^e0 ... X_{n-1}^e{n-1}.
class Monomial {
public:
    static constexpr unsigned kMaxExponent = 0xFFFF;

    explicit Monomial(std::size_t nvars = 0) : e_(nvars, 0) {}
    Monomial(std::initializer_list<unsigned> exponents);
    explicit Monomial(std::span<const unsigned> exponents);

    static Monomial variable(std::size_t nvars, std::size_t j, unsigned exponent = 1);

    std::size_t nvars() const noexcept { return e_.size(); }
    unsigned operator[](std::size_t j) const noexcept { return e_[j]; }
    void set(std::size_t j, unsigned exponent);

    std::int64_t total_degree() const noexcept;
    bool is_one() const noexcept;

    // Throws UsageError when an exponent would exceed kMaxExponent.
    Monomial operator*(const Monomial& other) const;

    // Graded lexicographic order; X_0 is the most significant variable.
    friend std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) noexcept;
    friend bool operator==(const Monomial& x, const Monomial& y) noexcept { return x.e_ == y.e_; }

private:
    boost::container::small_vector<std::uint16_t, 4> e_;
};

// Multivariate polynomial over F_p in canonical sparse form: no zero
// coefficients, terms kept in descending graded-lex order.
class SparsePoly {
public:
    using TermMap = std::map<Monomial, u64, std::greater<>>;

    SparsePoly(const PrimeField& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

    static SparsePoly constant(const PrimeField& field, std::size_t nvars, u64 c);
    static SparsePoly variable(const PrimeField& field, std::size_t nvars, std::size_t j);
    static SparsePoly term(const PrimeField& field, u64 c, const Monomial& mono);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Coefficient of a monomial (0 when absent).
    u64 coefficient(const Monomial& mono) const;
    // Adds c * mono into the polynomial, dropping the term if it cancels.
    void add_term(const Monomial& mono, u64 c);

    std::int64_t total_degree() const noexcept;
    std::int64_t degree_in(std::size_t j) const;
    // Smallest and largest variable index with a positive exponent in some
    // term; {nvars, 0} when the polynomial is constant.
    std::pair<std::size_t, std::size_t> variable_span() const noexcept;
    bool uses_variable(std::size_t j) const;

    SparsePoly operator-() const;
    SparsePoly scaled(u64 c) const;

    friend SparsePoly operator+(const SparsePoly& f, const SparsePoly& g);
    friend SparsePoly operator-(const SparsePoly& f, const SparsePoly& g);
    friend SparsePoly operator*(const SparsePoly& f, const SparsePoly& g);
    SparsePoly& operator+=(const SparsePoly& g);

    SparsePoly pow(unsigned e) const;

    // Exact value at a point of F_p^nvars; coordinates must be canonical.
    u64 evaluate(std::span<const u64> point) const;
    FieldElement evaluate(std::span<const FieldElement> point) const;

    // Text form: terms "c*X0^e0*...*Xn^en" joined by " + ", descending
    // graded-lex order, unit coefficients and exponents omitted.
    std::string to_string() const;
    static SparsePoly parse(std::string_view text, const PrimeField& field, std::size_t nvars);

    friend bool operator==(const SparsePoly& f, const SparsePoly& g) noexcept {
        return f.field_ == g.field_ && f.nvars_ == g.nvars_ && f.terms_ == g.terms_;
    }

private:
    void require_compatible(const SparsePoly& g) const;

    PrimeField field_;
    std::size_t nvars_;
    TermMap terms_;
};

// f(subs[0], ..., subs[n-1]). Powers of each substituted polynomial are
// computed once and reused across terms. Every subs entry must share f's
// field; the result lives in subs' variable count.
SparsePoly compose(const SparsePoly& f, std::span<const SparsePoly> subs);

// Composes several polynomials with the same substitution, sharing the power
// cache between them.
std::vector<SparsePoly> compose_all(std::span<const SparsePoly> fs, std::span<const SparsePoly> subs);

}  // namespace polydyn

#endif  // POLYDYN_POLY_HPP
