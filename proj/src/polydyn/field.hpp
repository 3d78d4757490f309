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

#ifndef POLYDYN_FIELD_HPP
#define POLYDYN_FIELD_HPP

#include <cstdint>
#include <iosfwd>

namespace polydyn {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Deterministic Miller-Rabin for the whole 64-bit range.
bool is_prime_u64(u64 n);

// The prime field F_p for odd primes p < 2^63.
//
// Residues are passed around as plain u64 values that must already be
// canonical (0 <= x < p); FieldElement below is the checked wrapper.
class PrimeField {
public:
    static constexpr u64 kMaxModulus = (u64{1} << 63) - 1;

    // Throws UsageError unless p is an odd prime below 2^63.
    explicit PrimeField(u64 p);

    u64 modulus() const noexcept { return p_; }

    u64 reduce(u64 x) const noexcept { return x % p_; }
    u64 reduce_signed(i64 x) const noexcept;
    u64 reduce_wide(u128 x) const noexcept { return static_cast<u64>(x % p_); }

    u64 add(u64 x, u64 y) const noexcept {
        u64 s = x + y;  // p < 2^63 so no wraparound
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 x, u64 y) const noexcept { return x >= y ? x - y : x + (p_ - y); }
    u64 neg(u64 x) const noexcept { return x == 0 ? 0 : p_ - x; }
    u64 mul(u64 x, u64 y) const noexcept {
        return static_cast<u64>(static_cast<u128>(x) * y % p_);
    }

    // pow(x, 0) == 1 including x == 0.
    u64 pow(u64 x, u64 e) const noexcept;

    // Inverse through Fermat; x must be nonzero.
    u64 inv(u64 x) const;

    // Returns -1, 0 or +1 from Euler's criterion.
    int legendre(u64 x) const noexcept;

    u64 smallest_nonresidue() const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    u64 p_;
};

// A residue tagged with its modulus. Arithmetic between elements of
// different fields throws UsageError.
class FieldElement {
public:
    FieldElement(const PrimeField& field, u64 value);

    static FieldElement from_signed(const PrimeField& field, i64 value);

    u64 value() const noexcept { return value_; }
    const PrimeField& field() const noexcept { return field_; }

    FieldElement pow(u64 e) const { return {field_, field_.pow(value_, e)}; }
    FieldElement inverse() const { return {field_, field_.inv(value_)}; }
    int legendre() const noexcept { return field_.legendre(value_); }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x);

    friend bool operator==(const FieldElement& x, const FieldElement& y) noexcept {
        return x.field_ == y.field_ && x.value_ == y.value_;
    }

private:
    PrimeField field_;
    u64 value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

}  // namespace polydyn

#endif  // POLYDYN_FIELD_HPP
