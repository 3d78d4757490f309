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

#include "polydyn/field.hpp"

#include <array>
#include <bit>
#include <ostream>
#include <string>

#include "polydyn/errors.hpp"

namespace polydyn {

namespace {

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : kWitnesses) {
        if (n % q == 0) return n == q;
    }
    // The first twelve primes as bases are deterministic below 3.3e24.
    const int s = std::countr_zero(n - 1);
    const u64 d = (n - 1) >> s;
    for (u64 a : kWitnesses) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3 || p > kMaxModulus || (p & 1) == 0) {
        throw UsageError("modulus " + std::to_string(p) + " is not an odd number in [3, 2^63)");
    }
    if (!is_prime_u64(p)) {
        throw UsageError("modulus " + std::to_string(p) + " is not prime");
    }
}

u64 PrimeField::reduce_signed(i64 x) const noexcept {
    i64 r = x % static_cast<i64>(p_);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(p_)) : static_cast<u64>(r);
}

u64 PrimeField::pow(u64 x, u64 e) const noexcept { return powmod(x, e, p_); }

u64 PrimeField::inv(u64 x) const {
    if (x % p_ == 0) throw UsageError("inverse of zero");
    return pow(x, p_ - 2);
}

int PrimeField::legendre(u64 x) const noexcept {
    x %= p_;
    if (x == 0) return 0;
    return pow(x, (p_ - 1) / 2) == 1 ? 1 : -1;
}

u64 PrimeField::smallest_nonresidue() const noexcept {
    u64 a = 2;
    while (legendre(a) != -1) ++a;
    return a;
}

FieldElement::FieldElement(const PrimeField& field, u64 value)
    : field_(field), value_(field.reduce(value)) {}

FieldElement FieldElement::from_signed(const PrimeField& field, i64 value) {
    return {field, field.reduce_signed(value)};
}

namespace {

void require_same_field(const FieldElement& x, const FieldElement& y) {
    if (!(x.field() == y.field())) {
        throw UsageError("field elements modulo " + std::to_string(x.field().modulus()) + " and " +
                         std::to_string(y.field().modulus()) + " cannot be combined");
    }
}

}  // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    require_same_field(x, y);
    return {x.field_, x.field_.add(x.value_, y.value_)};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    require_same_field(x, y);
    return {x.field_, x.field_.sub(x.value_, y.value_)};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    require_same_field(x, y);
    return {x.field_, x.field_.mul(x.value_, y.value_)};
}

FieldElement operator-(const FieldElement& x) { return {x.field_, x.field_.neg(x.value_)}; }

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    return os << x.value() << " (mod " << x.field().modulus() << ")";
}

}  // namespace polydyn
