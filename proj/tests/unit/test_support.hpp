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

// Shared fixtures and independent reference implementations for the tests.

#ifndef POLYDYN_TESTS_SUPPORT_HPP
#define POLYDYN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polydyn/field.hpp"
#include "polydyn/poly.hpp"
#include "polydyn/system.hpp"

namespace polydyn::testing {

using Rng = std::mt19937_64;

inline u64 uniform(Rng& rng, u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }

// The running example: p = 5, g_0 = X1^2 - 2, h_0 = 1, f_1 = X1 + 1.
inline TriangularSystem chain_p5() {
    const PrimeField F(5);
    const std::vector<u64> h{1};
    return make_nonresidue_system(F, 1, NonresidueVariant::chain, h, 1, 1);
}

inline TriangularSystem chain(u64 p, std::size_t m, u64 a = 1, u64 b = 1) {
    const PrimeField F(p);
    std::vector<u64> h(m, 1);
    return make_nonresidue_system(F, m, NonresidueVariant::chain, h, a, b);
}

inline TriangularSystem full_product(u64 p, std::size_t m, u64 a = 1, u64 b = 1) {
    const PrimeField F(p);
    std::vector<u64> h(m, 1);
    return make_nonresidue_system(F, m, NonresidueVariant::full_product, h, a, b);
}

// Chain shape with g_0 = X1^2 - r for a nonzero square r, so g_0 has zeros.
inline TriangularSystem planted_zero(u64 p, std::size_t m, u64 r = 1) {
    const PrimeField F(p);
    const TriangularSystem base = chain(p, m);
    auto g = base.g();
    const std::size_t n = m + 1;
    g[0] = SparsePoly::variable(F, n, 1).pow(2) - SparsePoly::constant(F, n, r);
    return TriangularSystem(F, m, std::move(g), base.h(), base.a(), base.b());
}

// A structurally valid system with random leading exponents in 0..2, random
// tails strictly below them and random h of degree at most s_ij in X_j.
inline TriangularSystem random_valid_system(Rng& rng, u64 p, std::size_t m) {
    const PrimeField F(p);
    const std::size_t n = m + 1;
    std::vector<SparsePoly> g, h;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<unsigned> s(n, 0);
        for (std::size_t j = i + 1; j <= m; ++j) s[j] = static_cast<unsigned>(uniform(rng, 0, 2));
        if (i + 1 <= m && s[i + 1] == 0 && uniform(rng, 0, 1)) s[i + 1] = 1;
        SparsePoly gi = SparsePoly::term(F, 1, Monomial(std::span<const unsigned>(s)));
        SparsePoly hi(F, n);
        for (int t = 0; t < 3; ++t) {
            std::vector<unsigned> tail(n, 0), he(n, 0);
            // With every s_ij = 0 the only candidate tail monomial is the
            // leading one itself.
            const bool tail_ok = std::any_of(s.begin(), s.end(), [](unsigned e) { return e > 0; });
            for (std::size_t j = i + 1; j <= m; ++j) {
                if (s[j] == 0) {
                    tail[j] = 0;
                } else {
                    tail[j] = static_cast<unsigned>(uniform(rng, 0, s[j] - 1));
                }
                he[j] = static_cast<unsigned>(uniform(rng, 0, s[j]));
            }
            if (tail_ok) gi.add_term(Monomial(std::span<const unsigned>(tail)), uniform(rng, 0, p - 1));
            hi.add_term(Monomial(std::span<const unsigned>(he)), uniform(rng, 0, p - 1));
        }
        g.push_back(std::move(gi));
        h.push_back(std::move(hi));
    }
    return TriangularSystem(F, m, std::move(g), std::move(h), uniform(rng, 1, p - 1), uniform(rng, 0, p - 1));
}

// Every point of F_p^dims, coordinate 0 fastest.
inline std::vector<std::vector<u64>> all_points(u64 p, std::size_t dims) {
    std::vector<std::vector<u64>> out;
    std::vector<u64> x(dims, 0);
    while (true) {
        out.push_back(x);
        std::size_t j = 0;
        while (j < dims && ++x[j] == p) x[j++] = 0;
        if (j == dims) break;
    }
    return out;
}

// Plain big-integer reference for a * b mod p.
inline u64 mulmod_reference(u64 a, u64 b, u64 p) {
    boost::multiprecision::cpp_int r = boost::multiprecision::cpp_int(a) * b % p;
    return r.convert_to<u64>();
}

// Trial division.
inline bool is_prime_reference(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Star discrepancy by brute force over every anchored box whose corner lies on
// the lattice {0, 1/q, ..., 1}^s, where q is the common denominator of the
// points. With open counts (x < b) and closed counts (x <= b) this covers
// the supremum, since the extremes occur at lattice corners.
inline boost::multiprecision::cpp_rational lattice_star_discrepancy(const std::vector<std::vector<u64>>& pts, u64 q) {
    using boost::multiprecision::cpp_rational;
    const std::size_t s = pts.at(0).size();
    const std::size_t N = pts.size();
    std::vector<u64> b(s, 0);
    cpp_rational best = 0;
    while (true) {
        std::size_t open = 0, closed = 0;
        for (const auto& x : pts) {
            bool o = true, c = true;
            for (std::size_t j = 0; j < s; ++j) {
                o = o && x[j] < b[j];
                c = c && x[j] <= b[j];
            }
            open += o;
            closed += c;
        }
        cpp_rational vol = 1;
        for (std::size_t j = 0; j < s; ++j) vol *= cpp_rational(b[j], q);
        best = std::max(best, vol - cpp_rational(open, N));
        best = std::max(best, cpp_rational(closed, N) - vol);
        std::size_t j = 0;
        while (j < s && ++b[j] > q) b[j++] = 0;
        if (j == s) break;
    }
    return best;
}

}  // namespace polydyn::testing

#endif  // POLYDYN_TESTS_SUPPORT_HPP
