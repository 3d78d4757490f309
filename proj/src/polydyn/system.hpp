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

#ifndef POLYDYN_SYSTEM_HPP
#define POLYDYN_SYSTEM_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

inline constexpr u64 kDefaultPermutationBudget = 10'000'000;

// A triangular system over F_p in variables X_0..X_m:
//
//   f_i = X_i * g_i(X_{i+1}, ..., X_m) + h_i(X_{i+1}, ..., X_m),  0 <= i < m
//   f_m = a * X_m + b
//
// Construction only checks shape (counts, fields, m >= 1). Whether g_i and h_i
// satisfy the leading-monomial conditions is reported by validate_structure,
// so that malformed inputs can be diagnosed rather than rejected.
class TriangularSystem {
public:
    TriangularSystem(const PrimeField& field, std::size_t m, std::vector<SparsePoly> g,
                     std::vector<SparsePoly> h, u64 a, u64 b);

    const PrimeField& field() const noexcept { return field_; }
    u64 modulus() const noexcept { return field_.modulus(); }
    std::size_t m() const noexcept { return m_; }
    std::size_t nvars() const noexcept { return m_ + 1; }

    const std::vector<SparsePoly>& g() const noexcept { return g_; }
    const std::vector<SparsePoly>& h() const noexcept { return h_; }
    // f_0..f_m, with f_m = a X_m + b.
    const std::vector<SparsePoly>& f() const noexcept { return f_; }
    u64 a() const noexcept { return a_; }
    u64 b() const noexcept { return b_; }

    // s_{i,j} = deg_{X_j} g_i for 0 <= i < m, i < j <= m; read off g_i's
    // leading monomial. Zero for j <= i.
    unsigned s(std::size_t i, std::size_t j) const { return s_.at(i).at(j); }
    const std::vector<std::vector<unsigned>>& degree_matrix() const noexcept { return s_; }

    // s_{0,1} s_{1,2} ... s_{m-1,m} != 0, the precondition of the average
    // discrepancy and collapse estimates.
    bool chain_degrees_nonzero() const noexcept;

    // (x_0..x_m) -> (f_0(x)..f_m(x)) by generic polynomial evaluation.
    std::vector<u64> apply(std::span<const u64> x) const;

    friend bool operator==(const TriangularSystem&, const TriangularSystem&) = default;

private:
    PrimeField field_;
    std::size_t m_;
    std::vector<SparsePoly> g_;
    std::vector<SparsePoly> h_;
    u64 a_;
    u64 b_;
    std::vector<SparsePoly> f_;
    std::vector<std::vector<unsigned>> s_;
};

struct Violation {
    std::size_t i;               // polynomial index (m for the a != 0 check)
    std::optional<std::size_t> j;  // variable index when one is involved
    std::string condition;       // stable machine tag
    std::string message;
};

// Empty iff every structural condition holds:
//  - g_i and h_i only involve X_{i+1}..X_m                        "support"
//  - g_i is nonzero                                               "zero-g"
//  - g_i contains its leading monomial prod_j X_j^{s_ij}, so every
//    other term divides it                                        "leading-monomial"
//  - that monomial has coefficient 1                              "leading-coefficient"
//  - deg_{X_j} h_i <= s_ij                                        "h-degree"
//  - a != 0                                                       "a-zero"
std::vector<Violation> validate_structure(const TriangularSystem& sys);

enum class CertificateMethod { nonresidue_form, exhaustive };

struct PermutationCertificate {
    CertificateMethod method;
    // nonresidue_form: for each i, the (variable, a_ij) pairs with
    // g_i = prod (X_j^2 - a_ij) and every a_ij a quadratic nonresidue.
    std::vector<std::vector<std::pair<std::size_t, u64>>> nonresidues;
};

enum class PermutationVerdict { certified, not_permutation, unknown };

struct PermutationCheck {
    PermutationVerdict verdict;
    std::optional<PermutationCertificate> certificate;
    // not_permutation: index i and a full point x with g_i(x) == 0.
    std::optional<std::pair<std::size_t, std::vector<u64>>> zero;
    std::string reason;
    u64 evaluations = 0;
};

// Decides whether every g_i is zero-free on F_p^{m-i}. Tries the syntactic
// nonresidue-product form first, then exhaustive enumeration when the total
// number of g_i evaluations fits in `budget`. Precondition: the structure is
// valid.
PermutationCheck check_permutation(const TriangularSystem& sys, u64 budget = kDefaultPermutationBudget,
                                   unsigned threads = 1);

// Exhaustive path only (used to cross-check the syntactic one).
PermutationCheck check_permutation_exhaustive(const TriangularSystem& sys,
                                              u64 budget = kDefaultPermutationBudget, unsigned threads = 1);

// If g == prod_{j in J} (X_j^2 - c_j) for a set of variables J, returns the
// (j, c_j) pairs in increasing j. A constant 1 gives an empty list.
std::optional<std::vector<std::pair<std::size_t, u64>>> square_minus_constant_factors(const SparsePoly& g);

enum class NonresidueVariant { chain, full_product };

// chain:        g_i = X_{i+1}^2 - a_i
// full_product: g_i = prod_{j=i+1}^{m} (X_j^2 - a_ij)
// with every a_i (a_ij) the smallest quadratic nonresidue, h_i = b_i.
// `b_constants` holds b_0..b_{m-1} (missing entries are 0).
TriangularSystem make_nonresidue_system(const PrimeField& field, std::size_t m, NonresidueVariant variant,
                                        std::span<const u64> b_constants, u64 a, u64 b);

std::function<std::vector<u64>(std::span<const u64>)> as_map(const TriangularSystem& sys);

// System file (JSON): {"p": int, "m": int, "g": [..], "h": [..], "a": int, "b": int}.
std::string system_to_json(const TriangularSystem& sys);
TriangularSystem system_from_json(std::string_view text);
TriangularSystem load_system_file(const std::string& path);
void save_system_file(const TriangularSystem& sys, const std::string& path);

}  // namespace polydyn

#endif  // POLYDYN_SYSTEM_HPP
