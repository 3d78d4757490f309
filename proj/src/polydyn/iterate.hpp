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

#ifndef POLYDYN_ITERATE_HPP
#define POLYDYN_ITERATE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polydyn/poly.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr u64 kDefaultTermBudget = 1'000'000;

// Walks f^(0), f^(1), ... symbolically: f_i^(0) = X_i and
// f_i^(k) = f_i(f_0^(k-1), ..., f_m^(k-1)).
class SymbolicIterator {
public:
    explicit SymbolicIterator(const TriangularSystem& sys, u64 term_budget = kDefaultTermBudget);

    unsigned k() const noexcept { return k_; }
    const std::vector<SparsePoly>& current() const noexcept { return current_; }

    // Advances to f^(k+1). Throws BudgetExceeded (completed() == k) when the
    // total term count would pass the budget; the iterator is unchanged then.
    void advance();

private:
    const TriangularSystem* sys_;
    u64 budget_;
    unsigned k_ = 0;
    std::vector<SparsePoly> current_;
};

// f_0^(k), ..., f_m^(k).
std::vector<SparsePoly> iterate_symbolic(const TriangularSystem& sys, unsigned k,
                                         u64 term_budget = kDefaultTermBudget);

// f_i^(k) = X_i g_ik + h_ik with g_ik, h_ik free of X_0..X_i.
struct IterateDecomposition {
    std::size_t i;
    unsigned k;
    SparsePoly g_ik;
    SparsePoly h_ik;
    // deg g_ik >= deg h_ik (the zero polynomial has degree -infinity).
    bool degree_order_holds;
};

// Splits an iterate by its X_i exponent. Throws std::logic_error if a term
// has X_i exponent >= 2 or involves some X_j with j < i; neither can happen
// for a triangular system.
IterateDecomposition decompose(const SparsePoly& f_ik, std::size_t i, unsigned k);
IterateDecomposition decompose(const TriangularSystem& sys, std::size_t i, unsigned k,
                               u64 term_budget = kDefaultTermBudget);

struct DegreeRow {
    std::size_t i;
    unsigned k;
    std::int64_t deg_g;
    Rational predicted_leading;  // k^{m-i} s_{i,i+1}...s_{m-1,m} / (m-i)!, 0 for i = m
    Rational residual;           // deg_g - predicted_leading
};

struct DegreeSummary {
    std::size_t i;
    Rational predicted_coefficient;  // s_{i,i+1}...s_{m-1,m} / (m-i)!
    Rational fitted_coefficient;     // last (m-i)-th difference of deg_g over (m-i)!
    // Smallest d such that the residual agrees with a polynomial of degree d
    // in k over the reported range; -1 when the residual is identically zero.
    int residual_order;
    bool residual_order_conclusive;  // enough points to pin the order down
    bool flagged;                    // residual_order >= m - i
};

struct DegreeReport {
    std::size_t m;
    unsigned k_first;
    unsigned k_max;
    std::vector<DegreeRow> rows;  // ordered by i, then k
    std::vector<DegreeSummary> summaries;

    // CSV with columns i,k,deg_g,predicted_leading,residual.
    std::string to_csv() const;
};

// Degrees of g_ik for k = 1..k_max (summaries computed over k >= k_first).
DegreeReport degree_growth_report(const TriangularSystem& sys, unsigned k_max, unsigned k_first = 1,
                                  u64 term_budget = kDefaultTermBudget);

// Smallest d such that the (d+1)-th finite differences of `values` all
// vanish; -1 for an all-zero sequence. Returns values.size() - 1 when no
// smaller d fits.
int polynomial_order(const std::vector<Rational>& values);

}  // namespace polydyn

#endif  // POLYDYN_ITERATE_HPP
