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

#ifndef POLYDYN_DISCREPANCY_HPP
#define POLYDYN_DISCREPANCY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/iterate.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

// N points in [0,1)^s with coordinates numerator / denominator.
class PointSet {
public:
    // `numerators` is row-major, N * dim entries, each < denominator.
    PointSet(std::size_t dim, u64 denominator, std::vector<u64> numerators);

    static PointSet from_outputs(std::span<const OutputPoint> points);

    // One point per line, coordinates separated by commas; empty fields
    // (such as a trailing comma) are skipped. Coordinates are decimals
    // ("0.25") or fractions ("1/4"), or integer numerators when
    // `denominator` is given.
    static PointSet parse_csv(std::string_view text, std::optional<u64> denominator = std::nullopt);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return numerators_.size() / dim_; }
    u64 denominator() const noexcept { return denominator_; }
    u64 numerator(std::size_t n, std::size_t j) const noexcept { return numerators_[n * dim_ + j]; }
    std::span<const u64> numerators() const noexcept { return numerators_; }

    // The first `count` points.
    PointSet prefix(std::size_t count) const;

private:
    std::size_t dim_;
    u64 denominator_;
    std::vector<u64> numerators_;
};

// sup over anchored boxes [0, b) of |#{points in box}/N - vol|, for s = 1,
// from the sorted coordinates. Exact.
Rational star_discrepancy_1d(const PointSet& points);

inline constexpr std::size_t kGridMaxDim = 3;
inline constexpr std::size_t kGridMaxPoints = 300;

// Same supremum in dimension s <= 3 via the critical grid: each corner
// coordinate ranges over the point coordinates and 1, and both the half-open
// count (points strictly below the corner) and the closed count (points at
// or below it, the limit from above) are compared with the volume. Exact.
// Throws BudgetExceeded beyond the dimension or point caps.
Rational discrepancy_grid_exact(const PointSet& points, std::size_t max_points = kGridMaxPoints);

// r(a) = prod max(|a_j|, 1).
u64 r_weight(std::span<const i64> a);

struct EtkBound {
    unsigned L;
    double first_term;   // 1/L
    double second_term;  // (1/N) sum_{0<|a|<=L} |sum_n e(a . x_n)| / r(a)
    double bound() const { return first_term + second_term; }
};

// Right-hand side of the Erdos-Turan-Koksma inequality without its
// implied constant. L > 1.
EtkBound etk_bound(const PointSet& points, unsigned L);

enum class DiscrepancyMethod { exact_1d, grid_exact, etk };

DiscrepancyMethod parse_discrepancy_method(std::string_view name);

// B(N,p) = N^{-1/2} (log N)^{m+1} log p         if N <= p^{1/(m+1)}
//          p^{-1/(2(m+1))} (log N)^{m+1} log p   otherwise
double average_bound_B(u64 N, u64 p, std::size_t m);

struct AverageDiscrepancyRow {
    u64 N;
    int regime;  // 1 when N <= p^{1/(m+1)}, else 2
    double B;
    Rational mean;
    Rational min;
    Rational max;
    std::vector<std::pair<double, double>> exceedance;  // (t, fraction of seeds with D > t B)
    std::map<Rational, u64> distribution;               // value -> number of seeds
};

struct AverageDiscrepancyResult {
    u64 p;
    std::size_t m;
    u64 seeds;
    u64 boundary;  // floor(p^{1/(m+1)})
    std::vector<AverageDiscrepancyRow> rows;
    // Mean discrepancy strictly decreases along the given N list.
    bool mean_decreasing;

    // N,regime,B,mean,min,max,t,exceed_fraction
    std::string summary_csv() const;
    // N,discrepancy,seeds
    std::string distribution_csv() const;
};

inline std::vector<double> default_thresholds() { return {0.5, 1.0, 2.0, 4.0}; }

// D_N(v) of (u_{n,0}/p, ..., u_{n,m-1}/p), n < N, for every seed v and every
// N in `N_values`.
AverageDiscrepancyResult average_discrepancy_experiment(const TriangularSystem& sys, std::span<const u64> N_values,
                                                        std::span<const double> thresholds,
                                                        u64 seed_budget = 10'000'000, unsigned threads = 1);

}  // namespace polydyn

#endif  // POLYDYN_DISCREPANCY_HPP
