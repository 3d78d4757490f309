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

#ifndef POLYDYN_SPECTRAL_HPP
#define POLYDYN_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polydyn/field.hpp"
#include "polydyn/iterate.hpp"
#include "polydyn/system.hpp"

namespace polydyn {

using Complex = std::complex<double>;

// Work cap for brute-force sums, counted in orbit steps.
inline constexpr u64 kDefaultSpectralBudget = 100'000'000;

// Compensated (Kahan) accumulation of complex terms.
class KahanComplexSum {
public:
    void add(Complex z) noexcept {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }
    void add(const KahanComplexSum& other) noexcept {
        add(Complex(other.re_, other.im_));
        add(Complex(-other.re_c_, -other.im_c_));
    }
    Complex value() const noexcept { return {re_, im_}; }

private:
    static void add_part(double& sum, double& comp, double x) noexcept {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

// exp(2 pi i z / modulus), with z reduced modulo `modulus` before the trig
// call. modulus >= 1.
Complex e_m(i64 z, u64 modulus);
Complex e_m_residue(u64 z, u64 modulus);

// sum_{-(m-1)/2 <= a <= m/2} e_m(a b), computed numerically and rounded.
// Throws std::logic_error if the sum drifts more than 1e-6 m from an integer
// or disagrees with the closed form (m if m | b, else 0).
i64 ident_sum(i64 b, u64 modulus);

// sum_{r=L+1}^{L+Q} e_m(c r).
Complex partial_character_sum(i64 c, i64 L, u64 Q, u64 modulus);

// The exponential sum over F_p^{m+1} of
//   F_{a,k,l} = sum_{i<m} a_i (f_i^(k) - f_i^(l))
// evaluated two independent ways:
//   route A  enumerates every x in F_p^{m+1}, iterating the map numerically;
//   route B  takes s = min{i : a_i != 0}, and sums the remaining phase
//            a_s (h_sk - h_sl) + sum_{i>s} a_i (f_i^(k) - f_i^(l)) over the
//            zero set of g_sk - g_sl in F_p^{m-s}, scaled by p^{s+1}. Its
//            polynomials come from symbolic iteration.
struct CollapseSum {
    Complex route_a;
    Complex route_b;
    std::size_t s;
    u64 zero_set_size;
    double prefix_factor;          // p^{s+1}
    bool difference_nonzero;       // g_sk - g_sl is not the zero polynomial
    double difference_degree;      // its total degree, or -1 when zero
    double absolute_gap() const { return std::abs(route_a - route_b); }
};

// Requires k >= l, a of length m and nonzero. Throws BudgetExceeded when
// p^{m+1} k orbit steps exceed `budget` or the iterates exceed `term_budget`.
CollapseSum collapse_sum(const TriangularSystem& sys, std::span<const u64> a, unsigned k, unsigned l,
                       u64 budget = kDefaultSpectralBudget, unsigned threads = 1,
                       u64 term_budget = kDefaultTermBudget);

// V_{a,c}(M,N) over the window n in [shift, shift + N):
//   sum over v in F_p^{m+1} of |sum_n e_p(sum_j a_j u_{n,j}(v)) e_M(c n)|^2.
double v_sum(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N, u64 shift = 0,
             u64 budget = kDefaultSpectralBudget, unsigned threads = 1);

// V for every window length 1..N_max in one pass; element N-1 holds V(N).
std::vector<double> v_sum_prefixes(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N_max,
                                   u64 shift = 0, u64 budget = kDefaultSpectralBudget, unsigned threads = 1);

// floor(p^{1/(m+1)}), exactly.
u64 regime_boundary(u64 p, std::size_t m);

// N p^{m+1} if N <= p^{1/(m+1)}, else N^2 p^{m(m+2)/(m+1)}.
double v_bound(u64 N, u64 p, std::size_t m);

struct VBoundRow {
    u64 N;
    double v;
    double bound;
    int branch;  // 1 or 2
    double ratio;
};

struct VBoundReport {
    u64 p;
    std::size_t m;
    u64 boundary;
    std::vector<VBoundRow> rows;
    double max_ratio;
    // Raised when the ratio at the largest N exceeds twice the largest ratio
    // seen over the first half of the sweep.
    bool growth_flag;

    std::string to_csv(std::span<const u64> a, i64 c, u64 M, u64 shift) const;
};

VBoundReport v_bound_check(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N_max,
                           u64 shift = 0, u64 budget = kDefaultSpectralBudget, unsigned threads = 1);

}  // namespace polydyn

#endif  // POLYDYN_SPECTRAL_HPP
