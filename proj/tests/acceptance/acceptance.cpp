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

// Acceptance suite: one PASS/FAIL line per criterion, AC1..AC11.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/test_support.hpp"
#include "polydyn/bench.hpp"
#include "polydyn/discrepancy.hpp"
#include "polydyn/format.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/iterate.hpp"
#include "polydyn/spectral.hpp"
#include "polydyn/system.hpp"

using namespace polydyn;
using namespace polydyn::testing;

namespace {

// Tolerances and limits, fixed here.
constexpr double kCollapseTolerance = 1e-6;  // relative to p^{m+1}
constexpr double kShiftTolerance = 1e-9;     // relative
constexpr double kInequalSlack = 1e-9;
constexpr std::uint64_t kRngSeed = 20260101;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    const char* id;
    const char* title;
    double time_limit_s;  // 0 = none
    std::function<Outcome()> run;
};

bool is_bijection(const TriangularSystem& sys) {
    const u64 p = sys.modulus();
    const std::size_t d = sys.nvars();
    u64 size = 1;
    for (std::size_t j = 0; j < d; ++j) size *= p;
    std::vector<bool> hit(size, false);
    for (const auto& x : all_points(p, d)) {
        const auto y = sys.apply(x);
        u64 idx = 0;
        for (std::size_t j = d; j-- > 0;) idx = idx * p + y[j];
        if (hit[idx]) return false;
        hit[idx] = true;
    }
    return true;
}

Outcome ac1() {
    Outcome o;
    for (u64 p : {3, 5, 7, 11, 13}) {
        for (std::size_t m : {1, 2}) {
            const std::string tag = "p=" + std::to_string(p) + " m=" + std::to_string(m);
            for (const auto& sys : {chain(p, m), full_product(p, m)}) {
                o.require(is_bijection(sys), "nonresidue system not bijective at " + tag);
                o.require(check_permutation(sys).verdict == PermutationVerdict::certified,
                          "nonresidue system not certified at " + tag);
            }
            const auto planted = planted_zero(p, m);
            o.require(!is_bijection(planted), "planted-zero system bijective at " + tag);
            o.require(check_permutation(planted).verdict == PermutationVerdict::not_permutation,
                      "planted-zero system not rejected at " + tag);
        }
    }
    o.detail = o.pass ? "20 nonresidue systems bijective, 10 planted-zero systems not" : o.detail;
    return o;
}

Outcome ac2() {
    Outcome o;
    const auto r1 = degree_growth_report(chain(5, 1), 10);
    for (const auto& row : r1.rows) {
        if (row.i == 0) {
            o.require(row.deg_g == 2 * static_cast<std::int64_t>(row.k),
                      "m=1: deg g_0," + std::to_string(row.k) + " = " + std::to_string(row.deg_g));
        }
    }
    const auto r2 = degree_growth_report(chain(5, 2), 8, 2);
    std::vector<Rational> residual;
    for (const auto& row : r2.rows) {
        if (row.i == 0 && row.k >= 2) residual.push_back(Rational(row.deg_g) - Rational(2 * row.k * row.k));
    }
    const int order = polynomial_order(residual);
    o.require(residual.size() == 7, "m=2: expected k = 2..8");
    o.require(order <= 1, "m=2: residual has order " + std::to_string(order));
    if (o.pass) {
        std::ostringstream d;
        d << "m=1 deg g_0k = 2k for k<=10; m=2 residual deg g_0k - 2k^2 =";
        for (const auto& r : residual) d << ' ' << r;
        d << " (order " << order << ")";
        o.detail = d.str();
    }
    return o;
}

Outcome ac3() {
    Outcome o;
    Rng rng(kRngSeed + 3);
    for (int t = 0; t < 10; ++t) {
        const u64 p = std::vector<u64>{3, 5, 7}[uniform(rng, 0, 2)];
        const auto sys = random_valid_system(rng, p, uniform(rng, 1, 2));
        o.require(validate_structure(sys).empty(), "generated system invalid");
        SymbolicIterator it(sys);
        for (unsigned k = 1; k <= 6; ++k) {
            it.advance();
            for (std::size_t i = 0; i <= sys.m(); ++i) {
                const auto d = decompose(it.current()[i], i, k);
                const SparsePoly xi = SparsePoly::variable(sys.field(), sys.nvars(), i);
                o.require((it.current()[i] - (xi * d.g_ik + d.h_ik)).is_zero(),
                          "nonzero remainder at i=" + std::to_string(i) + " k=" + std::to_string(k));
            }
        }
    }
    if (o.pass) o.detail = "10 systems, all i, k <= 6: remainder is the zero polynomial";
    return o;
}

Outcome ac4() {
    Outcome o;
    Rng rng(kRngSeed + 4);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        const u64 p = uniform(rng, 0, 1) ? 5 : 7;
        const std::size_t m = uniform(rng, 1, 2);
        const auto sys = t % 2 ? chain(p, m, uniform(rng, 1, p - 1), uniform(rng, 0, p - 1))
                               : full_product(p, m, uniform(rng, 1, p - 1), uniform(rng, 0, p - 1));
        std::vector<u64> a(m, 0);
        while (std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; })) {
            for (auto& v : a) v = uniform(rng, 0, p - 1);
        }
        const unsigned k = static_cast<unsigned>(uniform(rng, 1, 6));
        const unsigned l = static_cast<unsigned>(uniform(rng, 0, k - 1));
        const auto r = collapse_sum(sys, a, k, l);
        const double scale = std::pow(static_cast<double>(p), static_cast<double>(m + 1));
        const double rel = r.absolute_gap() / scale;
        worst = std::max(worst, rel);
        o.require(rel <= kCollapseTolerance, "routes differ by " + format_double(rel) + " relative");
    }
    if (o.pass) o.detail = "50 instances, worst relative gap " + format_double(worst);
    return o;
}

Outcome ac5() {
    Outcome o;
    Rng rng(kRngSeed + 5);
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
        const u64 p = t % 2 ? 5 : 7;
        const auto sys = chain(p, 1, uniform(rng, 1, p - 1), uniform(rng, 0, p - 1));
        const std::vector<u64> a{uniform(rng, 1, p - 1)};
        const i64 c = static_cast<i64>(uniform(rng, 0, 40)) - 20;
        const u64 M = uniform(rng, 1, 20), L = uniform(rng, 1, 100), N = uniform(rng, 1, 8);
        const double v0 = v_sum(sys, a, c, M, N), vL = v_sum(sys, a, c, M, N, L);
        const double rel = std::abs(v0 - vL) / std::max(1.0, std::abs(v0));
        worst = std::max(worst, rel);
        o.require(rel <= kShiftTolerance, "window shift changed V by " + format_double(rel) + " relative");
    }
    if (o.pass) o.detail = "10 instances, worst relative change " + format_double(worst);
    return o;
}

Outcome ac6() {
    Outcome o;
    for (u64 m = 1; m <= 64; ++m) {
        const i64 mm = static_cast<i64>(m);
        for (i64 b = -2 * mm; b <= 2 * mm; ++b) {
            i64 got = 0;
            try {
                got = ident_sum(b, m);
            } catch (const std::exception& e) {
                o.require(false, e.what());
                continue;
            }
            o.require(got == (b % mm == 0 ? mm : 0), "ident_sum mismatch at m=" + std::to_string(m));
        }
    }
    Rng rng(kRngSeed + 6);
    double worst = -1e9;
    for (int t = 0; t < 10000; ++t) {
        const u64 m = uniform(rng, 2, 1000);
        const u64 Q = uniform(rng, 1, m);
        const i64 L = static_cast<i64>(uniform(rng, 0, 2 * m)) - static_cast<i64>(m);
        // c from the symmetric residues -(m-1)/2..m/2, nonzero.
        i64 c = static_cast<i64>(uniform(rng, 1, m / 2));
        if (uniform(rng, 0, 1) && c <= static_cast<i64>((m - 1) / 2)) c = -c;
        const double bound = std::min(static_cast<double>(Q), static_cast<double>(m) / std::abs(static_cast<double>(c)));
        const double got = std::abs(partial_character_sum(c, L, Q, m));
        worst = std::max(worst, got - bound);
        o.require(got <= bound + kInequalSlack, "inequality violated");
    }
    if (o.pass) o.detail = "ident exact for m<=64, |b|<=2m; 1e4 inequality instances, max excess " + format_double(worst);
    return o;
}

Outcome ac7() {
    Outcome o;
    Rng rng(kRngSeed + 7);
    for (int t = 0; t < 50; ++t) {
        const std::size_t N = uniform(rng, 1, 100);
        const u64 q = uniform(rng, 2, 10007);
        std::vector<u64> nums(N);
        for (auto& v : nums) v = uniform(rng, 0, q - 1);
        const PointSet ps(1, q, nums);
        o.require(star_discrepancy_1d(ps) == discrepancy_grid_exact(ps), "1d and grid methods differ");
    }
    for (u64 N = 1; N <= 100; ++N) {
        std::vector<u64> nums(N);
        for (u64 i = 0; i < N; ++i) nums[i] = i;
        const PointSet ps(1, N, nums);
        o.require(star_discrepancy_1d(ps) == Rational(1, N), "D*({i/N}) != 1/N");
        o.require(discrepancy_grid_exact(ps) == Rational(1, N), "grid D*({i/N}) != 1/N");
    }
    o.require(star_discrepancy_1d(PointSet(1, 2, {1})) == Rational(1, 2), "D*({0.5}) != 1/2");
    o.require(discrepancy_grid_exact(PointSet(1, 2, {1})) == Rational(1, 2), "grid D*({0.5}) != 1/2");
    if (o.pass) o.detail = "50 random sets agree; D*({i/N}) = 1/N for N<=100; D*({0.5}) = 1/2";
    return o;
}

Outcome ac8() {
    Outcome o;
    Rng rng(kRngSeed + 8);
    u64 checks = 0;
    for (int t = 0; t < 10; ++t) {
        const u64 p = std::vector<u64>{3, 5, 7}[uniform(rng, 0, 2)];
        const auto sys = random_valid_system(rng, p, uniform(rng, 1, 2));
        const auto points = all_points(p, sys.nvars());
        SymbolicIterator it(sys);
        for (unsigned k = 0; k <= 5; ++k) {
            if (k > 0) it.advance();
            for (const auto& x : points) {
                Generator g(sys, x);
                g.jump(k);
                for (std::size_t i = 0; i <= sys.m(); ++i) {
                    o.require(g.state()[i] == it.current()[i].evaluate(x), "jump differs from symbolic iterate");
                    ++checks;
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " coordinate values equal";
    return o;
}

Outcome ac9() {
    Outcome o;
    const auto sys = chain(31, 1);
    const std::vector<u64> Ns{4, 8, 16, 31};
    const std::vector<double> ts{0.5, 1, 2, 4};
    const auto r = average_discrepancy_experiment(sys, Ns, ts);
    o.require(r.seeds == 961, "expected 961 seeds");
    o.require(r.rows.size() == Ns.size(), "missing rows");
    for (const auto& row : r.rows) {
        u64 total = 0;
        for (const auto& [d, count] : row.distribution) total += count;
        o.require(total == 961, "distribution does not cover every seed");
        o.require(row.exceedance.size() == ts.size(), "missing thresholds");
    }
    o.require(r.mean_decreasing, "mean D_N did not decrease with N");
    std::ostringstream d;
    d << "mean D_N:";
    for (const auto& row : r.rows) d << " N=" << row.N << ":" << format_double(row.mean.convert_to<double>());
    d << "\n" << r.summary_csv();
    o.detail = o.pass ? d.str() : o.detail + "\n" + d.str();
    return o;
}

Outcome ac10() {
    Outcome o;
    for (u64 p : {u64{5}, u64{101}, (u64{1} << 61) - 1}) {
        for (std::size_t m : {1, 2, 3, 4}) {
            const auto sys = chain(p, m);
            const Stepper stepper(sys);
            o.require(stepper.path() == StepPath::product_form, "chain family not on the product path");
            std::vector<u64> x(m + 1, 1), y(m + 1), muls(m + 1, 0);
            const u64 steps = 1000;
            for (u64 t = 0; t < steps; ++t) {
                stepper.step_counted(x, y, muls);
                x.swap(y);
            }
            for (std::size_t i = 0; i < m; ++i) {
                o.require(muls[i] == 2 * steps, "component " + std::to_string(i) + " spent " +
                                                    format_double(static_cast<double>(muls[i]) / steps));
            }
        }
    }
    if (o.pass) o.detail = "2 multiplications per emitted component per step (p in {5,101,2^61-1}, m<=4)";
    return o;
}

Outcome ac11() {
    Outcome o;
    const auto sys = chain((u64{1} << 61) - 1, 3);
    const std::vector<u64> seed{123456789, 987654321, 192837465, 564738291};
    const auto r = run_bench(sys, seed, 1'000'000);  // throws if the count is not 2
    o.require(r.path == StepPath::product_form, "fast path not taken");
    o.require(r.seconds < 5.0, "took " + format_double(r.seconds) + " s");
    for (std::size_t i = 0; i < 3; ++i) o.require(r.muls_per_component[i] == 2.0, "multiplication count not 2");
    if (o.pass) {
        o.detail = "1e6 vectors in " + format_double(r.seconds) + " s (" + format_double(r.steps_per_second) +
                   " steps/s)";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "bijectivity of nonresidue and planted-zero systems", 10, ac1},
        {"AC2", "degree law exactness for the chain family", 30, ac2},
        {"AC3", "iterate decomposition", 0, ac3},
        {"AC4", "collapse sum: enumeration equals zero-set route", 60, ac4},
        {"AC5", "V window-shift invariance", 30, ac5},
        {"AC6", "identity and inequality for character sums", 0, ac6},
        {"AC7", "discrepancy oracles", 0, ac7},
        {"AC8", "jump equals symbolic iterate evaluation", 0, ac8},
        {"AC9", "average discrepancy experiment at p=31, m=1", 300, ac9},
        {"AC10", "two multiplications per component", 0, ac10},
        {"AC11", "fast-path throughput", 0, ac11},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
            o.pass = false;
            o.detail = "exceeded " + format_double(c.time_limit_s) + " s; " + o.detail;
        }
        failures += !o.pass;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.title << " [" << timing << "] "
                  << o.detail << '\n';
    }
    std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : "acceptance: PASS")
              << '\n';
    return failures ? 1 : 0;
}
