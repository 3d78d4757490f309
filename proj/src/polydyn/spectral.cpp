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

#include "polydyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polydyn/errors.hpp"
#include "polydyn/format.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/state_space.hpp"

namespace polydyn {

Complex e_m_residue(u64 z, u64 modulus) {
    if (modulus == 0) throw UsageError("e_m needs a positive modulus");
    z %= modulus;
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(z) / static_cast<double>(modulus));
    return {std::cos(angle), std::sin(angle)};
}

Complex e_m(i64 z, u64 modulus) {
    if (modulus == 0) throw UsageError("e_m needs a positive modulus");
    i128 r = static_cast<i128>(z) % static_cast<i128>(modulus);
    if (r < 0) r += modulus;
    return e_m_residue(static_cast<u64>(r), modulus);
}

namespace {

u64 mul_mod_signed(i64 x, i64 y, u64 modulus) {
    i128 r = (static_cast<i128>(x) * y) % static_cast<i128>(modulus);
    if (r < 0) r += modulus;
    return static_cast<u64>(r);
}

}  // namespace

i64 ident_sum(i64 b, u64 modulus) {
    if (modulus == 0) throw UsageError("ident_sum needs a positive modulus");
    const i64 mod = static_cast<i64>(modulus);
    // -(m-1)/2 <= a <= m/2 holds exactly m integers.
    const i64 lo = -((mod - 1) / 2);
    const i64 hi = mod / 2;
    KahanComplexSum sum;
    for (i64 a = lo; a <= hi; ++a) sum.add(e_m_residue(mul_mod_signed(a, b, modulus), modulus));
    const Complex z = sum.value();
    const double rounded = std::round(z.real());
    const double tol = 1e-6 * static_cast<double>(modulus);
    if (std::abs(z.real() - rounded) > tol || std::abs(z.imag()) > tol) {
        throw std::logic_error("ident_sum drifted: " + format_double(z.real()) + " + " + format_double(z.imag()) +
                               "i");
    }
    const i64 closed = (b % mod == 0) ? mod : 0;
    if (static_cast<i64>(rounded) != closed) {
        throw std::logic_error("ident_sum(" + std::to_string(b) + ", " + std::to_string(modulus) + ") = " +
                               format_double(rounded) + ", closed form " + std::to_string(closed));
    }
    return static_cast<i64>(rounded);
}

Complex partial_character_sum(i64 c, i64 L, u64 Q, u64 modulus) {
    KahanComplexSum sum;
    for (u64 t = 1; t <= Q; ++t) {
        const i64 r = L + static_cast<i64>(t);
        sum.add(e_m_residue(mul_mod_signed(c, r, modulus), modulus));
    }
    return sum.value();
}

namespace {

void check_coefficients(const TriangularSystem& sys, std::span<const u64> a) {
    if (a.size() != sys.m()) {
        throw UsageError("coefficient vector has " + std::to_string(a.size()) + " entries, expected m = " +
                         std::to_string(sys.m()));
    }
    bool nonzero = false;
    for (u64 v : a) {
        if (v >= sys.modulus()) throw UsageError("coefficients must be canonical residues");
        nonzero = nonzero || v != 0;
    }
    if (!nonzero) throw UsageError("coefficient vector a must be nonzero");
}

u64 seed_count(const TriangularSystem& sys) {
    auto n = checked_power(sys.modulus(), sys.nvars());
    if (!n) throw BudgetExceeded("p^{m+1} does not fit in 64 bits");
    return *n;
}

void check_budget(u64 seeds, u64 steps_per_seed, u64 budget, const char* what) {
    const u128 work = static_cast<u128>(seeds) * std::max<u64>(steps_per_seed, 1);
    if (work > budget) {
        throw BudgetExceeded(std::string(what) + " needs " + std::to_string(static_cast<double>(work)) +
                             " orbit steps, over the budget of " + std::to_string(budget));
    }
}

}  // namespace

CollapseSum collapse_sum(const TriangularSystem& sys, std::span<const u64> a, unsigned k, unsigned l, u64 budget,
                       unsigned threads, u64 term_budget) {
    check_coefficients(sys, a);
    if (k < l) throw UsageError("collapse_sum needs k >= l");
    const PrimeField& F = sys.field();
    const u64 p = sys.modulus();
    const std::size_t m = sys.m();
    const std::size_t n = sys.nvars();
    const u64 seeds = seed_count(sys);
    check_budget(seeds, k, budget, "route A");

    // Route A: direct enumeration along numeric orbits.
    const Stepper stepper(sys);
    const StateIndexer all(p, n, seeds);
    auto parts = run_chunked<KahanComplexSum>(seeds, threads, [&](u64 begin, u64 end) {
        KahanComplexSum acc;
        std::vector<u64> x(n), y(n), at_l(m);
        for (u64 idx = begin; idx < end; ++idx) {
            all.decode(idx, x);
            for (unsigned t = 0; t < k; ++t) {
                if (t == l) std::copy_n(x.begin(), m, at_l.begin());
                stepper.step(x, y);
                x.swap(y);
            }
            if (k == l) std::copy_n(x.begin(), m, at_l.begin());
            u64 phase = 0;
            for (std::size_t i = 0; i < m; ++i) phase = F.add(phase, F.mul(a[i], F.sub(x[i], at_l[i])));
            acc.add(e_m_residue(phase, p));
        }
        return acc;
    });
    KahanComplexSum route_a;
    for (const auto& part : parts) route_a.add(part);

    // Route B: collapse over x_0..x_s using the symbolic decomposition.
    std::size_t s = 0;
    while (a[s] == 0) ++s;
    SymbolicIterator it(sys, term_budget);
    std::vector<SparsePoly> iter_l = it.current();
    while (it.k() < k) {
        it.advance();
        if (it.k() == l) iter_l = it.current();
    }
    const std::vector<SparsePoly>& iter_k = it.current();
    const auto dec_k = decompose(iter_k[s], s, k);
    const auto dec_l = decompose(iter_l[s], s, l);
    const SparsePoly difference = dec_k.g_ik - dec_l.g_ik;
    SparsePoly phase = (dec_k.h_ik - dec_l.h_ik).scaled(a[s]);
    for (std::size_t i = s + 1; i < m; ++i) {
        if (a[i] != 0) phase += (iter_k[i] - iter_l[i]).scaled(a[i]);
    }

    const std::size_t dims = m - s;
    const u64 points = *checked_power(p, dims);
    const StateIndexer tail(p, dims, points);
    struct Partial {
        KahanComplexSum sum;
        u64 zeros = 0;
    };
    auto bparts = run_chunked<Partial>(points, threads, [&](u64 begin, u64 end) {
        Partial acc;
        std::vector<u64> x(n, 0);
        std::span<u64> y(x.data() + s + 1, dims);
        tail.decode(begin, y);
        for (u64 idx = begin; idx < end; ++idx) {
            if (difference.evaluate(x) == 0) {
                ++acc.zeros;
                acc.sum.add(e_m_residue(phase.evaluate(x), p));
            }
            tail.next(y);
        }
        return acc;
    });
    KahanComplexSum zero_sum;
    u64 zeros = 0;
    for (const auto& part : bparts) {
        zero_sum.add(part.sum);
        zeros += part.zeros;
    }
    const double prefix = std::pow(static_cast<double>(p), static_cast<double>(s + 1));

    CollapseSum out;
    out.route_a = route_a.value();
    out.route_b = prefix * zero_sum.value();
    out.s = s;
    out.zero_set_size = zeros;
    out.prefix_factor = prefix;
    out.difference_nonzero = !difference.is_zero();
    out.difference_degree = difference.is_zero() ? -1.0 : static_cast<double>(difference.total_degree());
    return out;
}

std::vector<double> v_sum_prefixes(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N_max,
                                   u64 shift, u64 budget, unsigned threads) {
    check_coefficients(sys, a);
    if (M < 1) throw UsageError("M must be at least 1");
    if (N_max < 1) throw UsageError("N must be at least 1");
    const PrimeField& F = sys.field();
    const u64 p = sys.modulus();
    const std::size_t m = sys.m();
    const std::size_t n = sys.nvars();
    const u64 seeds = seed_count(sys);
    check_budget(seeds, shift + N_max, budget, "V sum");

    // e_M(c n) for every n in the window.
    std::vector<Complex> twist(N_max);
    for (u64 t = 0; t < N_max; ++t) {
        const u64 nn = shift + t;
        twist[t] = e_m_residue(mul_mod_signed(c, static_cast<i64>(nn % M), M), M);
    }

    const Stepper stepper(sys);
    const StateIndexer all(p, n, seeds);
    auto parts = run_chunked<std::vector<KahanComplexSum>>(seeds, threads, [&](u64 begin, u64 end) {
        std::vector<KahanComplexSum> acc(N_max);
        std::vector<u64> x(n), y(n);
        for (u64 idx = begin; idx < end; ++idx) {
            all.decode(idx, x);
            for (u64 t = 0; t < shift; ++t) {
                stepper.step(x, y);
                x.swap(y);
            }
            KahanComplexSum inner;
            for (u64 t = 0; t < N_max; ++t) {
                u64 phase = 0;
                for (std::size_t j = 0; j < m; ++j) phase = F.add(phase, F.mul(a[j], x[j]));
                inner.add(e_m_residue(phase, p) * twist[t]);
                acc[t].add(Complex(std::norm(inner.value()), 0.0));
                stepper.step(x, y);
                x.swap(y);
            }
        }
        return acc;
    });
    std::vector<double> out(N_max);
    for (u64 t = 0; t < N_max; ++t) {
        KahanComplexSum total;
        for (const auto& part : parts) total.add(part[t]);
        out[t] = total.value().real();
    }
    return out;
}

double v_sum(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N, u64 shift, u64 budget,
             unsigned threads) {
    return v_sum_prefixes(sys, a, c, M, N, shift, budget, threads).back();
}

u64 regime_boundary(u64 p, std::size_t m) {
    const std::size_t e = m + 1;
    auto fits = [&](u64 N) {
        u128 r = 1;
        for (std::size_t t = 0; t < e; ++t) {
            r *= N;
            if (r > p) return false;
        }
        return true;
    };
    u64 N = static_cast<u64>(std::floor(std::pow(static_cast<double>(p), 1.0 / static_cast<double>(e))));
    while (N > 0 && !fits(N)) --N;
    while (fits(N + 1)) ++N;
    return N;
}

double v_bound(u64 N, u64 p, std::size_t m) {
    const double pd = static_cast<double>(p);
    const double Nd = static_cast<double>(N);
    const double md = static_cast<double>(m);
    if (N <= regime_boundary(p, m)) return Nd * std::pow(pd, md + 1);
    return Nd * Nd * std::pow(pd, md * (md + 2) / (md + 1));
}

VBoundReport v_bound_check(const TriangularSystem& sys, std::span<const u64> a, i64 c, u64 M, u64 N_max, u64 shift,
                           u64 budget, unsigned threads) {
    const auto values = v_sum_prefixes(sys, a, c, M, N_max, shift, budget, threads);
    VBoundReport report{sys.modulus(), sys.m(), regime_boundary(sys.modulus(), sys.m()), {}, 0.0, false};
    double first_half_max = 0.0;
    for (u64 N = 1; N <= N_max; ++N) {
        const double bound = v_bound(N, sys.modulus(), sys.m());
        const double ratio = values[N - 1] / bound;
        report.rows.push_back({N, values[N - 1], bound, N <= report.boundary ? 1 : 2, ratio});
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (2 * N <= N_max) first_half_max = std::max(first_half_max, ratio);
    }
    if (N_max >= 2) report.growth_flag = report.rows.back().ratio > 2.0 * first_half_max;
    return report;
}

std::string VBoundReport::to_csv(std::span<const u64> a, i64 c, u64 M, u64 shift) const {
    std::ostringstream os;
    std::string avec;
    for (std::size_t j = 0; j < a.size(); ++j) avec += (j ? ";" : "") + std::to_string(a[j]);
    os << "p,m,a,c,M,shift,N,V,bound,branch,ratio\n";
    for (const auto& r : rows) {
        os << p << ',' << m << ',' << avec << ',' << c << ',' << M << ',' << shift << ',' << r.N << ','
           << format_double(r.v) << ',' << format_double(r.bound) << ',' << r.branch << ','
           << format_double(r.ratio) << '\n';
    }
    return os.str();
}

}  // namespace polydyn
