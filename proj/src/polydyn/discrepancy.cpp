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

#include "polydyn/discrepancy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polydyn/errors.hpp"
#include "polydyn/format.hpp"
#include "polydyn/spectral.hpp"
#include "polydyn/state_space.hpp"

namespace polydyn {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::size_t dim, u64 denominator, std::vector<u64> numerators)
    : dim_(dim), denominator_(denominator), numerators_(std::move(numerators)) {
    if (dim_ == 0) throw UsageError("point dimension must be positive");
    if (denominator_ == 0) throw UsageError("denominator must be positive");
    if (numerators_.empty() || numerators_.size() % dim_ != 0) {
        throw UsageError("point set needs N >= 1 complete points");
    }
    for (u64 v : numerators_) {
        if (v >= denominator_) throw UsageError("point coordinates must lie in [0, 1)");
    }
}

PointSet PointSet::from_outputs(std::span<const OutputPoint> points) {
    if (points.empty()) throw UsageError("point set needs N >= 1 points");
    const std::size_t dim = points[0].numerators.size();
    std::vector<u64> nums;
    nums.reserve(points.size() * dim);
    for (const auto& pt : points) {
        if (pt.numerators.size() != dim || pt.denominator != points[0].denominator) {
            throw UsageError("inconsistent output points");
        }
        nums.insert(nums.end(), pt.numerators.begin(), pt.numerators.end());
    }
    return PointSet(dim, points[0].denominator, std::move(nums));
}

PointSet PointSet::prefix(std::size_t count) const {
    if (count == 0 || count > size()) throw UsageError("prefix length out of range");
    return PointSet(dim_, denominator_,
                    std::vector<u64>(numerators_.begin(), numerators_.begin() + static_cast<std::ptrdiff_t>(count * dim_)));
}

namespace {

struct Fraction {
    u64 num;
    u64 den;
};

u64 parse_u64(std::string_view s, std::string_view field) {
    if (s.empty()) throw UsageError("empty number in point field '" + std::string(field) + "'");
    u64 r = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw UsageError("malformed point coordinate '" + std::string(field) + "'");
        }
        const u64 d = static_cast<u64>(c - '0');
        if (r > (~u64{0} - d) / 10) throw UsageError("point coordinate too large: '" + std::string(field) + "'");
        r = r * 10 + d;
    }
    return r;
}

Fraction parse_fraction(std::string_view field) {
    if (auto slash = field.find('/'); slash != std::string_view::npos) {
        return {parse_u64(field.substr(0, slash), field), parse_u64(field.substr(slash + 1), field)};
    }
    auto dot = field.find('.');
    if (dot == std::string_view::npos) return {parse_u64(field, field), 1};
    std::string_view whole = field.substr(0, dot);
    std::string_view frac = field.substr(dot + 1);
    if (frac.size() > 18) throw UsageError("too many decimal digits in '" + std::string(field) + "'");
    u64 den = 1;
    for (std::size_t t = 0; t < frac.size(); ++t) den *= 10;
    const u64 w = whole.empty() ? 0 : parse_u64(whole, field);
    const u64 f = frac.empty() ? 0 : parse_u64(frac, field);
    if (w != 0) throw UsageError("point coordinates must lie in [0, 1): '" + std::string(field) + "'");
    return {f, den};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

PointSet PointSet::parse_csv(std::string_view text, std::optional<u64> denominator) {
    std::vector<std::vector<Fraction>> rows;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::vector<Fraction> row;
        while (true) {
            auto comma = line.find(',');
            std::string_view field = trim(line.substr(0, comma));
            if (!field.empty()) {
                Fraction f = denominator ? Fraction{parse_u64(field, field), *denominator} : parse_fraction(field);
                if (f.den == 0) throw UsageError("zero denominator on line " + std::to_string(line_no));
                if (f.num >= f.den) {
                    throw UsageError("coordinate outside [0, 1) on line " + std::to_string(line_no));
                }
                row.push_back(f);
            }
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (row.empty()) continue;
        if (dim == 0) dim = row.size();
        if (row.size() != dim) {
            throw UsageError("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                             " coordinates, expected " + std::to_string(dim));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw UsageError("no points in input");

    u64 common = 1;
    for (auto& row : rows) {
        for (auto& f : row) {
            const u64 g = std::gcd(f.num, f.den);
            f.num /= g;
            f.den /= g;
            const u64 den = f.den;
            const u128 l = static_cast<u128>(common / std::gcd(common, den)) * den;
            if (l > PrimeField::kMaxModulus) throw UsageError("common denominator of the points exceeds 2^63");
            common = static_cast<u64>(l);
        }
    }
    std::vector<u64> nums;
    nums.reserve(rows.size() * dim);
    for (const auto& row : rows) {
        for (const auto& f : row) nums.push_back(static_cast<u64>(static_cast<u128>(f.num) * (common / f.den)));
    }
    return PointSet(dim, common, std::move(nums));
}

// ---------------------------------------------------------------------------
// Exact discrepancy

namespace {

mp::cpp_int to_cpp_int(i128 x) {
    const bool neg = x < 0;
    u128 ux = neg ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
    mp::cpp_int r = static_cast<u64>(ux >> 64);
    r <<= 64;
    r += static_cast<u64>(ux);
    return neg ? mp::cpp_int(-r) : r;
}

mp::cpp_int to_cpp_int(const mp::int256_t& x) { return mp::cpp_int(x); }

}  // namespace

Rational star_discrepancy_1d(const PointSet& points) {
    if (points.dim() != 1) throw UsageError("star_discrepancy_1d needs one-dimensional points");
    std::vector<u64> x(points.numerators().begin(), points.numerators().end());
    std::sort(x.begin(), x.end());
    const i128 N = static_cast<i128>(x.size());
    const i128 q = points.denominator();
    // Scaled by N q: i/N - x_i -> i q - x_i N and x_i - (i-1)/N -> x_i N - (i-1) q.
    i128 best = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const i128 i = static_cast<i128>(t) + 1;
        const i128 xi = x[t];
        best = std::max(best, i * q - xi * N);
        best = std::max(best, xi * N - (i - 1) * q);
    }
    return Rational(to_cpp_int(best), to_cpp_int(N * q));
}

namespace {

template <typename Int>
Rational grid_sweep(const PointSet& points) {
    const std::size_t s = points.dim();
    const std::size_t N = points.size();
    const u64 q = points.denominator();

    std::vector<std::vector<u64>> grid(s);
    for (std::size_t j = 0; j < s; ++j) {
        auto& g = grid[j];
        for (std::size_t n = 0; n < N; ++n) g.push_back(points.numerator(n, j));
        g.push_back(q);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }

    // Points ordered by their last coordinate, for the final sweep.
    const std::size_t last = s - 1;
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return points.numerator(x, last) < points.numerator(y, last); });

    Int q_pow = 1;
    for (std::size_t j = 0; j < s; ++j) q_pow *= Int(q);
    const Int n_int = Int(static_cast<u64>(N));

    Int best = 0;
    std::vector<std::size_t> corner(s - 1, 0);
    std::vector<u64> open_last, closed_last;
    open_last.reserve(N);
    closed_last.reserve(N);
    for (;;) {
        Int prefix_vol = 1;
        for (std::size_t j = 0; j + 1 < s; ++j) prefix_vol *= Int(grid[j][corner[j]]);

        open_last.clear();
        closed_last.clear();
        for (std::size_t idx : order) {
            bool open = true, closed = true;
            for (std::size_t j = 0; j + 1 < s; ++j) {
                const u64 v = points.numerator(idx, j);
                const u64 b = grid[j][corner[j]];
                open = open && v < b;
                closed = closed && v <= b;
            }
            if (open) open_last.push_back(points.numerator(idx, last));
            if (closed) closed_last.push_back(points.numerator(idx, last));
        }

        std::size_t open_count = 0, closed_count = 0;
        for (u64 b : grid[last]) {
            while (open_count < open_last.size() && open_last[open_count] < b) ++open_count;
            while (closed_count < closed_last.size() && closed_last[closed_count] <= b) ++closed_count;
            const Int vol = prefix_vol * Int(b) * n_int;  // volume scaled by N q^s
            const Int below = Int(static_cast<u64>(open_count)) * q_pow;
            const Int upto = Int(static_cast<u64>(closed_count)) * q_pow;
            if (vol - below > best) best = vol - below;
            if (upto - vol > best) best = upto - vol;
        }

        std::size_t j = 0;
        while (j + 1 < s) {
            if (++corner[j] < grid[j].size()) break;
            corner[j] = 0;
            ++j;
        }
        if (j + 1 >= s) break;
    }
    return Rational(to_cpp_int(best), to_cpp_int(n_int * q_pow));
}

}  // namespace

Rational discrepancy_grid_exact(const PointSet& points, std::size_t max_points) {
    if (points.dim() > kGridMaxDim) {
        throw BudgetExceeded("grid-exact discrepancy supports dimension <= " + std::to_string(kGridMaxDim));
    }
    if (points.size() > max_points) {
        throw BudgetExceeded("grid-exact discrepancy supports at most " + std::to_string(max_points) + " points");
    }
    // N q^s bounds every scaled quantity.
    long double magnitude = static_cast<long double>(points.size());
    for (std::size_t j = 0; j < points.dim(); ++j) magnitude *= static_cast<long double>(points.denominator());
    if (magnitude < 0x1p120L) return grid_sweep<i128>(points);
    return grid_sweep<mp::int256_t>(points);
}

// ---------------------------------------------------------------------------
// Erdos-Turan-Koksma

u64 r_weight(std::span<const i64> a) {
    u64 r = 1;
    for (i64 v : a) r *= static_cast<u64>(std::max<i64>(v < 0 ? -v : v, 1));
    return r;
}

EtkBound etk_bound(const PointSet& points, unsigned L) {
    if (L <= 1) throw UsageError("ETK bound needs L > 1");
    const std::size_t s = points.dim();
    const std::size_t N = points.size();
    const u64 q = points.denominator();
    const double count = std::pow(2.0 * L + 1.0, static_cast<double>(s)) * static_cast<double>(N);
    if (count > 1e10) throw BudgetExceeded("ETK bound would evaluate more than 1e10 character values");

    std::vector<i64> a(s, -static_cast<i64>(L));
    double total = 0.0;
    for (;;) {
        const bool zero = std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; });
        if (!zero) {
            KahanComplexSum sum;
            for (std::size_t n = 0; n < N; ++n) {
                i128 z = 0;
                for (std::size_t j = 0; j < s; ++j) z += static_cast<i128>(a[j]) * points.numerator(n, j);
                z %= static_cast<i128>(q);
                if (z < 0) z += q;
                sum.add(e_m_residue(static_cast<u64>(z), q));
            }
            total += std::abs(sum.value()) / static_cast<double>(r_weight(a));
        }
        std::size_t j = 0;
        while (j < s) {
            if (++a[j] <= static_cast<i64>(L)) break;
            a[j] = -static_cast<i64>(L);
            ++j;
        }
        if (j == s) break;
    }
    return {L, 1.0 / L, total / static_cast<double>(N)};
}

DiscrepancyMethod parse_discrepancy_method(std::string_view name) {
    if (name == "1d") return DiscrepancyMethod::exact_1d;
    if (name == "grid") return DiscrepancyMethod::grid_exact;
    if (name == "etk") return DiscrepancyMethod::etk;
    throw UsageError("unknown discrepancy method '" + std::string(name) + "' (expected 1d, grid or etk)");
}

// ---------------------------------------------------------------------------
// Average over seeds

double average_bound_B(u64 N, u64 p, std::size_t m) {
    const double logN = std::log(static_cast<double>(N));
    const double logp = std::log(static_cast<double>(p));
    const double md = static_cast<double>(m);
    const double common = std::pow(logN, md + 1) * logp;
    if (N <= regime_boundary(p, m)) return common / std::sqrt(static_cast<double>(N));
    return std::pow(static_cast<double>(p), -1.0 / (2.0 * (md + 1))) * common;
}

AverageDiscrepancyResult average_discrepancy_experiment(const TriangularSystem& sys, std::span<const u64> N_values,
                                                        std::span<const double> thresholds, u64 seed_budget,
                                                        unsigned threads) {
    if (N_values.empty()) throw UsageError("need at least one N");
    const u64 p = sys.modulus();
    const std::size_t m = sys.m();
    const auto seeds = checked_power(p, sys.nvars());
    if (!seeds || *seeds > seed_budget) {
        throw BudgetExceeded("p^{m+1} seeds exceed the budget of " + std::to_string(seed_budget));
    }
    u64 N_max = 0;
    for (u64 N : N_values) {
        if (N < 1) throw UsageError("N must be at least 1");
        if (m > 1 && N > kGridMaxPoints) {
            throw BudgetExceeded("grid-exact discrepancy supports at most " + std::to_string(kGridMaxPoints) +
                                 " points");
        }
        N_max = std::max(N_max, N);
    }

    const StateIndexer all(p, sys.nvars(), *seeds);
    using PerSeed = std::vector<std::vector<Rational>>;  // [seed - begin][N index]
    auto parts = run_chunked<PerSeed>(*seeds, threads, [&](u64 begin, u64 end) {
        PerSeed out;
        std::vector<u64> seed(sys.nvars());
        for (u64 idx = begin; idx < end; ++idx) {
            all.decode(idx, seed);
            Generator gen(sys, seed);
            const PointSet pts = PointSet::from_outputs(gen.emit(N_max));
            std::vector<Rational> values;
            for (u64 N : N_values) {
                const PointSet prefix = pts.prefix(N);
                values.push_back(m == 1 ? star_discrepancy_1d(prefix) : discrepancy_grid_exact(prefix));
            }
            out.push_back(std::move(values));
        }
        return out;
    });

    AverageDiscrepancyResult result{p, m, *seeds, regime_boundary(p, m), {}, true};
    for (std::size_t t = 0; t < N_values.size(); ++t) {
        AverageDiscrepancyRow row;
        row.N = N_values[t];
        row.regime = row.N <= result.boundary ? 1 : 2;
        row.B = average_bound_B(row.N, p, m);
        Rational sum = 0;
        bool first = true;
        for (const auto& part : parts) {
            for (const auto& values : part) {
                const Rational& d = values[t];
                sum += d;
                ++row.distribution[d];
                if (first || d < row.min) row.min = d;
                if (first || d > row.max) row.max = d;
                first = false;
            }
        }
        row.mean = sum / *seeds;
        for (double th : thresholds) {
            u64 exceed = 0;
            for (const auto& [d, count] : row.distribution) {
                if (d.convert_to<double>() > th * row.B) exceed += count;
            }
            row.exceedance.emplace_back(th, static_cast<double>(exceed) / static_cast<double>(*seeds));
        }
        if (!result.rows.empty() && !(row.mean < result.rows.back().mean)) result.mean_decreasing = false;
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string AverageDiscrepancyResult::summary_csv() const {
    std::ostringstream os;
    os << "N,regime,B,mean,min,max,t,exceed_fraction\n";
    for (const auto& r : rows) {
        for (const auto& [t, frac] : r.exceedance) {
            os << r.N << ',' << r.regime << ',' << format_double(r.B) << ','
               << format_double(r.mean.convert_to<double>()) << ',' << format_double(r.min.convert_to<double>())
               << ',' << format_double(r.max.convert_to<double>()) << ',' << format_double(t) << ','
               << format_double(frac) << '\n';
        }
    }
    return os.str();
}

std::string AverageDiscrepancyResult::distribution_csv() const {
    std::ostringstream os;
    os << "N,discrepancy,seeds\n";
    for (const auto& r : rows) {
        for (const auto& [d, count] : r.distribution) {
            os << r.N << ',' << format_double(d.convert_to<double>()) << ',' << count << '\n';
        }
    }
    return os.str();
}

}  // namespace polydyn
