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

#include "polydyn/iterate.hpp"

#include <sstream>
#include <stdexcept>

#include "polydyn/errors.hpp"
#include "polydyn/format.hpp"

namespace polydyn {

SymbolicIterator::SymbolicIterator(const TriangularSystem& sys, u64 term_budget)
    : sys_(&sys), budget_(term_budget) {
    for (std::size_t i = 0; i < sys.nvars(); ++i) {
        current_.push_back(SparsePoly::variable(sys.field(), sys.nvars(), i));
    }
}

void SymbolicIterator::advance() {
    auto next = compose_all(sys_->f(), current_);
    u64 terms = 0;
    for (const auto& f : next) terms += f.size();
    if (terms > budget_) {
        throw BudgetExceeded("symbolic iterate " + std::to_string(k_ + 1) + " has " + std::to_string(terms) +
                                 " terms, over the budget of " + std::to_string(budget_) +
                                 "; largest completed k = " + std::to_string(k_),
                             k_);
    }
    current_ = std::move(next);
    ++k_;
}

std::vector<SparsePoly> iterate_symbolic(const TriangularSystem& sys, unsigned k, u64 term_budget) {
    SymbolicIterator it(sys, term_budget);
    while (it.k() < k) it.advance();
    return it.current();
}

IterateDecomposition decompose(const SparsePoly& f_ik, std::size_t i, unsigned k) {
    const std::size_t n = f_ik.nvars();
    SparsePoly g(f_ik.field(), n), h(f_ik.field(), n);
    for (const auto& [mono, c] : f_ik.terms()) {
        for (std::size_t j = 0; j < i; ++j) {
            if (mono[j] != 0) {
                throw std::logic_error("iterate f_" + std::to_string(i) + "^(" + std::to_string(k) +
                                       ") involves X_" + std::to_string(j));
            }
        }
        if (mono[i] >= 2) {
            throw std::logic_error("iterate f_" + std::to_string(i) + "^(" + std::to_string(k) +
                                   ") is not linear in X_" + std::to_string(i));
        }
        if (mono[i] == 1) {
            Monomial rest = mono;
            rest.set(i, 0);
            g.add_term(rest, c);
        } else {
            h.add_term(mono, c);
        }
    }
    const bool order = h.is_zero() || (!g.is_zero() && g.total_degree() >= h.total_degree());
    return {i, k, std::move(g), std::move(h), order};
}

IterateDecomposition decompose(const TriangularSystem& sys, std::size_t i, unsigned k, u64 term_budget) {
    if (i > sys.m()) throw UsageError("coordinate index out of range");
    auto fk = iterate_symbolic(sys, k, term_budget);
    return decompose(fk[i], i, k);
}

int polynomial_order(const std::vector<Rational>& values) {
    bool all_zero = true;
    for (const auto& v : values) all_zero = all_zero && v == 0;
    if (all_zero) return -1;
    std::vector<Rational> diff = values;
    const int n = static_cast<int>(values.size());
    for (int d = 0; d + 1 < n; ++d) {
        for (std::size_t t = 0; t + 1 < diff.size(); ++t) diff[t] = diff[t + 1] - diff[t];
        diff.pop_back();
        bool zero = true;
        for (const auto& v : diff) zero = zero && v == 0;
        if (zero) return d;
    }
    return n - 1;
}

namespace {

Rational factorial(std::size_t n) {
    Rational r = 1;
    for (std::size_t t = 2; t <= n; ++t) r *= t;
    return r;
}

}  // namespace

DegreeReport degree_growth_report(const TriangularSystem& sys, unsigned k_max, unsigned k_first,
                                  u64 term_budget) {
    if (k_max < 1) throw UsageError("k_max must be at least 1");
    if (k_first < 1 || k_first > k_max) throw UsageError("k_first must be in [1, k_max]");
    const std::size_t m = sys.m();

    std::vector<Rational> coefficient(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        Rational prod = 1;
        for (std::size_t t = i; t < m; ++t) prod *= sys.s(t, t + 1);
        coefficient[i] = prod / factorial(m - i);
    }

    std::vector<std::vector<std::int64_t>> degrees(m + 1);
    SymbolicIterator it(sys, term_budget);
    for (unsigned k = 1; k <= k_max; ++k) {
        it.advance();
        for (std::size_t i = 0; i <= m; ++i) {
            const auto dec = decompose(it.current()[i], i, k);
            degrees[i].push_back(dec.g_ik.total_degree());
        }
    }

    DegreeReport report{m, k_first, k_max, {}, {}};
    for (std::size_t i = 0; i <= m; ++i) {
        std::vector<Rational> residuals, degs;
        for (unsigned k = 1; k <= k_max; ++k) {
            const std::int64_t deg = degrees[i][k - 1];
            Rational predicted = 0;
            if (i < m) {
                Rational kp = 1;
                for (std::size_t t = 0; t < m - i; ++t) kp *= k;
                predicted = kp * coefficient[i];
            }
            const Rational residual = Rational(deg) - predicted;
            report.rows.push_back({i, k, deg, predicted, residual});
            if (k >= k_first) {
                residuals.push_back(residual);
                degs.push_back(Rational(deg));
            }
        }

        DegreeSummary summary{i, coefficient[i], 0, 0, false, false};
        const std::size_t order = m - i;
        if (degs.size() > order) {
            std::vector<Rational> diff = degs;
            for (std::size_t d = 0; d < order; ++d) {
                for (std::size_t t = 0; t + 1 < diff.size(); ++t) diff[t] = diff[t + 1] - diff[t];
                diff.pop_back();
            }
            summary.fitted_coefficient = diff.back() / factorial(order);
        }
        summary.residual_order = polynomial_order(residuals);
        summary.residual_order_conclusive =
            summary.residual_order + 2 <= static_cast<int>(residuals.size()) || summary.residual_order == -1;
        summary.flagged = summary.residual_order >= static_cast<int>(order);
        report.summaries.push_back(summary);
    }
    return report;
}

std::string DegreeReport::to_csv() const {
    std::ostringstream os;
    os << "i,k,deg_g,predicted_leading,residual\n";
    for (const auto& r : rows) {
        os << r.i << ',' << r.k << ',' << r.deg_g << ',' << format_rational(r.predicted_leading) << ','
           << format_rational(r.residual) << '\n';
    }
    return os.str();
}

}  // namespace polydyn
