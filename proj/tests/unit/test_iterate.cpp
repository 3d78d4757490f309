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

#include <doctest.h>

#include "polydyn/errors.hpp"
#include "polydyn/iterate.hpp"
#include "test_support.hpp"

using namespace polydyn;
using namespace polydyn::testing;

TEST_CASE("iterate: base case and small hand examples") {
    const auto sys = chain_p5();
    const PrimeField F5(5);
    const auto f0 = iterate_symbolic(sys, 0);
    CHECK(f0[0] == SparsePoly::variable(F5, 2, 0));
    CHECK(f0[1] == SparsePoly::variable(F5, 2, 1));

    const auto f2 = iterate_symbolic(sys, 2);
    CHECK(f2[1] == SparsePoly::parse("X1 + 2", F5, 2));
    const SparsePoly first = SparsePoly::parse("X0*X1^2 - 2*X0 + 1", F5, 2);
    const SparsePoly shifted = SparsePoly::parse("X1 + 1", F5, 2).pow(2) - SparsePoly::constant(F5, 2, 2);
    CHECK(f2[0] == first * shifted + SparsePoly::constant(F5, 2, 1));
}

TEST_CASE("iterate: decompose examples") {
    const auto sys = chain_p5();
    for (unsigned k = 0; k <= 6; ++k) {
        const auto d = decompose(sys, 1, k);
        CHECK(d.g_ik == SparsePoly::constant(sys.field(), 2, 1));
        CHECK(d.h_ik == SparsePoly::constant(sys.field(), 2, k % 5));
    }
    CHECK(decompose(sys, 0, 3).g_ik.total_degree() == 6);
    const auto d1 = decompose(sys, 0, 1);
    CHECK(d1.g_ik == sys.g()[0]);
    CHECK(d1.h_ik == sys.h()[0]);
    CHECK(d1.degree_order_holds);

    const PrimeField F5(5);
    CHECK_THROWS_AS(decompose(SparsePoly::parse("X0^2*X1", F5, 2), 0, 1), std::logic_error);
    CHECK_THROWS_AS(decompose(SparsePoly::parse("X0*X1", F5, 2), 1, 1), std::logic_error);
}

TEST_CASE("iterate: degree report for the chain family") {
    const auto r1 = degree_growth_report(chain(5, 1), 10);
    for (const auto& row : r1.rows) {
        if (row.i == 0) {
            CHECK(row.deg_g == 2 * static_cast<std::int64_t>(row.k));
            CHECK(row.residual == 0);
        } else {
            CHECK(row.deg_g == 0);
        }
    }
    CHECK(r1.summaries.at(0).residual_order == -1);
    CHECK_FALSE(r1.summaries.at(0).flagged);

    const auto r2 = degree_growth_report(chain(5, 2), 8, 2);
    for (const auto& row : r2.rows) {
        if (row.i == 0) CHECK(row.predicted_leading == Rational(2 * row.k * row.k));
        if (row.i == 2) CHECK(row.deg_g == 0);
    }
    CHECK(r2.summaries.at(0).predicted_coefficient == 2);
    CHECK(r2.summaries.at(0).residual_order <= 1);
    CHECK_FALSE(r2.summaries.at(0).flagged);
    CHECK(r2.to_csv().rfind("i,k,deg_g,predicted_leading,residual\n", 0) == 0);
}

TEST_CASE("iterate: polynomial_order") {
    CHECK(polynomial_order({0, 0, 0}) == -1);
    CHECK(polynomial_order({3, 3, 3, 3}) == 0);
    CHECK(polynomial_order({1, 3, 5, 7}) == 1);
    CHECK(polynomial_order({0, 1, 4, 9, 16}) == 2);
    CHECK(polynomial_order({1, 2}) == 1);
}

TEST_CASE("iterate: term budget") {
    const auto sys = full_product(7, 3);
    try {
        (void)iterate_symbolic(sys, 50, 2000);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.completed() < 50);
    }
    SymbolicIterator it(sys, 2000);
    bool thrown = false;
    while (!thrown) {
        const unsigned before = it.k();
        const auto snapshot = it.current();
        try {
            it.advance();
        } catch (const BudgetExceeded& e) {
            thrown = true;
            CHECK(e.completed() == before);
            CHECK(it.k() == before);
            CHECK(it.current() == snapshot);
        }
    }
}

TEST_CASE("iterate property: symbolic semigroup on random systems") {
    Rng rng(1234);
    for (int t = 0; t < 10; ++t) {
        const auto sys = random_valid_system(rng, std::vector<u64>{3, 5, 7}[uniform(rng, 0, 2)], uniform(rng, 1, 2));
        const unsigned k = static_cast<unsigned>(uniform(rng, 0, 3));
        const unsigned l = static_cast<unsigned>(uniform(rng, 0, 6 - k));
        const auto fk = iterate_symbolic(sys, k);
        const auto fl = iterate_symbolic(sys, l);
        CHECK(compose_all(fk, fl) == iterate_symbolic(sys, k + l));
    }
}

TEST_CASE("iterate property: decomposition reconstructs and orders degrees") {
    Rng rng(77);
    for (int t = 0; t < 10; ++t) {
        const auto sys = random_valid_system(rng, std::vector<u64>{3, 5, 7}[uniform(rng, 0, 2)], uniform(rng, 1, 2));
        SymbolicIterator it(sys);
        for (unsigned k = 1; k <= 5; ++k) {
            it.advance();
            for (std::size_t i = 0; i <= sys.m(); ++i) {
                const auto d = decompose(it.current()[i], i, k);
                const SparsePoly xi = SparsePoly::variable(sys.field(), sys.nvars(), i);
                CHECK((it.current()[i] - (xi * d.g_ik + d.h_ik)).is_zero());
                for (std::size_t j = 0; j <= i; ++j) {
                    CHECK_FALSE(d.g_ik.uses_variable(j));
                    CHECK_FALSE(d.h_ik.uses_variable(j));
                }
            }
        }
    }
}

TEST_CASE("iterate property: g_ik is a product of shifted copies of g_i") {
    Rng rng(8);
    const auto sys = chain(101, 2);
    const auto& F = sys.field();
    std::vector<std::vector<SparsePoly>> iterates;
    SymbolicIterator it(sys);
    iterates.push_back(it.current());
    for (unsigned k = 1; k <= 4; ++k) {
        it.advance();
        iterates.push_back(it.current());
    }
    for (std::size_t i = 0; i < sys.m(); ++i) {
        for (unsigned k = 1; k <= 4; ++k) {
            const auto d = decompose(iterates[k][i], i, k);
            for (int t = 0; t < 100; ++t) {
                std::vector<u64> x(sys.nvars());
                for (auto& v : x) v = uniform(rng, 0, 100);
                u64 prod = 1;
                for (unsigned j = 0; j < k; ++j) {
                    std::vector<u64> y(sys.nvars());
                    for (std::size_t c = 0; c < sys.nvars(); ++c) y[c] = iterates[j][c].evaluate(x);
                    prod = F.mul(prod, sys.g()[i].evaluate(y));
                }
                CHECK(d.g_ik.evaluate(x) == prod);
            }
        }
    }
}

TEST_CASE("iterate property: deg g_ik nondecreasing in k") {
    for (const auto& sys : {chain(7, 1), chain(7, 2), full_product(7, 2)}) {
        const auto r = degree_growth_report(sys, 5);
        for (std::size_t t = 1; t < r.rows.size(); ++t) {
            if (r.rows[t].i == r.rows[t - 1].i) CHECK(r.rows[t].deg_g >= r.rows[t - 1].deg_g);
        }
    }
}
