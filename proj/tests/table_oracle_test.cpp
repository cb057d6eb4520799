// Copyright 2026 The detmom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <atomic>

#include "detmom/closed_forms.hpp"
#include "detmom/errors.hpp"
#include "detmom/table_oracle.hpp"
#include "support/independent_oracles.hpp"

using namespace detmom;

namespace
{

MomentPolynomial m(int r)
{
    return MomentPolynomial::variable(Basis::raw, r);
}

MomentPolynomial mu(int r)
{
    return MomentPolynomial::variable(Basis::central, r);
}

MomentPolynomial plain(int k, int n, Reduction reduce = Reduction::full, unsigned workers = 1)
{
    OracleOptions options;
    options.workers = workers;
    return oracle_fk(k, n, OracleMode::plain, reduce, options);
}

MomentPolynomial marked(int k, int n, Reduction reduce = Reduction::full, unsigned workers = 1)
{
    OracleOptions options;
    options.workers = workers;
    return oracle_fk(k, n, OracleMode::marked, reduce, options);
}

} // namespace

TEST_CASE("permutation sign")
{
    CHECK(permutation_sign(std::vector<int>{1, 2, 3}) == 1);
    CHECK(permutation_sign(std::vector<int>{2, 1, 3}) == -1);
    CHECK(permutation_sign(std::vector<int>{2, 3, 1}) == 1);
    CHECK(permutation_sign(std::vector<int>{0, 2, 1}) == -1);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> p(7);
        std::iota(p.begin(), p.end(), 1);
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(permutation_sign(p) == testing::permutation_parity(p));
    }
}

TEST_CASE("plain table weight and sign")
{
    const PermutationTable t({{1, 6, 3, 9, 5, 2, 7, 8, 4},
                              {3, 2, 1, 9, 4, 6, 7, 5, 8},
                              {4, 6, 1, 9, 3, 2, 7, 5, 8},
                              {2, 3, 1, 5, 4, 6, 7, 8, 9}});
    CHECK(table_weight(t) == m(1).pow(12) * m(2).pow(7) * m(3).pow(2) * m(4));
    CHECK(table_sign(t) == -1);
    CHECK_THROWS(PermutationTable({{1, 1, 2}}));
    CHECK_THROWS(PermutationTable({{1, 2}, {1, 2, 3}}));
}

TEST_CASE("marked table weights")
{
    const auto three = MarkedTable::from_display({{1, 0, 3, 4, 5, 2, 7, 8, 9},
                                                  {3, 2, 1, 9, 4, 6, 7, 5, 8},
                                                  {1, 0, 3, 9, 4, 2, 7, 5, 8},
                                                  {3, 2, 1, 4, 5, 6, 7, 8, 9}});
    CHECK(marked_weight(three) == mu(1).pow(2) * mu(2).pow(15) * mu(4));
    const auto four = MarkedTable::from_display({{0, 2, 3, 4, 5, 6, 7, 8, 9},
                                                 {0, 2, 1, 9, 4, 6, 7, 5, 8},
                                                 {2, 0, 1, 9, 4, 6, 7, 5, 8},
                                                 {2, 0, 3, 4, 5, 6, 7, 8, 9}});
    CHECK(marked_weight(four) == mu(1).pow(4) * mu(2).pow(12) * mu(4).pow(2));
    CHECK(four.row(0).permutation.front() == 1);
    // a lone unmarked value in a column is a central first moment
    const auto trivial = MarkedTable::from_display({{1, 2}, {2, 1}});
    CHECK(marked_weight(trivial).is_zero());
}

TEST_CASE("oracle reproduces the worked examples")
{
    CHECK(plain(2, 2) == 2 * m(2).pow(2) - 2 * m(1).pow(4));
    CHECK(plain(2, 3) == 6 * (m(2) + 2 * m(1).pow(2)) * (m(2) - m(1).pow(2)).pow(2));
    CHECK(plain(2, 3, Reduction::first_row_identity) == plain(2, 3));
    CHECK(plain(4, 2) == 2 * m(4).pow(2) - 8 * m(1).pow(2) * m(3).pow(2) + 6 * m(2).pow(4));
    const auto hat = mu(4).pow(2) + 3 * mu(2).pow(4) + 8 * mu(1) * mu(3) * mu(4) + 12 * mu(1).pow(2) * mu(2) * mu(4)
                     + 12 * mu(1).pow(2) * mu(2).pow(3) + 12 * mu(1).pow(2) * mu(3).pow(2)
                     + 24 * mu(1).pow(3) * mu(2) * mu(3) + 2 * mu(1).pow(4) * mu(4)
                     + 18 * mu(1).pow(4) * mu(2).pow(2);
    CHECK(marked(4, 2, Reduction::first_row_identity) == 2 * hat);
    CHECK(marked(4, 2) == 2 * hat);
}

TEST_CASE("oracle agrees with the symbolic determinant expansion")
{
    for (int n = 0; n <= 4; ++n) {
        CHECK(plain(2, n) == testing::expanded_det_moment(2, n));
    }
    for (int n = 0; n <= 2; ++n) {
        CHECK(plain(3, n) == testing::expanded_det_moment(3, n));
        CHECK(plain(5, n) == testing::expanded_det_moment(5, n));
    }
    CHECK(plain(4, 3, Reduction::first_row_identity) == testing::expanded_det_moment(4, 3));
    CHECK(plain(6, 2) == testing::expanded_det_moment(6, 2));
}

TEST_CASE("oracle agrees with the closed forms")
{
    for (int n = 0; n <= 6; ++n) {
        CHECK(plain(2, n, Reduction::first_row_identity, 0) == f2_explicit(n));
    }
    for (int n = 0; n <= 4; ++n) {
        CHECK(plain(4, n, Reduction::first_row_identity, 0) == central_to_raw(f4_explicit(n)));
    }
    for (int n = 0; n <= 3; ++n) {
        const auto raw = plain(6, n, Reduction::first_row_identity, 0);
        CHECK(specialize(raw, {}, Rational(0)) == f6_central_explicit(n));
    }
}

TEST_CASE("property: full enumeration is n! times the reduced one")
{
    const auto check = [](int k, int n) {
        CHECK(plain(k, n) == plain(k, n, Reduction::first_row_identity));
    };
    for (int n = 0; n <= 5; ++n) {
        check(2, n);
    }
    for (int n = 0; n <= 3; ++n) {
        check(4, n);
    }
    for (int n = 0; n <= 2; ++n) {
        check(6, n);
    }
    CHECK(oracle_cost(4, 3, OracleMode::plain, Reduction::full)
          == 6 * oracle_cost(4, 3, OracleMode::plain, Reduction::first_row_identity));
}

TEST_CASE("property: marked tables expand to plain tables")
{
    for (int n = 0; n <= 4; ++n) {
        CHECK(central_to_raw(marked(2, n, Reduction::first_row_identity)) == plain(2, n));
    }
    for (int n = 0; n <= 3; ++n) {
        CHECK(central_to_raw(marked(4, n, Reduction::first_row_identity)) == plain(4, n, Reduction::first_row_identity));
    }
    CHECK(central_to_raw(marked(6, 2)) == plain(6, 2));
}

TEST_CASE("property: worker count does not change the result")
{
    const auto reference = plain(4, 3, Reduction::first_row_identity, 1);
    for (const unsigned workers : {2u, 3u, 8u}) {
        CHECK(plain(4, 3, Reduction::first_row_identity, workers) == reference);
        CHECK(marked(4, 2, Reduction::full, workers) == marked(4, 2, Reduction::full, 1));
    }
}

TEST_CASE("property: odd k satisfies the sign-flip identity")
{
    const auto flip = [](int r) { return Rational(r % 2 == 0 ? 1 : -1); };
    // swapping two rows negates det(A), so odd moments vanish once n >= 2
    for (int n = 2; n <= 3; ++n) {
        const auto f = plain(3, n);
        const Rational sign = (3 * n) % 2 == 0 ? 1 : -1;
        CHECK(scale_symbols(f, flip) == sign * f);
        CHECK(f.is_zero());
    }
    CHECK(plain(3, 1) == m(3));
    CHECK(scale_symbols(plain(3, 1), flip) == -plain(3, 1));
}

TEST_CASE("property: grade weight of oracle output")
{
    for (int k = 1; k <= 6; ++k) {
        for (int n = 1; n <= 3; ++n) {
            if (oracle_cost(k, n, OracleMode::plain, Reduction::full) > 2'000'000) {
                continue;
            }
            const auto f = plain(k, n);
            if (k % 2 != 0 && n >= 2) {
                CHECK(f.is_zero());
            } else {
                CHECK(grade_weight(f) == std::set<unsigned>{static_cast<unsigned>(k * n)});
            }
        }
    }
}

TEST_CASE("budget and domain errors")
{
    OracleOptions tight;
    tight.budget = 10;
    CHECK_THROWS_AS(oracle_fk(4, 3, OracleMode::plain, Reduction::full, tight), BudgetExceeded);
    try {
        oracle_fk(4, 3, OracleMode::plain, Reduction::full, tight);
    } catch (const BudgetExceeded& e) {
        CHECK(e.budget() == 10);
        CHECK(e.required() == oracle_cost(4, 3, OracleMode::plain, Reduction::full));
    }
    CHECK_THROWS_AS(oracle_fk(3, 2, OracleMode::plain, Reduction::first_row_identity), DomainError);
    CHECK_THROWS_AS(oracle_fk(4, 25, OracleMode::plain, Reduction::first_row_identity), BudgetExceeded);
}

TEST_CASE("progress reports reach the total")
{
    OracleOptions options;
    options.workers = 2;
    std::atomic<std::uint64_t> last_total{0};
    std::atomic<std::uint64_t> max_done{0};
    options.progress = [&](std::uint64_t done, std::uint64_t total) {
        last_total = total;
        if (done > max_done) {
            max_done = done;
        }
    };
    oracle_fk(4, 3, OracleMode::plain, Reduction::first_row_identity, options);
    CHECK(last_total == oracle_cost(4, 3, OracleMode::plain, Reduction::first_row_identity));
    CHECK(max_done == last_total);
}
