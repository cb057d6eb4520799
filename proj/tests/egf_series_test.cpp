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

#include <random>

#include "detmom/errors.hpp"
#include "detmom/egf_series.hpp"
#include "support/independent_oracles.hpp"

using namespace detmom;

namespace
{

constexpr auto kPlain = Convention::plain_egf;

TruncatedEGF rationals(std::vector<Rational> c)
{
    return TruncatedEGF::from_rationals(c, Basis::raw, kPlain);
}

// t as a plain EGF of the given order.
TruncatedEGF atom(int order)
{
    return TruncatedEGF::linear(MomentPolynomial::constant(1), order, kPlain);
}

// Random series with polynomial coefficients and a zero constant term.
TruncatedEGF random_series(std::mt19937_64& rng, int order, bool zero_constant)
{
    std::vector<MomentPolynomial> c;
    for (int n = 0; n <= order; ++n) {
        if (n == 0 && zero_constant) {
            c.emplace_back(Basis::raw, 4);
        } else {
            c.push_back(testing::random_polynomial(rng, Basis::raw, 4, 2, 1));
        }
    }
    return TruncatedEGF(c, kPlain);
}

// sum_j w_j a^j by explicit repeated multiplication.
TruncatedEGF power_sum(const TruncatedEGF& a, const std::vector<Rational>& w)
{
    auto power = TruncatedEGF::one(a.basis(), a.order(), a.convention(), a.max_order());
    auto total = Rational(0) * power;
    for (const auto& wj : w) {
        total = total + wj * power;
        power = power * a;
    }
    return total;
}

} // namespace

TEST_CASE("derangements of four from exp(-t)/(1-t)")
{
    const int order = 8;
    const auto t = atom(order);
    const auto derangements = series_exp(Rational(-1) * t) * series_log_inv(t, LogInvKind::geom);
    for (int n = 0; n <= order; ++n) {
        CHECK(extract_egf(derangements, n) == MomentPolynomial::constant(testing::count_derangements(n)));
    }
    CHECK(extract_egf(derangements, 4) == MomentPolynomial::constant(9));
}

TEST_CASE("species counts: permutations, cycles, set partitions")
{
    const int order = 10;
    const auto t = atom(order);
    const auto seq = series_log_inv(t, LogInvKind::geom);
    const auto cyc = series_log_inv(t, LogInvKind::log_geom);
    const auto partitions = series_exp(series_exp(t) - TruncatedEGF::one(Basis::raw, order, kPlain));
    // Bell numbers via B(n+1) = sum C(n,j) B(j)
    std::vector<Integer> bell{1};
    for (int n = 0; n < order; ++n) {
        Integer next = 0;
        for (int j = 0; j <= n; ++j) {
            next += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)) * bell[j];
        }
        bell.push_back(next);
    }
    for (int n = 1; n <= order; ++n) {
        CHECK(extract_egf(seq, n) == MomentPolynomial::constant(Rational(factorial(n))));
        CHECK(extract_egf(cyc, n) == MomentPolynomial::constant(Rational(factorial(n - 1))));
        CHECK(extract_egf(partitions, n) == MomentPolynomial::constant(Rational(bell[n])));
    }
}

TEST_CASE("SET of CYC equals SEQ to order 12")
{
    std::mt19937_64 rng(3);
    const auto t = atom(12);
    CHECK(series_exp(series_log_inv(t, LogInvKind::log_geom)) == series_log_inv(t, LogInvKind::geom));
    const auto a = random_series(rng, 12, true);
    CHECK(series_exp(series_log_inv(a, LogInvKind::log_geom)) == series_log_inv(a, LogInvKind::geom));
}

TEST_CASE("property: operators agree with naive power sums")
{
    std::mt19937_64 rng(5);
    const int order = 7;
    std::vector<Rational> exp_w, seq_w, log_w;
    for (int j = 0; j <= order; ++j) {
        exp_w.push_back(Rational(1) / Rational(factorial(j)));
        seq_w.push_back(1);
        log_w.push_back(j == 0 ? Rational(0) : Rational(1, j));
    }
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_series(rng, order, true);
        CHECK(series_exp(a) == power_sum(a, exp_w));
        CHECK(series_log_inv(a, LogInvKind::geom) == power_sum(a, seq_w));
        CHECK(series_log_inv(a, LogInvKind::log_geom) == power_sum(a, log_w));
        const auto outer = random_series(rng, order, false);
        auto naive = Rational(0) * outer;
        auto power = TruncatedEGF::one(Basis::raw, order, kPlain, 4);
        for (int j = 0; j <= order; ++j) {
            naive = naive + outer.coeff(j) * power;
            power = power * a;
        }
        CHECK(series_compose(outer, a) == naive);
    }
}

TEST_CASE("property: exp(a + b) = exp(a) exp(b)")
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_series(rng, 8, true);
        const auto b = random_series(rng, 8, true);
        CHECK(series_exp(a + b) == series_exp(a) * series_exp(b));
    }
}

TEST_CASE("property: composition is associative to order 10")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_series(rng, 10, false);
        const auto g = random_series(rng, 10, true);
        const auto h = random_series(rng, 10, true);
        CHECK(series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h)));
    }
}

TEST_CASE("pow by squaring matches repeated products")
{
    std::mt19937_64 rng(29);
    const auto a = random_series(rng, 6, false);
    CHECK(series_pow(a, 5) == a * a * a * a * a);
    CHECK(series_pow(a, 0) == TruncatedEGF::one(Basis::raw, 6, kPlain, 4));
}

TEST_CASE("truncation follows the shorter operand")
{
    const auto a = rationals({1, 2, 3, 4});
    const auto b = rationals({1, 1});
    CHECK((a * b).order() == 1);
    CHECK((a + b).order() == 1);
    CHECK(a.truncated(2).order() == 2);
}

TEST_CASE("contract violations")
{
    const auto a = rationals({1, 1, 1});
    CHECK_THROWS_AS(series_exp(a), DomainError);
    CHECK_THROWS_AS(series_log_inv(a, LogInvKind::geom), DomainError);
    CHECK_THROWS_AS(series_compose(a, a), DomainError);
    CHECK_THROWS_AS(extract_fk(a, 1), DomainError);
    CHECK_THROWS(a.coeff(3));
    const auto f = a.with_convention(Convention::f_convention);
    CHECK_THROWS_AS(extract_egf(f, 1), DomainError);
    CHECK_THROWS(a + f);
    const auto central = TruncatedEGF::from_rationals({1, 1}, Basis::central, kPlain);
    CHECK_THROWS_AS(rationals({1, 1}) + central, BasisMismatch);
}

TEST_CASE("extraction conventions")
{
    const auto a = rationals({1, 1, make_rational(1, 2), make_rational(1, 6)});
    CHECK(extract_egf(a, 3) == MomentPolynomial::constant(1));
    const auto f = a.with_convention(Convention::f_convention);
    CHECK(extract_fk(f, 3) == MomentPolynomial::constant(6));
}

TEST_CASE("text and json output")
{
    const auto a = rationals({1, make_rational(1, 2)});
    CHECK(to_text(a) == "0: 1\n1: 1/2\n");
    const auto j = to_json(a);
    CHECK(j["order"] == 1);
    CHECK(j["coefficients"].size() == 2);
}
