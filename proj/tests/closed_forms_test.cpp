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

#include "detmom/closed_forms.hpp"
#include "detmom/errors.hpp"
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

MomentPolynomial zero_mean(const MomentPolynomial& p)
{
    return specialize(p, {}, Rational(0));
}

// Standard-normal value of a raw or central polynomial.
Rational at_gaussian(const MomentPolynomial& p)
{
    return evaluate(p, gaussian_moments(p.max_order()), 0);
}

// Product formula for Gaussian entries, computed from its definition.
Rational gaussian_product(int k, int n)
{
    Rational out = 1;
    for (int j = 0; j < k / 2; ++j) {
        out *= Rational(factorial(n + 2 * j)) / Rational(factorial(2 * j));
    }
    return out;
}

// f4 at m1 = 0 from the classical single sum.
MomentPolynomial nrr_sum(int n)
{
    const auto q = m(4) - 3 * m(2).pow(2);
    MomentPolynomial total(Basis::raw);
    for (int j = 0; j <= n; ++j) {
        total += Rational(binomial(n - j + 2, 2)) / Rational(factorial(j)) * q.pow(j) * m(2).pow(2 * (n - j));
    }
    return Rational(factorial(n) * factorial(n)) * total;
}

} // namespace

TEST_CASE("gaussian moments")
{
    const auto g = gaussian_moments(8);
    CHECK(g.at(1) == 0);
    CHECK(g.at(2) == 1);
    CHECK(g.at(3) == 0);
    CHECK(g.at(4) == 3);
    CHECK(g.at(6) == 15);
    CHECK(g.at(8) == 105);
}

TEST_CASE("f2 agrees with the symbolic determinant expansion")
{
    for (int n = 0; n <= 4; ++n) {
        CHECK(f2_explicit(n) == testing::expanded_det_moment(2, n));
    }
}

TEST_CASE("f2 agrees with its factored form")
{
    for (int n = 1; n <= 10; ++n) {
        const auto expected = Rational(factorial(n)) * (m(2) - m(1).pow(2)).pow(n - 1)
                              * (m(2) + (n - 1) * m(1).pow(2));
        CHECK(f2_explicit(n) == expected);
    }
    CHECK(f2_explicit(3) == 6 * (m(2) + 2 * m(1).pow(2)) * (m(2) - m(1).pow(2)).pow(2));
}

TEST_CASE("f4 agrees with the symbolic determinant expansion")
{
    CHECK(f4_explicit(0) == MomentPolynomial::constant(1, Basis::central));
    for (int n = 1; n <= 3; ++n) {
        CHECK(central_to_raw(f4_explicit(n)) == testing::expanded_det_moment(4, n));
    }
    CHECK(f4_explicit(1) == mu(4) + 4 * mu(1) * mu(3) + 6 * mu(1).pow(2) * mu(2) + mu(1).pow(4));
}

TEST_CASE("f4 at zero mean equals the classical single sum")
{
    for (int n = 0; n <= 10; ++n) {
        CHECK(relabel_basis(zero_mean(f4_explicit(n)), Basis::raw) == nrr_sum(n));
    }
}

TEST_CASE("property: f4 scales homogeneously")
{
    for (const auto& c : {Rational(2), make_rational(-3, 5), make_rational(7, 2)}) {
        for (int n = 0; n <= 6; ++n) {
            const auto scaled = scale_symbols(f4_explicit(n), [&](int r) { return pow(c, r); });
            CHECK(scaled == pow(c, 4 * n) * f4_explicit(n));
        }
    }
}

TEST_CASE("f6 agrees with the symbolic determinant expansion at zero mean")
{
    CHECK(f6_central_explicit(1) == m(6));
    CHECK(f6_central_explicit(2) == 2 * m(6).pow(2) + 30 * m(2).pow(2) * m(4).pow(2) - 20 * m(3).pow(4));
    for (int n = 0; n <= 3; ++n) {
        CHECK(f6_central_explicit(n) == zero_mean(testing::expanded_det_moment(6, n)));
    }
}

TEST_CASE("f6 at unit variance equals the unit-variance triple sum")
{
    const auto q6 = m(6) - 10 * m(3).pow(2) - 15 * m(4) + MomentPolynomial::constant(30);
    const auto q4 = m(4) - MomentPolynomial::constant(3);
    const auto q3 = m(3).pow(2);
    for (int n = 0; n <= 6; ++n) {
        MomentPolynomial sum(Basis::raw);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) {
                for (int c = 0; c <= n - j; ++c) {
                    const Rational w = Rational((1 + i) * (2 + i)) * Rational(factorial(4 + i))
                                       / (48 * Rational(factorial(n - j - c))) * Rational(binomial(10, c))
                                       * Rational(binomial(14 + j + 2 * i, j - i));
                    sum += w * q6.pow(n - j - c) * q4.pow(j - i) * q3.pow(c);
                }
            }
        }
        sum = Rational(factorial(n) * factorial(n)) * sum;
        CHECK(specialize(f6_central_explicit(n), {{2, Rational(1)}}) == sum);
    }
}

TEST_CASE("gaussian reductions of every closed form")
{
    for (int n = 0; n <= 10; ++n) {
        CHECK(at_gaussian(f2_explicit(n)) == gaussian_product(2, n));
        CHECK(at_gaussian(f4_explicit(n)) == gaussian_product(4, n));
        CHECK(at_gaussian(f6_central_explicit(n)) == gaussian_product(6, n));
        for (const int k : {2, 4, 6, 8}) {
            CHECK(Rational(gaussian_fk(k, n)) == gaussian_product(k, n));
        }
    }
    CHECK(gaussian_fk(6, 3) == 75600);
    CHECK(gaussian_fk(4, 2) == 24);
    CHECK_THROWS_AS(gaussian_fk(3, 2), DomainError);
}

TEST_CASE("property: grade weight and sign symmetry of closed forms")
{
    const auto flip = [](int r) { return Rational(r % 2 == 0 ? 1 : -1); };
    for (int n = 1; n <= 8; ++n) {
        CHECK(grade_weight(f2_explicit(n)) == std::set<unsigned>{static_cast<unsigned>(2 * n)});
        CHECK(grade_weight(f4_explicit(n)) == std::set<unsigned>{static_cast<unsigned>(4 * n)});
        CHECK(grade_weight(f6_central_explicit(n)) == std::set<unsigned>{static_cast<unsigned>(6 * n)});
        CHECK(scale_symbols(f2_explicit(n), flip) == f2_explicit(n));
        CHECK(scale_symbols(f4_explicit(n), flip) == f4_explicit(n));
        CHECK(scale_symbols(f6_central_explicit(n), flip) == f6_central_explicit(n));
    }
}

TEST_CASE("series coefficients match the explicit sums")
{
    const auto F2 = F2_series(10);
    const auto F4 = F4_series(10);
    const auto F6 = F6_central_series(10);
    for (int n = 0; n <= 10; ++n) {
        CHECK(extract_fk(F2, n) == f2_explicit(n));
        CHECK(extract_fk(F4, n) == f4_explicit(n));
        CHECK(extract_fk(F6, n) == f6_central_explicit(n));
    }
}

TEST_CASE("F2 has its closed form")
{
    const int order = 10;
    const auto one = TruncatedEGF::one(Basis::raw, order, Convention::f_convention);
    const auto t = TruncatedEGF::linear(MomentPolynomial::constant(1), order, Convention::f_convention);
    const auto expected = (one + m(1).pow(2) * t) * series_exp((m(2) - m(1).pow(2)) * t);
    CHECK(F2_series(order) == expected);
}

TEST_CASE("F4 at zero mean is the classical generating function")
{
    const int order = 10;
    const auto t = TruncatedEGF::linear(MomentPolynomial::constant(1, Basis::central), order, Convention::f_convention);
    const auto expected = series_exp((mu(4) - 3 * mu(2).pow(2)) * t)
                          * series_pow(series_log_inv(mu(2).pow(2) * t, LogInvKind::geom), 3);
    const auto got = map_coefficients(F4_series(order), zero_mean);
    CHECK(got == expected);
}

TEST_CASE("N6 coefficients and the gaussian specialization of F6")
{
    const auto N6 = N6_series(8);
    for (int n = 0; n <= 8; ++n) {
        const Rational expected = Rational((n + 1) * (n + 2)) * Rational(factorial(n + 4)) / 48;
        CHECK(N6.coeff(n) == MomentPolynomial::constant(expected));
    }
    const auto gaussian = map_coefficients(F6_central_series(8), [](const MomentPolynomial& p) {
        return specialize(p, gaussian_moments(p.max_order()), Rational(0));
    });
    CHECK(gaussian == N6.with_convention(Convention::f_convention));
}

TEST_CASE("S-series assemble F4 at unit variance")
{
    const int order = 10;
    const auto S0 = s4_series(S4Part::s0, order);
    const auto S2 = s4_series(S4Part::s2, order);
    const auto S4 = s4_series(S4Part::s4, order);
    CHECK(S4 == s4_series(S4Part::s4_one_column, order) + s4_series(S4Part::s4_two_columns, order));
    const auto one = TruncatedEGF::one(Basis::central, order, S0.convention());
    const auto lin = one + TruncatedEGF::linear(mu(1) * mu(3), order, S0.convention());
    const auto assembled = series_pow(lin, 4) * S0 + series_pow(lin, 2) * S2 + S4;
    const auto unit = map_coefficients(F4_series(order), [](const MomentPolynomial& p) {
        return specialize(p, {{2, Rational(1)}});
    });
    CHECK(assembled == unit);
    CHECK(to_string(S4Part::s4_two_columns) == "S42");
    CHECK(parse_s4_part("S41") == S4Part::s4_one_column);
}

TEST_CASE("n = 0 is the empty determinant")
{
    CHECK(f2_explicit(0) == MomentPolynomial::constant(1));
    CHECK(f6_central_explicit(0) == MomentPolynomial::constant(1));
    CHECK(gaussian_fk(4, 0) == 1);
}
