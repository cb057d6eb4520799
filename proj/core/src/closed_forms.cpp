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

#include "detmom/closed_forms.hpp"

#include "detmom/errors.hpp"

namespace detmom
{

namespace
{

constexpr auto F = Convention::f_convention;

void require_nonnegative(int n)
{
    if (n < 0) {
        throw DomainError("n must be >= 0");
    }
}

void require_order(int order)
{
    if (order < 0) {
        throw DomainError("series order must be >= 0");
    }
}

MomentPolynomial raw(int r)
{
    return MomentPolynomial::variable(Basis::raw, r);
}

MomentPolynomial central(int r)
{
    return MomentPolynomial::variable(Basis::central, r);
}

MomentPolynomial one(Basis basis)
{
    return MomentPolynomial::constant(Rational(1), basis);
}

// Series with the given polynomial coefficients for t^0, t^1, ...; the rest zero.
TruncatedEGF polynomial_series(std::vector<MomentPolynomial> low, int order)
{
    const Basis basis = low.front().basis();
    std::vector<MomentPolynomial> coeffs(order + 1, MomentPolynomial(basis));
    for (int i = 0; i < static_cast<int>(low.size()) && i <= order; ++i) {
        coeffs[i] = std::move(low[i]);
    }
    return TruncatedEGF(std::move(coeffs), F);
}

} // namespace

std::map<int, Rational> gaussian_moments(int up_to)
{
    std::map<int, Rational> moments;
    Integer double_factorial = 1;
    for (int r = 1; r <= up_to; ++r) {
        if (r % 2 == 0) {
            double_factorial *= r - 1;
            moments[r] = Rational(double_factorial);
        } else {
            moments[r] = 0;
        }
    }
    return moments;
}

MomentPolynomial f2_explicit(int n)
{
    require_nonnegative(n);
    if (n == 0) {
        return one(Basis::raw);
    }
    const auto m1sq = raw(1).pow(2);
    return Rational(factorial(n)) * (raw(2) + Rational(n - 1) * m1sq) * (raw(2) - m1sq).pow(n - 1);
}

TruncatedEGF F2_series(int order)
{
    require_order(order);
    const auto m1sq = raw(1).pow(2);
    const auto prefactor = polynomial_series({one(Basis::raw), m1sq}, order);
    return prefactor * series_exp(TruncatedEGF::linear(raw(2) - m1sq, order, F));
}

Integer gaussian_fk(int k, int n)
{
    if (k < 2 || k % 2 != 0) {
        throw DomainError("the Gaussian product formula needs an even k >= 2, got " + std::to_string(k));
    }
    require_nonnegative(n);
    Integer product = 1;
    for (int j = 0; j < k / 2; ++j) {
        product *= factorial(n + 2 * j);
        product /= factorial(2 * j);
    }
    return product;
}

TruncatedEGF N6_series(int order, Basis basis)
{
    require_order(order);
    std::vector<Rational> coeffs;
    for (int n = 0; n <= order; ++n) {
        coeffs.emplace_back(Integer((n + 1) * (n + 2)) * factorial(n + 4) / 48);
    }
    return TruncatedEGF::from_rationals(coeffs, basis, F);
}

MomentPolynomial f4_explicit(int n)
{
    require_nonnegative(n);
    const auto m1 = central(1);
    const auto mu2 = central(2);
    const auto mu3 = central(3);
    const auto kappa = central(4) - Rational(3) * mu2.pow(2);

    auto d = [](int w, int c) -> Integer {
        switch (w) {
        case 0:
            return 2 + c;
        case 1:
            return Integer(c) * (2 + c);
        default:
            return Integer(c) * c * c;
        }
    };

    MomentPolynomial sum(Basis::central);
    for (int w = 0; w <= 2; ++w) {
        for (int s = 0; s <= 4 - 2 * w; ++s) {
            for (int c = 0; c <= n - s; ++c) {
                const Integer dw = d(w, c);
                if (dw == 0) {
                    continue; // also the only terms where mu2 would get a negative power
                }
                const Rational coef = Rational(binomial(4 - 2 * w, s) * (1 + c) * dw)
                                      / Rational(factorial(n - c - s) * factorial(2 - w) * factorial(w));
                sum += coef * m1.pow(s + 2 * w) * mu2.pow(2 * c - w) * mu3.pow(s) * kappa.pow(n - c - s);
            }
        }
    }
    const Integer nf = factorial(n);
    return Rational(nf * nf) * sum;
}

TruncatedEGF F4_series(int order)
{
    require_order(order);
    const auto m1 = central(1);
    const auto mu2 = central(2);
    const auto mu2sq = mu2.pow(2);
    const auto c1 = one(Basis::central);

    const auto growth = series_exp(TruncatedEGF::linear(central(4) - Rational(3) * mu2sq, order, F));
    const auto inv = series_log_inv(TruncatedEGF::linear(mu2sq, order, F), LogInvKind::geom);
    const auto cross = polynomial_series({c1, m1 * central(3)}, order);

    const auto no_marks = series_pow(cross, 4);
    const auto two_marks = polynomial_series({MomentPolynomial(Basis::central), Rational(6) * m1.pow(2) * mu2}, order)
                           * series_pow(cross, 2) * inv;
    const auto four_marks =
        polynomial_series({MomentPolynomial(Basis::central), m1.pow(4), Rational(7) * m1.pow(4) * mu2sq,
                           Rational(4) * m1.pow(4) * mu2sq.pow(2)},
                          order)
        * series_pow(inv, 2);

    return growth * series_pow(inv, 3) * (no_marks + two_marks + four_marks);
}

std::string to_string(S4Part part)
{
    switch (part) {
    case S4Part::s0:
        return "S0";
    case S4Part::s2:
        return "S2";
    case S4Part::s4_one_column:
        return "S41";
    case S4Part::s4_two_columns:
        return "S42";
    case S4Part::s4:
        return "S4";
    }
    return {};
}

S4Part parse_s4_part(const std::string& name)
{
    for (auto p : {S4Part::s0, S4Part::s2, S4Part::s4_one_column, S4Part::s4_two_columns, S4Part::s4}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw DomainError("unknown S4 part '" + name + "' (expected S0, S2, S41, S42 or S4)");
}

TruncatedEGF s4_series(S4Part which, int order)
{
    require_order(order);
    const auto m1 = central(1);
    const auto zero = MomentPolynomial(Basis::central);
    const auto c1 = one(Basis::central);

    const auto growth = series_exp(TruncatedEGF::linear(central(4) - Rational(3) * c1, order, F));
    const auto inv = series_log_inv(TruncatedEGF::linear(c1, order, F), LogInvKind::geom);

    switch (which) {
    case S4Part::s0:
        return growth * series_pow(inv, 3);
    case S4Part::s2:
        return polynomial_series({zero, Rational(6) * m1.pow(2)}, order) * growth * series_pow(inv, 4);
    case S4Part::s4_one_column: {
        const auto m14 = m1.pow(4);
        return polynomial_series({zero, m14, Rational(2) * m14}, order) * series_pow(inv, 4) * growth;
    }
    case S4Part::s4_two_columns: {
        const auto m14 = Rational(6) * m1.pow(4);
        return polynomial_series({zero, zero, m14, m14}, order) * series_pow(inv, 5) * growth;
    }
    case S4Part::s4: {
        const auto m14 = m1.pow(4);
        return polynomial_series({zero, m14, Rational(7) * m14, Rational(4) * m14}, order) * series_pow(inv, 5)
               * growth;
    }
    }
    throw DomainError("bad S4 part");
}

MomentPolynomial f6_central_explicit(int n)
{
    require_nonnegative(n);
    const auto m2 = raw(2);
    const auto m3sq = raw(3).pow(2);
    const auto m4 = raw(4);
    const auto q6 = raw(6) - Rational(10) * m3sq - Rational(15) * m4 * m2 + Rational(30) * m2.pow(3);
    const auto q4 = m4 * m2 - Rational(3) * m2.pow(3);

    // i: Gaussian-core columns, j - i: attached 4-columns, c: 3-column cycles
    MomentPolynomial sum(Basis::raw);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= j; ++i) {
            const Integer core = Integer((1 + i) * (2 + i)) * factorial(4 + i);
            for (int c = 0; c <= n - j; ++c) {
                const Rational coef = Rational(core * binomial(10, c) * binomial(14 + j + 2 * i, j - i))
                                      / Rational(Integer(48) * factorial(n - j - c));
                sum += coef * q6.pow(n - j - c) * q4.pow(j - i) * m3sq.pow(c) * m2.pow(3 * i);
            }
        }
    }
    const Integer nf = factorial(n);
    return Rational(nf * nf) * sum;
}

TruncatedEGF F6_central_series(int order)
{
    require_order(order);
    const auto m2 = raw(2);
    const auto m3sq = raw(3).pow(2);
    const auto m4 = raw(4);
    const auto q6 = raw(6) - Rational(10) * m3sq - Rational(15) * m4 * m2 + Rational(30) * m2.pow(3);
    const auto q4 = m4 * m2 - Rational(3) * m2.pow(3);

    const auto three_columns = series_pow(polynomial_series({one(Basis::raw), m3sq}, order), 10);
    const auto growth = series_exp(TruncatedEGF::linear(q6, order, F));
    const auto inv = series_log_inv(TruncatedEGF::linear(q4, order, F), LogInvKind::geom);
    const auto argument = TruncatedEGF::linear(m2.pow(3), order, F) * series_pow(inv, 3);

    return three_columns * growth * series_pow(inv, 15) * series_compose(N6_series(order, Basis::raw), argument);
}

} // namespace detmom
