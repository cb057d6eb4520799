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

#include "detmom/egf_series.hpp"

#include <algorithm>
#include <sstream>

#include "detmom/errors.hpp"

namespace detmom
{

TruncatedEGF::TruncatedEGF(std::vector<MomentPolynomial> coeffs, Convention convention)
    : coeffs_(std::move(coeffs)), convention_(convention)
{
    if (coeffs_.empty()) {
        throw DomainError("a truncated series needs at least the constant coefficient");
    }
    const Basis b = coeffs_.front().basis();
    for (const auto& c : coeffs_) {
        if (c.basis() != b) {
            throw BasisMismatch("series coefficients must share one basis");
        }
    }
}

TruncatedEGF TruncatedEGF::constant(const MomentPolynomial& c, int order, Convention convention)
{
    if (order < 0) {
        throw DomainError("series order must be >= 0");
    }
    std::vector<MomentPolynomial> coeffs(order + 1, MomentPolynomial(c.basis(), c.max_order()));
    coeffs[0] = c;
    return TruncatedEGF(std::move(coeffs), convention);
}

TruncatedEGF TruncatedEGF::one(Basis basis, int order, Convention convention, int max_order)
{
    return constant(MomentPolynomial::constant(Rational(1), basis, max_order), order, convention);
}

TruncatedEGF TruncatedEGF::linear(const MomentPolynomial& w, int order, Convention convention)
{
    if (order < 0) {
        throw DomainError("series order must be >= 0");
    }
    std::vector<MomentPolynomial> coeffs(order + 1, MomentPolynomial(w.basis(), w.max_order()));
    if (order >= 1) {
        coeffs[1] = w;
    }
    return TruncatedEGF(std::move(coeffs), convention);
}

TruncatedEGF TruncatedEGF::from_rationals(const std::vector<Rational>& coeffs, Basis basis, Convention convention,
                                          int max_order)
{
    std::vector<MomentPolynomial> polys;
    polys.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        polys.push_back(MomentPolynomial::constant(c, basis, max_order));
    }
    return TruncatedEGF(std::move(polys), convention);
}

int TruncatedEGF::max_order() const noexcept
{
    int r = 2;
    for (const auto& c : coeffs_) {
        r = std::max(r, c.max_order());
    }
    return r;
}

const MomentPolynomial& TruncatedEGF::coeff(int n) const
{
    if (n < 0 || n > order()) {
        throw DomainError("coefficient index " + std::to_string(n) + " outside [0, " + std::to_string(order())
                          + "]");
    }
    return coeffs_[n];
}

TruncatedEGF TruncatedEGF::truncated(int order) const
{
    if (order < 0 || order > this->order()) {
        throw DomainError("cannot truncate a series of order " + std::to_string(this->order()) + " to "
                          + std::to_string(order));
    }
    return TruncatedEGF({coeffs_.begin(), coeffs_.begin() + order + 1}, convention_);
}

TruncatedEGF TruncatedEGF::with_convention(Convention convention) const
{
    return TruncatedEGF(coeffs_, convention);
}

bool operator==(const TruncatedEGF& a, const TruncatedEGF& b)
{
    return a.convention_ == b.convention_ && a.coeffs_ == b.coeffs_;
}

namespace
{

void require_compatible(const TruncatedEGF& a, const TruncatedEGF& b)
{
    if (a.basis() != b.basis()) {
        throw BasisMismatch("cannot combine series in " + to_string(a.basis()) + " and " + to_string(b.basis())
                            + " bases");
    }
    if (a.convention() != b.convention()) {
        throw DomainError("cannot combine series with different coefficient conventions");
    }
}

void require_zero_constant(const TruncatedEGF& a, const char* what)
{
    if (!a.coeff(0).is_zero()) {
        throw DomainError(std::string(what) + " requires a series with zero constant term");
    }
}

MomentPolynomial zero_like(const TruncatedEGF& a)
{
    return MomentPolynomial(a.basis(), a.max_order());
}

} // namespace

TruncatedEGF series_arith(const TruncatedEGF& a, const TruncatedEGF& b, SeriesOp op)
{
    require_compatible(a, b);
    const int order = std::min(a.order(), b.order());
    std::vector<MomentPolynomial> out(order + 1, zero_like(a));
    switch (op) {
    case SeriesOp::add:
        for (int n = 0; n <= order; ++n) {
            out[n] = a.coeff(n) + b.coeff(n);
        }
        break;
    case SeriesOp::sub:
        for (int n = 0; n <= order; ++n) {
            out[n] = a.coeff(n) - b.coeff(n);
        }
        break;
    case SeriesOp::mul:
        for (int n = 0; n <= order; ++n) {
            MomentPolynomial c = zero_like(a);
            for (int j = 0; j <= n; ++j) {
                if (a.coeff(j).is_zero() || b.coeff(n - j).is_zero()) {
                    continue;
                }
                c += a.coeff(j) * b.coeff(n - j);
            }
            out[n] = std::move(c);
        }
        break;
    }
    return TruncatedEGF(std::move(out), a.convention());
}

TruncatedEGF operator+(const TruncatedEGF& a, const TruncatedEGF& b)
{
    return series_arith(a, b, SeriesOp::add);
}

TruncatedEGF operator-(const TruncatedEGF& a, const TruncatedEGF& b)
{
    return series_arith(a, b, SeriesOp::sub);
}

TruncatedEGF operator*(const TruncatedEGF& a, const TruncatedEGF& b)
{
    return series_arith(a, b, SeriesOp::mul);
}

TruncatedEGF operator*(const MomentPolynomial& c, const TruncatedEGF& a)
{
    return map_coefficients(a, [&](const MomentPolynomial& p) { return c * p; });
}

TruncatedEGF operator*(const Rational& c, const TruncatedEGF& a)
{
    return map_coefficients(a, [&](const MomentPolynomial& p) { return c * p; });
}

TruncatedEGF series_exp(const TruncatedEGF& a)
{
    require_zero_constant(a, "series_exp");
    const int N = a.order();
    std::vector<MomentPolynomial> b(N + 1, zero_like(a));
    b[0] = MomentPolynomial::constant(Rational(1), a.basis(), a.max_order());
    // b' = a' b  =>  n b_n = sum_{j=1}^{n} j a_j b_{n-j}
    for (int n = 1; n <= N; ++n) {
        MomentPolynomial acc = zero_like(a);
        for (int j = 1; j <= n; ++j) {
            if (a.coeff(j).is_zero() || b[n - j].is_zero()) {
                continue;
            }
            acc += Rational(j) * (a.coeff(j) * b[n - j]);
        }
        b[n] = Rational(1, n) * acc;
    }
    return TruncatedEGF(std::move(b), a.convention());
}

TruncatedEGF series_log_inv(const TruncatedEGF& a, LogInvKind which)
{
    require_zero_constant(a, "series_log_inv");
    const int N = a.order();
    // g = 1/(1-a) satisfies g = 1 + a g
    std::vector<MomentPolynomial> g(N + 1, zero_like(a));
    g[0] = MomentPolynomial::constant(Rational(1), a.basis(), a.max_order());
    for (int n = 1; n <= N; ++n) {
        MomentPolynomial acc = zero_like(a);
        for (int j = 1; j <= n; ++j) {
            if (!a.coeff(j).is_zero() && !g[n - j].is_zero()) {
                acc += a.coeff(j) * g[n - j];
            }
        }
        g[n] = std::move(acc);
    }
    if (which == LogInvKind::geom) {
        return TruncatedEGF(std::move(g), a.convention());
    }
    // L = -ln(1-a) satisfies L' = a' g
    std::vector<MomentPolynomial> L(N + 1, zero_like(a));
    for (int n = 1; n <= N; ++n) {
        MomentPolynomial acc = zero_like(a);
        for (int j = 1; j <= n; ++j) {
            if (!a.coeff(j).is_zero() && !g[n - j].is_zero()) {
                acc += Rational(j) * (a.coeff(j) * g[n - j]);
            }
        }
        L[n] = Rational(1, n) * acc;
    }
    return TruncatedEGF(std::move(L), a.convention());
}

TruncatedEGF series_pow(const TruncatedEGF& a, unsigned exponent)
{
    TruncatedEGF result = TruncatedEGF::one(a.basis(), a.order(), a.convention(), a.max_order());
    TruncatedEGF base = a;
    while (exponent != 0) {
        if (exponent & 1u) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent != 0) {
            base = base * base;
        }
    }
    return result;
}

TruncatedEGF series_compose(const TruncatedEGF& outer, const TruncatedEGF& inner)
{
    require_zero_constant(inner, "series_compose");
    if (outer.basis() != inner.basis()) {
        throw BasisMismatch("composition operands must share a basis");
    }
    const int N = std::min(outer.order(), inner.order());
    const TruncatedEGF t_inner = inner.truncated(N).with_convention(outer.convention());
    // Horner: (((c_N) g + c_{N-1}) g + ...) g + c_0
    TruncatedEGF acc = TruncatedEGF::constant(outer.coeff(N), N, outer.convention());
    for (int i = N - 1; i >= 0; --i) {
        acc = acc * t_inner + TruncatedEGF::constant(outer.coeff(i), N, outer.convention());
    }
    return acc;
}

TruncatedEGF map_coefficients(const TruncatedEGF& a,
                              const std::function<MomentPolynomial(const MomentPolynomial&)>& f)
{
    std::vector<MomentPolynomial> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) {
        out.push_back(f(c));
    }
    return TruncatedEGF(std::move(out), a.convention());
}

MomentPolynomial extract_fk(const TruncatedEGF& F, int n)
{
    if (F.convention() != Convention::f_convention) {
        throw DomainError("extract_fk needs a series in the f_k(n)/n!^2 convention");
    }
    if (n < 0 || n > F.order()) {
        throw DomainError("n = " + std::to_string(n) + " outside the series range [0, " + std::to_string(F.order())
                          + "]");
    }
    const Integer nf = factorial(n);
    return Rational(nf * nf) * F.coeff(n);
}

MomentPolynomial extract_egf(const TruncatedEGF& A, int n)
{
    if (A.convention() != Convention::plain_egf) {
        throw DomainError("extract_egf needs a plain exponential generating function");
    }
    return Rational(factorial(n)) * A.coeff(n);
}

std::string to_text(const TruncatedEGF& s)
{
    std::ostringstream os;
    for (int n = 0; n <= s.order(); ++n) {
        os << n << ": " << to_text(s.coeff(n)) << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const TruncatedEGF& s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (int n = 0; n <= s.order(); ++n) {
        coeffs.push_back({{"n", n}, {"poly", to_json(s.coeff(n))}});
    }
    return {{"order", s.order()},
            {"basis", to_string(s.basis())},
            {"convention", s.convention() == Convention::f_convention ? "f" : "egf"},
            {"coefficients", std::move(coeffs)}};
}

} // namespace detmom
