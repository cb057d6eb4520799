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

#ifndef DETMOM_EGF_SERIES_HPP
#define DETMOM_EGF_SERIES_HPP

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "detmom/moment_polynomial.hpp"

namespace detmom
{

// How the coefficient of t^n is read off:
//   plain_egf:    coeff[n] = a_n / n!
//   f_convention: coeff[n] = f_k(n) / n!^2
// The stored coefficients are the same ordinary power-series coefficients in
// both cases; the tag only governs extraction.
enum class Convention { plain_egf, f_convention };

inline constexpr int kDefaultSeriesOrder = 16;

// Power series in t truncated after t^order, with polynomial coefficients in
// a single moment basis.
class TruncatedEGF
{
public:
    TruncatedEGF(std::vector<MomentPolynomial> coeffs, Convention convention);

    static TruncatedEGF constant(const MomentPolynomial& c, int order, Convention convention);
    static TruncatedEGF one(Basis basis, int order, Convention convention, int max_order = kDefaultMaxOrder);
    // w * t
    static TruncatedEGF linear(const MomentPolynomial& w, int order, Convention convention);
    // Coefficients given as rationals, e.g. {1, 1, 1/2, ...}.
    static TruncatedEGF from_rationals(const std::vector<Rational>& coeffs, Basis basis, Convention convention,
                                       int max_order = kDefaultMaxOrder);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Basis basis() const noexcept { return coeffs_.front().basis(); }
    int max_order() const noexcept;
    Convention convention() const noexcept { return convention_; }
    const MomentPolynomial& coeff(int n) const;
    const std::vector<MomentPolynomial>& coeffs() const noexcept { return coeffs_; }

    TruncatedEGF truncated(int order) const;
    TruncatedEGF with_convention(Convention convention) const;

    friend bool operator==(const TruncatedEGF& a, const TruncatedEGF& b);

private:
    std::vector<MomentPolynomial> coeffs_;
    Convention convention_;
};

enum class SeriesOp { add, sub, mul };
enum class LogInvKind { geom, log_geom };

// Result is truncated to min(order(a), order(b)).
TruncatedEGF series_arith(const TruncatedEGF& a, const TruncatedEGF& b, SeriesOp op);
TruncatedEGF operator+(const TruncatedEGF& a, const TruncatedEGF& b);
TruncatedEGF operator-(const TruncatedEGF& a, const TruncatedEGF& b);
TruncatedEGF operator*(const TruncatedEGF& a, const TruncatedEGF& b);
TruncatedEGF operator*(const MomentPolynomial& c, const TruncatedEGF& a);
TruncatedEGF operator*(const Rational& c, const TruncatedEGF& a);

// SET: exp(a). Requires a zero constant term.
TruncatedEGF series_exp(const TruncatedEGF& a);
// SEQ: 1/(1-a) = sum a^j;  CYC: ln(1/(1-a)) = sum a^j/j.
// Requires a zero constant term.
TruncatedEGF series_log_inv(const TruncatedEGF& a, LogInvKind which);
// a^e by repeated squaring; no constant-term restriction.
TruncatedEGF series_pow(const TruncatedEGF& a, unsigned exponent);
// outer(inner(t)). Requires inner to have a zero constant term; the result
// carries outer's convention and min(order) truncation.
TruncatedEGF series_compose(const TruncatedEGF& outer, const TruncatedEGF& inner);

// Applies f to every coefficient (e.g. specialize, basis conversion).
TruncatedEGF map_coefficients(const TruncatedEGF& a,
                              const std::function<MomentPolynomial(const MomentPolynomial&)>& f);

// n!^2 * coeff[n] for an f_convention series.
MomentPolynomial extract_fk(const TruncatedEGF& F, int n);
// n! * coeff[n] for a plain EGF (the total weight a_n of size-n objects).
MomentPolynomial extract_egf(const TruncatedEGF& A, int n);

std::string to_text(const TruncatedEGF& s);
nlohmann::json to_json(const TruncatedEGF& s);

} // namespace detmom

#endif
