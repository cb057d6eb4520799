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

#ifndef DETMOM_CLOSED_FORMS_HPP
#define DETMOM_CLOSED_FORMS_HPP

#include <map>
#include <string>

#include "detmom/egf_series.hpp"
#include "detmom/moment_polynomial.hpp"

namespace detmom
{

// Explicit formulas for f_k(n) = E[det(A)^k] and their generating functions
// F_k(t) = sum_n f_k(n) t^n / n!^2. Every f_k(0) is 1.

// Raw moments of N(0,1): m_r = (r-1)!! for even r, 0 for odd r; keys 1..up_to.
std::map<int, Rational> gaussian_moments(int up_to);

// n! (m2 + (n-1) m1^2) (m2 - m1^2)^(n-1), raw basis.
MomentPolynomial f2_explicit(int n);
// (1 + m1^2 t) exp((m2 - m1^2) t)
TruncatedEGF F2_series(int order = kDefaultSeriesOrder);

// prod_{j < k/2} (n+2j)! / (2j)! for even k >= 2.
Integer gaussian_fk(int k, int n);
// (1/48) sum (n+1)(n+2)(n+4)! t^n, the F_6 of standard Gaussian entries.
TruncatedEGF N6_series(int order = kDefaultSeriesOrder, Basis basis = Basis::raw);

// Triple sum over (w, s, c) in m1, mu2, mu3, mu4; central basis.
MomentPolynomial f4_explicit(int n);
// exp(t(mu4 - 3 mu2^2)) / (1 - mu2^2 t)^3 times
//   (1 + m1 mu3 t)^4 + 6 m1^2 mu2 t (1 + m1 mu3 t)^2 / (1 - mu2^2 t)
//   + m1^4 t (1 + 7 mu2^2 t + 4 mu2^4 t^2) / (1 - mu2^2 t)^2
TruncatedEGF F4_series(int order = kDefaultSeriesOrder);

// Sub-series of F_4 by number of marks, normalized to mu2 = 1 (central basis).
enum class S4Part { s0, s2, s4_one_column, s4_two_columns, s4 };
TruncatedEGF s4_series(S4Part which, int order = kDefaultSeriesOrder);
std::string to_string(S4Part part);
S4Part parse_s4_part(const std::string& name);

// E[det^6] for distributions with m1 = 0, as a raw polynomial in m2, m3, m4, m6.
MomentPolynomial f6_central_explicit(int n);
// (1 + m3^2 t)^10 exp(q6 t) / (1 - q4 t)^15 N6(m2^3 t / (1 - q4 t)^3) with
// q6 = m6 - 10 m3^2 - 15 m4 m2 + 30 m2^3 and q4 = m4 m2 - 3 m2^3.
TruncatedEGF F6_central_series(int order = kDefaultSeriesOrder);

} // namespace detmom

#endif
