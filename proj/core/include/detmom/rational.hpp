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

#ifndef DETMOM_RATIONAL_HPP
#define DETMOM_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace detmom
{

// GMP rationals are kept in canonical form (reduced, positive denominator)
// by every arithmetic operation; values built from raw num/den pairs are
// canonicalized by make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Accepts "7", "-3/4", " 12/8 " (reduced on return).
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);
Rational pow(const Rational& base, unsigned long exponent);

} // namespace detmom

#endif
