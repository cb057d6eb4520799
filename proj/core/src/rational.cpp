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

#include "detmom/rational.hpp"

#include <cctype>

#include "detmom/errors.hpp"

namespace detmom
{

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace
{

Integer parse_integer(std::string_view text)
{
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        start = 1;
    }
    if (start == text.size()) {
        throw DomainError("malformed integer '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw DomainError("malformed integer '" + std::string(text) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits, 10);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    return make_rational(parse_integer(trim(text.substr(0, slash))), parse_integer(trim(text.substr(slash + 1))));
}

std::string to_string(const Integer& value)
{
    return value.get_str();
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational pow(const Rational& base, unsigned long exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    // powers of coprime num/den stay coprime and den stays positive
    return r;
}

} // namespace detmom
