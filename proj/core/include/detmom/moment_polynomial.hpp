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

#ifndef DETMOM_MOMENT_POLYNOMIAL_HPP
#define DETMOM_MOMENT_POLYNOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "detmom/rational.hpp"

namespace detmom
{

// Raw moments m_r = E[A^r] or central moments mu_r = E[(A - m1)^r]. The mean
// m1 is shared by both bases; mu_1 is identically zero and never a symbol.
enum class Basis { raw, central };

std::string to_string(Basis basis);
Basis parse_basis(const std::string& name);

struct MomentSymbol {
    enum class Kind { raw, central, mean };

    Kind kind;
    int order;

    static MomentSymbol m(int r);
    static MomentSymbol mu(int r);
    static MomentSymbol mean() { return {Kind::mean, 1}; }

    // "m1", "m4", "mu3"
    std::string name() const;

    friend bool operator==(const MomentSymbol&, const MomentSymbol&) = default;
};

inline constexpr int kDefaultMaxOrder = 8;
inline constexpr int kMaxSupportedOrder = 15;
inline constexpr std::uint32_t kMaxExponent = 0xFFFF;

// Dense exponent vector. Slot 0 is the mean m1; slot r (2 <= r <= R) is the
// order-r symbol of the owning polynomial's basis. Slot 1 is always zero.
struct Monomial {
    std::array<std::uint16_t, kMaxSupportedOrder + 1> exponents{};

    // Total degree (sum of exponents).
    unsigned degree() const;
    // Homogeneity weight: sum of r * exponent, with the mean weighing 1.
    unsigned weight() const;
    // Highest slot with a nonzero exponent, 0 for the constant monomial.
    int highest_slot() const;

    static Monomial product(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

// Graded order: lower total degree first; ties are broken by comparing
// exponents from the highest-order symbol down, larger exponent first.
struct CanonicalOrder {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class MomentPolynomial
{
public:
    using Term = std::pair<Monomial, Rational>;

    explicit MomentPolynomial(Basis basis = Basis::raw, int max_order = kDefaultMaxOrder);

    // Combines duplicate monomials, drops zeros and sorts canonically.
    static MomentPolynomial from_terms(Basis basis, int max_order, std::vector<Term> terms);
    static MomentPolynomial constant(const Rational& c, Basis basis = Basis::raw,
                                     int max_order = kDefaultMaxOrder);
    // order 1 is the mean in either basis; order r >= 2 is m_r or mu_r.
    static MomentPolynomial variable(Basis basis, int order, int max_order = kDefaultMaxOrder);
    static MomentPolynomial symbol(const MomentSymbol& s, Basis mean_basis = Basis::raw,
                                   int max_order = kDefaultMaxOrder);

    Basis basis() const noexcept { return basis_; }
    int max_order() const noexcept { return max_order_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    // Same polynomial with a different symbol capacity. Narrowing below a
    // symbol in use throws CapacityError.
    MomentPolynomial with_max_order(int max_order) const;

    MomentPolynomial operator-() const;
    MomentPolynomial pow(unsigned exponent) const;

    friend MomentPolynomial operator+(const MomentPolynomial& a, const MomentPolynomial& b);
    friend MomentPolynomial operator-(const MomentPolynomial& a, const MomentPolynomial& b);
    friend MomentPolynomial operator*(const MomentPolynomial& a, const MomentPolynomial& b);
    friend MomentPolynomial operator*(const Rational& c, const MomentPolynomial& p);
    friend MomentPolynomial operator*(const MomentPolynomial& p, const Rational& c) { return c * p; }

    MomentPolynomial& operator+=(const MomentPolynomial& other) { return *this = *this + other; }
    MomentPolynomial& operator-=(const MomentPolynomial& other) { return *this = *this - other; }
    MomentPolynomial& operator*=(const MomentPolynomial& other) { return *this = *this * other; }

    // Equal bases and identical terms; symbol capacity is not compared.
    friend bool operator==(const MomentPolynomial& a, const MomentPolynomial& b);

private:
    MomentPolynomial(Basis basis, int max_order, std::vector<Term> sorted_terms, bool);

    Basis basis_;
    int max_order_;
    std::vector<Term> terms_;
};

enum class PolyOp { add, sub, mul };
MomentPolynomial poly_arith(const MomentPolynomial& a, const MomentPolynomial& b, PolyOp op);

// mu_r = sum_j C(r,j) m_j (-m1)^(r-j), with m_0 = 1.
MomentPolynomial central_to_raw(const MomentPolynomial& p);
// m_r = sum_j C(r,j) mu_j m1^(r-j), with mu_0 = 1 and mu_1 = 0.
MomentPolynomial raw_to_central(const MomentPolynomial& p);
MomentPolynomial to_basis(const MomentPolynomial& p, Basis basis);

// Distinct homogeneity weights over the monomials of p ({0} for zero p).
std::set<unsigned> grade_weight(const MomentPolynomial& p);

// Exact value with symbol r >= 2 taken from `assignment` and the mean from
// `mean`. Throws DomainError when a symbol occurring in p is unassigned.
Rational evaluate(const MomentPolynomial& p, const std::map<int, Rational>& assignment, const Rational& mean);

// Partial evaluation: substitutes the given orders (and the mean if set) and
// keeps the remaining symbols.
MomentPolynomial specialize(const MomentPolynomial& p, const std::map<int, Rational>& assignment,
                            const std::optional<Rational>& mean = std::nullopt);

// Multiplies each monomial's coefficient by prod_r factor(r)^e_r, where
// r = 1 addresses the mean. Realizes substitutions such as m_r -> (-1)^r m_r
// or the scaling m_r -> c^r m_r.
MomentPolynomial scale_symbols(const MomentPolynomial& p, const std::function<Rational(int order)>& factor);

// Reinterprets the same exponent vectors in another basis. Only meaningful
// when m1 = 0, where m_r and mu_r coincide.
MomentPolynomial relabel_basis(const MomentPolynomial& p, Basis basis);

// "2*m4^2 - 8*m1^2*m3^2 + 6*m2^4"
std::string to_text(const MomentPolynomial& p);
std::ostream& operator<<(std::ostream& os, const MomentPolynomial& p);

nlohmann::json to_json(const MomentPolynomial& p);
MomentPolynomial polynomial_from_json(const nlohmann::json& j);

} // namespace detmom

#endif
