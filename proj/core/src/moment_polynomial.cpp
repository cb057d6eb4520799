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

#include "detmom/moment_polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "detmom/errors.hpp"

namespace detmom
{

std::string to_string(Basis basis)
{
    return basis == Basis::raw ? "raw" : "central";
}

Basis parse_basis(const std::string& name)
{
    if (name == "raw") {
        return Basis::raw;
    }
    if (name == "central") {
        return Basis::central;
    }
    throw DomainError("unknown basis '" + name + "' (expected raw or central)");
}

MomentSymbol MomentSymbol::m(int r)
{
    if (r < 1) {
        throw DomainError("raw moment order must be >= 1");
    }
    return r == 1 ? mean() : MomentSymbol{Kind::raw, r};
}

MomentSymbol MomentSymbol::mu(int r)
{
    if (r < 2) {
        throw DomainError("central moment order must be >= 2 (mu_1 is identically zero)");
    }
    return {Kind::central, r};
}

std::string MomentSymbol::name() const
{
    switch (kind) {
    case Kind::mean:
        return "m1";
    case Kind::raw:
        return "m" + std::to_string(order);
    case Kind::central:
        return "mu" + std::to_string(order);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Monomial

unsigned Monomial::degree() const
{
    return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

unsigned Monomial::weight() const
{
    unsigned w = exponents[0];
    for (std::size_t r = 2; r < exponents.size(); ++r) {
        w += static_cast<unsigned>(r) * exponents[r];
    }
    return w;
}

int Monomial::highest_slot() const
{
    for (int r = kMaxSupportedOrder; r > 0; --r) {
        if (exponents[r] != 0) {
            return r;
        }
    }
    return 0;
}

Monomial Monomial::product(const Monomial& a, const Monomial& b)
{
    Monomial out;
    for (std::size_t i = 0; i < out.exponents.size(); ++i) {
        const std::uint32_t e = std::uint32_t(a.exponents[i]) + b.exponents[i];
        if (e > kMaxExponent) {
            throw CapacityError("monomial exponent exceeds " + std::to_string(kMaxExponent));
        }
        out.exponents[i] = static_cast<std::uint16_t>(e);
    }
    return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto e : m.exponents) {
        h ^= e;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const noexcept
{
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) {
        return da < db;
    }
    for (int r = kMaxSupportedOrder; r >= 0; --r) {
        if (a.exponents[r] != b.exponents[r]) {
            return a.exponents[r] > b.exponents[r];
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// MomentPolynomial

namespace
{

void check_max_order(int max_order)
{
    if (max_order < 2 || max_order > kMaxSupportedOrder) {
        throw CapacityError("max symbol order must lie in [2, " + std::to_string(kMaxSupportedOrder) + "], got "
                            + std::to_string(max_order));
    }
}

void check_fits(const Monomial& m, int max_order)
{
    if (m.exponents[1] != 0) {
        throw DomainError("exponent slot 1 is reserved and must be zero");
    }
    if (m.highest_slot() > max_order) {
        throw CapacityError("symbol of order " + std::to_string(m.highest_slot()) + " exceeds max order "
                            + std::to_string(max_order));
    }
}

void require_same_basis(const MomentPolynomial& a, const MomentPolynomial& b)
{
    if (a.basis() != b.basis()) {
        throw BasisMismatch("cannot combine a " + to_string(a.basis()) + " polynomial with a "
                            + to_string(b.basis()) + " polynomial");
    }
}

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

std::vector<MomentPolynomial::Term> drain_sorted(Accumulator& acc)
{
    std::vector<MomentPolynomial::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (c != 0) {
            terms.emplace_back(m, std::move(c));
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return CanonicalOrder{}(x.first, y.first); });
    return terms;
}

} // namespace

MomentPolynomial::MomentPolynomial(Basis basis, int max_order) : basis_(basis), max_order_(max_order)
{
    check_max_order(max_order);
}

MomentPolynomial::MomentPolynomial(Basis basis, int max_order, std::vector<Term> sorted_terms, bool)
    : basis_(basis), max_order_(max_order), terms_(std::move(sorted_terms))
{
}

MomentPolynomial MomentPolynomial::from_terms(Basis basis, int max_order, std::vector<Term> terms)
{
    check_max_order(max_order);
    Accumulator acc;
    for (auto& [m, c] : terms) {
        check_fits(m, max_order);
        acc[m] += c;
    }
    return MomentPolynomial(basis, max_order, drain_sorted(acc), true);
}

MomentPolynomial MomentPolynomial::constant(const Rational& c, Basis basis, int max_order)
{
    check_max_order(max_order);
    std::vector<Term> terms;
    if (c != 0) {
        terms.emplace_back(Monomial{}, c);
    }
    return MomentPolynomial(basis, max_order, std::move(terms), true);
}

MomentPolynomial MomentPolynomial::variable(Basis basis, int order, int max_order)
{
    check_max_order(max_order);
    if (order < 1 || order > max_order) {
        throw CapacityError("symbol order " + std::to_string(order) + " outside [1, " + std::to_string(max_order)
                            + "]");
    }
    Monomial m;
    m.exponents[order == 1 ? 0 : order] = 1;
    return MomentPolynomial(basis, max_order, {{m, Rational(1)}}, true);
}

MomentPolynomial MomentPolynomial::symbol(const MomentSymbol& s, Basis mean_basis, int max_order)
{
    switch (s.kind) {
    case MomentSymbol::Kind::mean:
        return variable(mean_basis, 1, max_order);
    case MomentSymbol::Kind::raw:
        return variable(Basis::raw, s.order, max_order);
    case MomentSymbol::Kind::central:
        return variable(Basis::central, s.order, max_order);
    }
    throw DomainError("bad symbol kind");
}

bool MomentPolynomial::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Monomial{});
}

Rational MomentPolynomial::constant_term() const
{
    // the constant monomial sorts first (degree 0)
    if (!terms_.empty() && terms_.front().first == Monomial{}) {
        return terms_.front().second;
    }
    return Rational(0);
}

Rational MomentPolynomial::coefficient(const Monomial& m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return CanonicalOrder{}(t.first, key); });
    if (it != terms_.end() && it->first == m) {
        return it->second;
    }
    return Rational(0);
}

MomentPolynomial MomentPolynomial::with_max_order(int max_order) const
{
    check_max_order(max_order);
    for (const auto& [m, c] : terms_) {
        check_fits(m, max_order);
    }
    return MomentPolynomial(basis_, max_order, terms_, true);
}

MomentPolynomial MomentPolynomial::operator-() const
{
    auto terms = terms_;
    for (auto& t : terms) {
        t.second = -t.second;
    }
    return MomentPolynomial(basis_, max_order_, std::move(terms), true);
}

MomentPolynomial MomentPolynomial::pow(unsigned exponent) const
{
    MomentPolynomial result = constant(Rational(1), basis_, max_order_);
    MomentPolynomial base = *this;
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

namespace
{

MomentPolynomial merge(const MomentPolynomial& a, const MomentPolynomial& b, bool subtract)
{
    require_same_basis(a, b);
    std::vector<MomentPolynomial::Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const CanonicalOrder less;
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && less(ia->first, ib->first))) {
            out.push_back(*ia++);
        } else if (ia == a.terms().end() || less(ib->first, ia->first)) {
            out.emplace_back(ib->first, subtract ? Rational(-ib->second) : ib->second);
            ++ib;
        } else {
            Rational c = subtract ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
            if (c != 0) {
                out.emplace_back(ia->first, std::move(c));
            }
            ++ia;
            ++ib;
        }
    }
    return MomentPolynomial::from_terms(a.basis(), std::max(a.max_order(), b.max_order()), std::move(out));
}

} // namespace

MomentPolynomial operator+(const MomentPolynomial& a, const MomentPolynomial& b)
{
    return merge(a, b, false);
}

MomentPolynomial operator-(const MomentPolynomial& a, const MomentPolynomial& b)
{
    return merge(a, b, true);
}

MomentPolynomial operator*(const MomentPolynomial& a, const MomentPolynomial& b)
{
    require_same_basis(a, b);
    const int max_order = std::max(a.max_order_, b.max_order_);
    if (a.is_zero() || b.is_zero()) {
        return MomentPolynomial(a.basis_, max_order);
    }
    Accumulator acc;
    acc.reserve(a.size() * b.size());
    Rational prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            prod = ca * cb;
            acc[Monomial::product(ma, mb)] += prod;
        }
    }
    return MomentPolynomial(a.basis_, max_order, drain_sorted(acc), true);
}

MomentPolynomial operator*(const Rational& c, const MomentPolynomial& p)
{
    if (c == 0) {
        return MomentPolynomial(p.basis_, p.max_order_);
    }
    auto terms = p.terms_;
    for (auto& t : terms) {
        t.second *= c;
    }
    return MomentPolynomial(p.basis_, p.max_order_, std::move(terms), true);
}

bool operator==(const MomentPolynomial& a, const MomentPolynomial& b)
{
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

MomentPolynomial poly_arith(const MomentPolynomial& a, const MomentPolynomial& b, PolyOp op)
{
    switch (op) {
    case PolyOp::add:
        return a + b;
    case PolyOp::sub:
        return a - b;
    case PolyOp::mul:
        return a * b;
    }
    throw DomainError("bad polynomial op");
}

// ---------------------------------------------------------------------------
// Basis conversion

namespace
{

// Rewrites every symbol of order >= 2 through `image(r)`, a polynomial in the
// target basis; the mean is carried over unchanged.
MomentPolynomial substitute_symbols(const MomentPolynomial& p, Basis target,
                                    const std::function<MomentPolynomial(int)>& image)
{
    const int R = p.max_order();
    // powers[r][e] = image(r)^e, filled lazily
    std::vector<std::vector<MomentPolynomial>> powers(R + 1);
    auto power = [&](int r, unsigned e) -> const MomentPolynomial& {
        auto& cache = powers[r];
        if (cache.empty()) {
            cache.push_back(MomentPolynomial::constant(Rational(1), target, R));
        }
        while (cache.size() <= e) {
            if (cache.size() == 1) {
                cache.push_back(image(r));
            } else {
                cache.push_back(cache.back() * cache[1]);
            }
        }
        return cache[e];
    };

    MomentPolynomial result(target, R);
    for (const auto& [m, c] : p.terms()) {
        Monomial mean_part;
        mean_part.exponents[0] = m.exponents[0];
        MomentPolynomial term = MomentPolynomial::from_terms(target, R, {{mean_part, c}});
        for (int r = 2; r <= R; ++r) {
            if (m.exponents[r] != 0) {
                term = term * power(r, m.exponents[r]);
            }
        }
        result = result + term;
    }
    return result;
}

} // namespace

MomentPolynomial central_to_raw(const MomentPolynomial& p)
{
    if (p.basis() != Basis::central) {
        throw BasisMismatch("central_to_raw expects a central-basis polynomial");
    }
    const int R = p.max_order();
    const auto m1 = MomentPolynomial::variable(Basis::raw, 1, R);
    return substitute_symbols(p, Basis::raw, [&](int r) {
        MomentPolynomial out(Basis::raw, R);
        for (int j = 0; j <= r; ++j) {
            Rational c(binomial(r, j));
            if ((r - j) % 2 != 0) {
                c = -c;
            }
            MomentPolynomial mj = j == 0 ? MomentPolynomial::constant(Rational(1), Basis::raw, R)
                                         : MomentPolynomial::variable(Basis::raw, j, R);
            out = out + c * mj * m1.pow(r - j);
        }
        return out;
    });
}

MomentPolynomial raw_to_central(const MomentPolynomial& p)
{
    if (p.basis() != Basis::raw) {
        throw BasisMismatch("raw_to_central expects a raw-basis polynomial");
    }
    const int R = p.max_order();
    const auto m1 = MomentPolynomial::variable(Basis::central, 1, R);
    return substitute_symbols(p, Basis::central, [&](int r) {
        MomentPolynomial out(Basis::central, R);
        for (int j = 0; j <= r; ++j) {
            if (j == 1) {
                continue;
            }
            MomentPolynomial muj = j == 0 ? MomentPolynomial::constant(Rational(1), Basis::central, R)
                                          : MomentPolynomial::variable(Basis::central, j, R);
            out = out + Rational(binomial(r, j)) * muj * m1.pow(r - j);
        }
        return out;
    });
}

MomentPolynomial to_basis(const MomentPolynomial& p, Basis basis)
{
    if (p.basis() == basis) {
        return p;
    }
    return basis == Basis::raw ? central_to_raw(p) : raw_to_central(p);
}

std::set<unsigned> grade_weight(const MomentPolynomial& p)
{
    std::set<unsigned> weights;
    for (const auto& [m, c] : p.terms()) {
        weights.insert(m.weight());
    }
    if (weights.empty()) {
        weights.insert(0);
    }
    return weights;
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

Rational evaluate(const MomentPolynomial& p, const std::map<int, Rational>& assignment, const Rational& mean)
{
    Rational total(0);
    for (const auto& [m, c] : p.terms()) {
        Rational value = c * detmom::pow(mean, m.exponents[0]);
        for (int r = 2; r <= p.max_order(); ++r) {
            if (m.exponents[r] == 0) {
                continue;
            }
            auto it = assignment.find(r);
            if (it == assignment.end()) {
                throw DomainError("no value assigned to " + MomentSymbol{p.basis() == Basis::raw
                                                                             ? MomentSymbol::Kind::raw
                                                                             : MomentSymbol::Kind::central,
                                                                         r}
                                                                .name());
            }
            value *= detmom::pow(it->second, m.exponents[r]);
        }
        total += value;
    }
    return total;
}

MomentPolynomial specialize(const MomentPolynomial& p, const std::map<int, Rational>& assignment,
                            const std::optional<Rational>& mean)
{
    std::vector<MomentPolynomial::Term> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        Rational value = c;
        if (mean && m.exponents[0] != 0) {
            value *= detmom::pow(*mean, m.exponents[0]);
            rest.exponents[0] = 0;
        }
        for (const auto& [r, v] : assignment) {
            if (r < 2 || r > p.max_order()) {
                continue;
            }
            if (m.exponents[r] != 0) {
                value *= detmom::pow(v, m.exponents[r]);
                rest.exponents[r] = 0;
            }
        }
        if (value != 0) {
            terms.emplace_back(rest, std::move(value));
        }
    }
    return MomentPolynomial::from_terms(p.basis(), p.max_order(), std::move(terms));
}

MomentPolynomial scale_symbols(const MomentPolynomial& p, const std::function<Rational(int)>& factor)
{
    std::vector<Rational> f(p.max_order() + 1, Rational(1));
    f[0] = factor(1);
    for (int r = 2; r <= p.max_order(); ++r) {
        f[r] = factor(r);
    }
    std::vector<MomentPolynomial::Term> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        Rational value = c;
        for (int r = 0; r <= p.max_order(); ++r) {
            if (m.exponents[r] != 0) {
                value *= detmom::pow(f[r], m.exponents[r]);
            }
        }
        terms.emplace_back(m, std::move(value));
    }
    return MomentPolynomial::from_terms(p.basis(), p.max_order(), std::move(terms));
}

MomentPolynomial relabel_basis(const MomentPolynomial& p, Basis basis)
{
    return MomentPolynomial::from_terms(basis, p.max_order(), p.terms());
}

// ---------------------------------------------------------------------------
// Rendering

namespace
{

std::string symbol_name(Basis basis, int slot)
{
    if (slot == 0) {
        return "m1";
    }
    return (basis == Basis::raw ? "m" : "mu") + std::to_string(slot);
}

} // namespace

std::string to_text(const MomentPolynomial& p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational magnitude = abs(c);
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;

        std::vector<std::string> factors;
        for (int slot = 0; slot <= p.max_order(); ++slot) {
            const auto e = m.exponents[slot];
            if (e == 0) {
                continue;
            }
            auto f = symbol_name(p.basis(), slot);
            if (e > 1) {
                f += "^" + std::to_string(e);
            }
            factors.push_back(std::move(f));
        }
        if (factors.empty() || magnitude != 1) {
            os << to_string(magnitude);
            if (!factors.empty()) {
                os << '*';
            }
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            os << (i ? "*" : "") << factors[i];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MomentPolynomial& p)
{
    return os << to_text(p);
}

nlohmann::json to_json(const MomentPolynomial& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json exp = nlohmann::json::array();
        for (int slot = 0; slot <= p.max_order(); ++slot) {
            exp.push_back(m.exponents[slot]);
        }
        terms.push_back({{"coef", {to_string(c.get_num()), to_string(c.get_den())}}, {"exp", std::move(exp)}});
    }
    return {{"basis", to_string(p.basis())}, {"max_order", p.max_order()}, {"terms", std::move(terms)}};
}

MomentPolynomial polynomial_from_json(const nlohmann::json& j)
{
    try {
        const Basis basis = parse_basis(j.at("basis").get<std::string>());
        const int max_order = j.at("max_order").get<int>();
        check_max_order(max_order);
        std::vector<MomentPolynomial::Term> terms;
        for (const auto& t : j.at("terms")) {
            const auto& coef = t.at("coef");
            const auto& exp = t.at("exp");
            if (!coef.is_array() || coef.size() != 2 || !exp.is_array()
                || exp.size() != static_cast<std::size_t>(max_order + 1)) {
                throw DomainError("malformed polynomial term");
            }
            Monomial m;
            for (int slot = 0; slot <= max_order; ++slot) {
                const auto e = exp[slot].get<long long>();
                if (e < 0 || e > static_cast<long long>(kMaxExponent)) {
                    throw CapacityError("exponent out of range in polynomial JSON");
                }
                m.exponents[slot] = static_cast<std::uint16_t>(e);
            }
            terms.emplace_back(m, make_rational(Integer(coef[0].get<std::string>()),
                                                Integer(coef[1].get<std::string>())));
        }
        return MomentPolynomial::from_terms(basis, max_order, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

} // namespace detmom
