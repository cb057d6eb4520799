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

#ifndef DETMOM_ERRORS_HPP
#define DETMOM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace detmom
{

// Operands live in different moment bases (raw m_r vs central mu_r).
class BasisMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Symbol order or exponent outside the polynomial's configured capacity.
class CapacityError : public std::length_error
{
public:
    using std::length_error::length_error;
};

// A precondition on the mathematical input was violated (odd k where even
// is required, nonzero constant term, index out of range, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// An enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error
{
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("enumeration needs " + std::to_string(required) + " evaluations, budget is "
                             + std::to_string(budget)),
          required_(required), budget_(budget)
    {
    }

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

} // namespace detmom

#endif
