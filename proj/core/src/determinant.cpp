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

#include "detmom/determinant.hpp"

#include <cmath>
#include <utility>

#include "detmom/errors.hpp"

namespace detmom
{

namespace
{

void check_shape(std::size_t size, int n)
{
    if (n < 0 || size != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw DomainError("matrix storage does not match an n x n shape");
    }
}

} // namespace

Integer determinant_bareiss(std::vector<Integer> a, int n)
{
    check_shape(a.size(), n);
    auto at = [&](int i, int j) -> Integer& { return a[static_cast<std::size_t>(i) * n + j]; };
    Integer previous = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) {
                return 0;
            }
            for (int j = 0; j < n; ++j) {
                std::swap(at(k, j), at(swap_row, j));
            }
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // exact division: the numerator is a multiple of the previous pivot
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / previous;
            }
        }
        previous = at(k, k);
    }
    if (n == 0) {
        return 1;
    }
    return sign * at(n - 1, n - 1);
}

Rational determinant_exact(std::span<const Rational> matrix, int n)
{
    check_shape(matrix.size(), n);
    Integer common = 1;
    for (const auto& x : matrix) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), x.get_den().get_mpz_t());
    }
    std::vector<Integer> scaled;
    scaled.reserve(matrix.size());
    for (const auto& x : matrix) {
        scaled.push_back(x.get_num() * (common / x.get_den()));
    }
    Integer scale_n = 1;
    for (int i = 0; i < n; ++i) {
        scale_n *= common;
    }
    return make_rational(determinant_bareiss(std::move(scaled), n), scale_n);
}

double determinant_lu(std::vector<double> a, int n)
{
    check_shape(a.size(), n);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(at(i, k)) > std::abs(at(pivot, k))) {
                pivot = i;
            }
        }
        if (at(pivot, k) == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(k, j), at(pivot, j));
            }
            det = -det;
        }
        det *= at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double factor = at(i, k) / at(k, k);
            for (int j = k + 1; j < n; ++j) {
                at(i, j) -= factor * at(k, j);
            }
        }
    }
    return det;
}

} // namespace detmom
