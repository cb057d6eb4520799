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

#ifndef DETMOM_DETERMINANT_HPP
#define DETMOM_DETERMINANT_HPP

#include <span>
#include <vector>

#include "detmom/rational.hpp"

namespace detmom
{

// Row-major n x n matrices.

// Fraction-free Bareiss elimination; exact for integer entries.
Integer determinant_bareiss(std::vector<Integer> matrix, int n);
// Exact determinant of a rational matrix: clears denominators, then Bareiss.
Rational determinant_exact(std::span<const Rational> matrix, int n);
// Gaussian elimination with partial pivoting.
double determinant_lu(std::vector<double> matrix, int n);

} // namespace detmom

#endif
