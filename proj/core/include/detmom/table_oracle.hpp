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

#ifndef DETMOM_TABLE_ORACLE_HPP
#define DETMOM_TABLE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "detmom/moment_polynomial.hpp"

namespace detmom
{

// k x n array whose rows are permutations of {1..n}. Row j, column i holds
// pi_j(i); the table stands for the product of A_{i, pi_j(i)} over all cells.
class PermutationTable
{
public:
    explicit PermutationTable(std::vector<std::vector<int>> rows);

    int rows() const noexcept { return static_cast<int>(rows_.size()); }
    int columns() const noexcept { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }
    const std::vector<int>& row(int j) const { return rows_.at(j); }

private:
    std::vector<std::vector<int>> rows_;
};

// A permutation in which at most one cell is replaced by a mark. The marked
// cell contributes the mean m1 instead of a centred entry.
struct MarkedRow {
    std::vector<int> permutation; // values in {1..n}, the underlying permutation
    std::optional<int> mark;      // 0-based column of the mark
};

class MarkedTable
{
public:
    explicit MarkedTable(std::vector<MarkedRow> rows);

    // Rows written as in a picture of the table, with 0 standing for the mark;
    // the hidden value is the one missing from the row.
    static MarkedTable from_display(const std::vector<std::vector<int>>& rows);

    int rows() const noexcept { return static_cast<int>(rows_.size()); }
    int columns() const noexcept { return rows_.empty() ? 0 : static_cast<int>(rows_.front().permutation.size()); }
    const MarkedRow& row(int j) const { return rows_.at(j); }

private:
    std::vector<MarkedRow> rows_;
};

// +1 / -1 parity of a permutation of {1..n} (or {0..n-1}).
int permutation_sign(std::span<const int> values);

int table_sign(const PermutationTable& t);
int table_sign(const MarkedTable& t);

// Product over columns of prod_v m_{count(v)}, where count(v) is how often the
// value v occurs in the column. Raw basis.
MomentPolynomial table_weight(const PermutationTable& t, int max_order = kDefaultMaxOrder);

// Product over columns of m1^(marks) * prod_v mu_{count(v)} over unmarked
// values; zero as soon as some value occurs exactly once. Central basis.
MomentPolynomial marked_weight(const MarkedTable& t, int max_order = kDefaultMaxOrder);

enum class OracleMode { plain, marked };
enum class Reduction { full, first_row_identity };

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

struct OracleOptions {
    std::uint64_t budget = kDefaultBudget;
    // 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    // 0 picks max(k, kDefaultMaxOrder).
    int max_order = 0;
    // Called with (tables processed, total tables); may run on worker threads
    // but never concurrently with itself.
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

// Number of weight evaluations oracle_fk would perform (saturates at
// UINT64_MAX).
std::uint64_t oracle_cost(int k, int n, OracleMode mode, Reduction reduce);

// f_k(n) by summing sign * weight over every (marked) permutation table.
// Plain mode returns a raw polynomial, marked mode a central one. The
// first-row-identity reduction enumerates tables whose first row is the
// identity and multiplies by n!, which needs k even.
MomentPolynomial oracle_fk(int k, int n, OracleMode mode, Reduction reduce, const OracleOptions& options = {});

} // namespace detmom

#endif
