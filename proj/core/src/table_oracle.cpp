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

#include "detmom/table_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "detmom/errors.hpp"

namespace detmom
{

namespace
{

bool is_permutation_of_1_to_n(const std::vector<int>& values)
{
    std::vector<char> seen(values.size() + 1, 0);
    for (int v : values) {
        if (v < 1 || v > static_cast<int>(values.size()) || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

} // namespace

PermutationTable::PermutationTable(std::vector<std::vector<int>> rows) : rows_(std::move(rows))
{
    for (const auto& r : rows_) {
        if (r.size() != rows_.front().size()) {
            throw DomainError("permutation table rows differ in length");
        }
        if (!is_permutation_of_1_to_n(r)) {
            throw DomainError("permutation table row is not a permutation of {1..n}");
        }
    }
}

MarkedTable::MarkedTable(std::vector<MarkedRow> rows) : rows_(std::move(rows))
{
    for (const auto& r : rows_) {
        if (r.permutation.size() != rows_.front().permutation.size()) {
            throw DomainError("marked table rows differ in length");
        }
        if (!is_permutation_of_1_to_n(r.permutation)) {
            throw DomainError("marked table row is not a permutation of {1..n}");
        }
        if (r.mark && (*r.mark < 0 || *r.mark >= static_cast<int>(r.permutation.size()))) {
            throw DomainError("mark position outside the row");
        }
    }
}

MarkedTable MarkedTable::from_display(const std::vector<std::vector<int>>& rows)
{
    std::vector<MarkedRow> out;
    for (const auto& shown : rows) {
        MarkedRow row{shown, std::nullopt};
        const auto marks = std::count(shown.begin(), shown.end(), 0);
        if (marks > 1) {
            throw DomainError("a marked row carries at most one mark");
        }
        if (marks == 1) {
            const int n = static_cast<int>(shown.size());
            std::vector<char> seen(n + 1, 0);
            for (int v : shown) {
                if (v >= 1 && v <= n) {
                    seen[v] = 1;
                }
            }
            const int missing = static_cast<int>(std::find(seen.begin() + 1, seen.end(), 0) - seen.begin());
            const int column = static_cast<int>(std::find(shown.begin(), shown.end(), 0) - shown.begin());
            row.permutation[column] = missing;
            row.mark = column;
        }
        out.push_back(std::move(row));
    }
    return MarkedTable(std::move(out));
}

int permutation_sign(std::span<const int> values)
{
    const int n = static_cast<int>(values.size());
    if (n == 0) {
        return 1;
    }
    const int offset = *std::min_element(values.begin(), values.end());
    std::vector<char> visited(n, 0);
    int sign = 1;
    for (int start = 0; start < n; ++start) {
        if (visited[start]) {
            continue;
        }
        int length = 0;
        for (int i = start; !visited[i]; i = values[i] - offset) {
            visited[i] = 1;
            ++length;
        }
        if (length % 2 == 0) {
            sign = -sign;
        }
    }
    return sign;
}

int table_sign(const PermutationTable& t)
{
    int sign = 1;
    for (int j = 0; j < t.rows(); ++j) {
        sign *= permutation_sign(t.row(j));
    }
    return sign;
}

int table_sign(const MarkedTable& t)
{
    int sign = 1;
    for (int j = 0; j < t.rows(); ++j) {
        sign *= permutation_sign(t.row(j).permutation);
    }
    return sign;
}

namespace
{

int resolve_max_order(int requested, int k)
{
    const int r = requested > 0 ? requested : std::max(k, kDefaultMaxOrder);
    if (k > r) {
        throw CapacityError("k = " + std::to_string(k) + " needs symbols up to order " + std::to_string(k)
                            + " but max order is " + std::to_string(r));
    }
    return r;
}

void bump(Monomial& m, int slot)
{
    if (m.exponents[slot] == kMaxExponent) {
        throw CapacityError("monomial exponent overflow");
    }
    ++m.exponents[slot];
}

} // namespace

MomentPolynomial table_weight(const PermutationTable& t, int max_order)
{
    max_order = resolve_max_order(max_order, t.rows());
    const int n = t.columns();
    Monomial m;
    std::vector<int> counts(n + 1);
    for (int i = 0; i < n; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int j = 0; j < t.rows(); ++j) {
            ++counts[t.row(j)[i]];
        }
        for (int c : counts) {
            if (c > 0) {
                bump(m, c == 1 ? 0 : c);
            }
        }
    }
    return MomentPolynomial::from_terms(Basis::raw, max_order, {{m, Rational(1)}});
}

MomentPolynomial marked_weight(const MarkedTable& t, int max_order)
{
    max_order = resolve_max_order(max_order, t.rows());
    const int n = t.columns();
    Monomial m;
    std::vector<int> counts(n + 1);
    for (int i = 0; i < n; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int j = 0; j < t.rows(); ++j) {
            const auto& row = t.row(j);
            if (row.mark && *row.mark == i) {
                bump(m, 0);
            } else {
                ++counts[row.permutation[i]];
            }
        }
        for (int c : counts) {
            if (c == 1) {
                return MomentPolynomial(Basis::central, max_order);
            }
            if (c > 1) {
                bump(m, c);
            }
        }
    }
    return MomentPolynomial::from_terms(Basis::central, max_order, {{m, Rational(1)}});
}

// ---------------------------------------------------------------------------
// Enumeration

namespace
{

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t factorial_u64(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f = saturating_mul(f, static_cast<std::uint64_t>(i));
    }
    return f;
}

struct Enumeration {
    int k = 0;
    int n = 0;
    OracleMode mode = OracleMode::plain;
    std::vector<std::vector<int>> perms; // 0-based values, lexicographic
    std::vector<int> signs;
    std::vector<std::uint64_t> radix; // options per row
};

// Option o of a row: plain -> permutation o; marked -> permutation o / (n+1)
// with mark (o % (n+1)) - 1, where -1 means unmarked.
class Worker
{
public:
    Worker(const Enumeration& e) : e_(e), counts_(e.n + 1), digits_(e.k) {}

    void run(std::uint64_t begin, std::uint64_t end)
    {
        decode(begin);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            visit();
            advance();
        }
    }

    std::unordered_map<Monomial, std::int64_t, MonomialHash>& sums() { return sums_; }

private:
    void decode(std::uint64_t index)
    {
        for (int j = e_.k - 1; j >= 0; --j) {
            digits_[j] = index % e_.radix[j];
            index /= e_.radix[j];
        }
    }

    void advance()
    {
        for (int j = e_.k - 1; j >= 0; --j) {
            if (++digits_[j] < e_.radix[j]) {
                return;
            }
            digits_[j] = 0;
        }
    }

    void visit()
    {
        const bool marked = e_.mode == OracleMode::marked;
        const std::uint64_t stride = marked ? static_cast<std::uint64_t>(e_.n + 1) : 1;
        int sign = 1;
        for (int j = 0; j < e_.k; ++j) {
            sign *= e_.signs[digits_[j] / stride];
        }
        Monomial m;
        for (int i = 0; i < e_.n; ++i) {
            std::fill(counts_.begin(), counts_.end(), 0);
            for (int j = 0; j < e_.k; ++j) {
                const auto& perm = e_.perms[digits_[j] / stride];
                if (marked && static_cast<int>(digits_[j] % stride) - 1 == i) {
                    ++m.exponents[0];
                } else {
                    ++counts_[perm[i]];
                }
            }
            for (int c : counts_) {
                if (c == 0) {
                    continue;
                }
                if (marked) {
                    if (c == 1) {
                        return; // mu_1 = 0: trivial table
                    }
                    ++m.exponents[c];
                } else {
                    ++m.exponents[c == 1 ? 0 : c];
                }
            }
        }
        sums_[m] += sign;
    }

    const Enumeration& e_;
    std::vector<int> counts_;
    std::vector<std::uint64_t> digits_;
    std::unordered_map<Monomial, std::int64_t, MonomialHash> sums_;
};

} // namespace

std::uint64_t oracle_cost(int k, int n, OracleMode mode, Reduction reduce)
{
    if (k < 1 || n < 0) {
        throw DomainError("oracle needs k >= 1 and n >= 0");
    }
    const std::uint64_t perms = factorial_u64(n);
    const std::uint64_t per_row =
        mode == OracleMode::plain ? perms : saturating_mul(perms, static_cast<std::uint64_t>(n + 1));
    const std::uint64_t first_row = reduce == Reduction::full ? per_row
                                    : mode == OracleMode::plain ? 1
                                                                : static_cast<std::uint64_t>(n + 1);
    std::uint64_t total = first_row;
    for (int j = 1; j < k; ++j) {
        total = saturating_mul(total, per_row);
    }
    return total;
}

MomentPolynomial oracle_fk(int k, int n, OracleMode mode, Reduction reduce, const OracleOptions& options)
{
    if (k < 1 || n < 0) {
        throw DomainError("oracle needs k >= 1 and n >= 0");
    }
    if (reduce == Reduction::first_row_identity && k % 2 != 0) {
        throw DomainError("the first-row-identity reduction needs an even k (column permutations must not flip "
                          "the sign), got k = "
                          + std::to_string(k));
    }
    const int max_order = resolve_max_order(options.max_order, k);
    if (n >= 21) {
        throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(), options.budget);
    }
    const std::uint64_t total = oracle_cost(k, n, mode, reduce);
    if (total > options.budget) {
        throw BudgetExceeded(total, options.budget);
    }

    Enumeration e;
    e.k = k;
    e.n = n;
    e.mode = mode;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        e.perms.push_back(p);
        e.signs.push_back(permutation_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));

    const std::uint64_t per_row = mode == OracleMode::plain ? e.perms.size() : e.perms.size() * (n + 1);
    e.radix.assign(k, per_row);
    if (reduce == Reduction::first_row_identity) {
        // the identity is permutation 0; in marked mode its options are 0..n
        e.radix[0] = mode == OracleMode::plain ? 1 : static_cast<std::uint64_t>(n + 1);
    }

    unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(1 << 16, total / (workers * 8ULL) + 1));
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    std::vector<Worker> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(e);
    }
    auto body = [&](Worker& worker) {
        for (std::uint64_t c; (c = next_chunk.fetch_add(1)) < chunks;) {
            const std::uint64_t begin = c * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            worker.run(begin, end);
            const std::uint64_t processed = done.fetch_add(end - begin) + (end - begin);
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(processed, total);
            }
        }
    };
    if (workers <= 1) {
        body(pool.front());
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] { body(pool[w]); });
        }
    }

    std::unordered_map<Monomial, std::int64_t, MonomialHash> merged;
    for (auto& worker : pool) {
        for (const auto& [m, c] : worker.sums()) {
            merged[m] += c;
        }
    }
    const Rational multiplier = reduce == Reduction::first_row_identity ? Rational(factorial(n)) : Rational(1);
    std::vector<MomentPolynomial::Term> terms;
    for (const auto& [m, c] : merged) {
        if (c != 0) {
            terms.emplace_back(m, multiplier * Rational(Integer(static_cast<long>(c))));
        }
    }
    return MomentPolynomial::from_terms(mode == OracleMode::plain ? Basis::raw : Basis::central, max_order,
                                        std::move(terms));
}

} // namespace detmom
