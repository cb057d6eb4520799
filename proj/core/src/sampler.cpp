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

#include "detmom/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "detmom/closed_forms.hpp"
#include "detmom/determinant.hpp"
#include "detmom/errors.hpp"

namespace detmom
{

// ---------------------------------------------------------------------------
// DistributionSpec

DistributionSpec::DistributionSpec(Kind kind, std::vector<Rational> values, std::vector<Rational> probs)
    : kind_(kind), values_(std::move(values)), probs_(std::move(probs))
{
}

DistributionSpec DistributionSpec::rademacher()
{
    return DistributionSpec(Kind::rademacher, {Rational(-1), Rational(1)}, {Rational(1, 2), Rational(1, 2)});
}

DistributionSpec DistributionSpec::std_normal()
{
    return DistributionSpec(Kind::std_normal, {}, {});
}

DistributionSpec DistributionSpec::discrete(std::vector<Rational> values, std::vector<Rational> probs)
{
    if (values.empty() || values.size() != probs.size()) {
        throw DomainError("discrete distribution needs one probability per support value");
    }
    Rational total = 0;
    for (const auto& p : probs) {
        if (p < 0) {
            throw DomainError("probabilities must be non-negative");
        }
        total += p;
    }
    if (total != 1) {
        throw DomainError("probabilities sum to " + detmom::to_string(total) + ", not 1");
    }
    return DistributionSpec(Kind::discrete, std::move(values), std::move(probs));
}

DistributionSpec DistributionSpec::parse(std::string_view text)
{
    if (text == "rademacher") {
        return rademacher();
    }
    if (text == "normal" || text == "std_normal" || text == "gaussian") {
        return std_normal();
    }
    constexpr std::string_view prefix = "discrete:";
    if (text.starts_with(prefix)) {
        text.remove_prefix(prefix.size());
        std::vector<Rational> values;
        std::vector<Rational> probs;
        while (!text.empty()) {
            const auto comma = text.find(',');
            const auto item = text.substr(0, comma);
            const auto colon = item.find(':');
            if (colon == std::string_view::npos) {
                throw DomainError("discrete support item '" + std::string(item) + "' is not value:probability");
            }
            values.push_back(parse_rational(item.substr(0, colon)));
            probs.push_back(parse_rational(item.substr(colon + 1)));
            if (comma == std::string_view::npos) {
                break;
            }
            text.remove_prefix(comma + 1);
        }
        return discrete(std::move(values), std::move(probs));
    }
    throw DomainError("unknown distribution '" + std::string(text)
                      + "' (expected rademacher, normal or discrete:v1:p1,v2:p2,...)");
}

std::string DistributionSpec::to_string() const
{
    switch (kind_) {
    case Kind::rademacher:
        return "rademacher";
    case Kind::std_normal:
        return "normal";
    case Kind::discrete: {
        std::ostringstream os;
        os << "discrete:";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            os << (i ? "," : "") << values_[i].get_str() << ':' << probs_[i].get_str();
        }
        return os.str();
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Exact moments

std::map<int, Rational> exact_moments(const DistributionSpec& d, int up_to)
{
    if (up_to < 1 || up_to > kMaxSupportedOrder) {
        throw CapacityError("moment order must lie in [1, " + std::to_string(kMaxSupportedOrder) + "]");
    }
    if (d.kind() == DistributionSpec::Kind::std_normal) {
        return gaussian_moments(up_to);
    }
    std::map<int, Rational> moments;
    for (int r = 1; r <= up_to; ++r) {
        Rational m = 0;
        for (std::size_t i = 0; i < d.values().size(); ++i) {
            m += d.probs()[i] * pow(d.values()[i], r);
        }
        moments[r] = m;
    }
    return moments;
}

std::map<int, Rational> exact_central_moments(const DistributionSpec& d, int up_to)
{
    if (up_to < 2 || up_to > kMaxSupportedOrder) {
        throw CapacityError("moment order must lie in [2, " + std::to_string(kMaxSupportedOrder) + "]");
    }
    std::map<int, Rational> moments;
    if (d.kind() == DistributionSpec::Kind::std_normal) {
        for (auto& [r, v] : gaussian_moments(up_to)) {
            if (r >= 2) {
                moments[r] = v;
            }
        }
        return moments;
    }
    const Rational mean = exact_moments(d, 1).at(1);
    for (int r = 2; r <= up_to; ++r) {
        Rational m = 0;
        for (std::size_t i = 0; i < d.values().size(); ++i) {
            m += d.probs()[i] * pow(Rational(d.values()[i] - mean), r);
        }
        moments[r] = m;
    }
    return moments;
}

std::optional<Rational> exact_target(const DistributionSpec& d, int k, int n)
{
    if (k < 1 || n < 0) {
        throw DomainError("need k >= 1 and n >= 0");
    }
    if (n == 0) {
        return Rational(1);
    }
    if (d.kind() == DistributionSpec::Kind::std_normal && k % 2 == 0) {
        return Rational(gaussian_fk(k, n));
    }
    if (k > kMaxSupportedOrder) {
        return std::nullopt;
    }
    const auto raw = exact_moments(d, std::max(k, 2));
    const Rational& mean = raw.at(1);
    switch (k) {
    case 2:
        return evaluate(f2_explicit(n), raw, mean);
    case 4:
        return evaluate(f4_explicit(n), exact_central_moments(d, 4), mean);
    case 6:
        if (mean == 0) {
            return evaluate(f6_central_explicit(n), raw, mean);
        }
        break;
    default:
        break;
    }
    const Reduction reduce = k % 2 == 0 ? Reduction::first_row_identity : Reduction::full;
    constexpr std::uint64_t small_budget = 2'000'000;
    if (n < 21 && oracle_cost(k, n, OracleMode::plain, reduce) <= small_budget) {
        OracleOptions options;
        options.budget = small_budget;
        return evaluate(oracle_fk(k, n, OracleMode::plain, reduce, options), raw, mean);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monte-Carlo

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stateless stream: output j of sample i is a hash of (seed, i, j).
class CounterRng
{
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t index) : key_(splitmix64(seed ^ splitmix64(index))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return splitmix64(key_ + 0x632BE59BD9B4E019ULL * ++counter_); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Draws support indices with the exact rational probabilities when the
// common denominator fits in 63 bits.
class DiscreteDraw
{
public:
    explicit DiscreteDraw(const DistributionSpec& d)
    {
        Integer den = 1;
        for (const auto& p : d.probs()) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.get_den().get_mpz_t());
        }
        exact_ = den.fits_slong_p();
        if (exact_) {
            denominator_ = static_cast<std::uint64_t>(den.get_si());
            std::uint64_t acc = 0;
            for (const auto& p : d.probs()) {
                const Integer scaled = p.get_num() * (den / p.get_den());
                acc += static_cast<std::uint64_t>(scaled.get_si());
                thresholds_.push_back(acc);
            }
        } else {
            double acc = 0;
            for (const auto& p : d.probs()) {
                acc += p.get_d();
                cumulative_.push_back(acc);
            }
        }
    }

    std::size_t operator()(CounterRng& rng) const
    {
        if (exact_) {
            const std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, denominator_ - 1)(rng);
            return std::upper_bound(thresholds_.begin(), thresholds_.end(), u) - thresholds_.begin();
        }
        const double u = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
    }

private:
    bool exact_ = true;
    std::uint64_t denominator_ = 1;
    std::vector<std::uint64_t> thresholds_;
    std::vector<double> cumulative_;
};

struct Moments {
    double count = 0;
    double mean = 0;
    double m2 = 0; // sum of squared deviations

    // Chan et al. pairwise combination
    void merge(const Moments& o)
    {
        if (o.count == 0) {
            return;
        }
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }
};

// Neumaier compensated sum.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0;
    double c_ = 0;
};

Moments block_moments(const std::vector<double>& xs)
{
    Moments m;
    if (xs.empty()) {
        return m;
    }
    CompensatedSum s;
    for (double x : xs) {
        s.add(x);
    }
    m.count = static_cast<double>(xs.size());
    m.mean = s.value() / m.count;
    CompensatedSum dev;
    for (double x : xs) {
        dev.add((x - m.mean) * (x - m.mean));
    }
    m.m2 = dev.value();
    return m;
}

constexpr std::uint64_t kBlock = 4096;

} // namespace

nlohmann::json EstimateReport::to_json() const
{
    nlohmann::json j = {{"estimate", estimate}, {"std_error", std_error}, {"samples", samples}, {"seed", seed}};
    if (exact_target) {
        j["exact_target"] = exact_target->get_str();
    }
    return j;
}

EstimateReport mc_estimate(const DistributionSpec& d, int k, int n, std::uint64_t samples, std::uint64_t seed,
                           const SamplerOptions& options)
{
    if (samples < 2) {
        throw DomainError("Monte-Carlo estimation needs at least 2 samples");
    }
    if (k < 1 || n < 0) {
        throw DomainError("need k >= 1 and n >= 0");
    }
    const std::size_t cells = static_cast<std::size_t>(n) * n;

    // Finite supports are scaled to integers so each determinant is exact.
    Integer scale = 1;
    std::vector<Integer> scaled_values;
    if (d.finite_support()) {
        for (const auto& v : d.values()) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
        }
        for (const auto& v : d.values()) {
            scaled_values.push_back(v.get_num() * (scale / v.get_den()));
        }
    }
    Integer det_scale = 1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * k; ++i) {
        det_scale *= scale;
    }
    const std::optional<DiscreteDraw> draw =
        d.finite_support() ? std::optional<DiscreteDraw>(DiscreteDraw(d)) : std::nullopt;

    auto sample_value = [&](std::uint64_t index) -> double {
        CounterRng rng(seed, index);
        if (draw) {
            std::vector<Integer> a(cells);
            for (auto& x : a) {
                x = scaled_values[(*draw)(rng)];
            }
            Integer det = determinant_bareiss(std::move(a), n);
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), det.get_mpz_t(), static_cast<unsigned long>(k));
            return make_rational(power, det_scale).get_d();
        }
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> a(cells);
        for (auto& x : a) {
            x = normal(rng);
        }
        return std::pow(determinant_lu(std::move(a), n), k);
    };

    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<Moments> per_block(blocks);
    auto run_blocks = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<double> xs;
        for (std::uint64_t b = first; b < last; ++b) {
            const std::uint64_t begin = b * kBlock;
            const std::uint64_t end = std::min(samples, begin + kBlock);
            xs.clear();
            for (std::uint64_t i = begin; i < end; ++i) {
                xs.push_back(sample_value(i));
            }
            per_block[b] = block_moments(xs);
        }
    };

    unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (workers <= 1) {
        run_blocks(0, blocks);
    } else {
        std::vector<std::jthread> threads;
        const std::uint64_t per_worker = (blocks + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = std::min(blocks, w * per_worker);
            const std::uint64_t last = std::min(blocks, first + per_worker);
            threads.emplace_back(run_blocks, first, last);
        }
    }

    // block order is fixed, so the merge is independent of the worker count
    Moments total;
    for (const auto& m : per_block) {
        total.merge(m);
    }

    EstimateReport report;
    report.estimate = total.mean;
    report.std_error = std::sqrt(total.m2 / (total.count - 1)) / std::sqrt(total.count);
    report.samples = samples;
    report.seed = seed;
    report.exact_target = exact_target(d, k, n);
    return report;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

Rational exhaustive_discrete(const DistributionSpec& d, int k, int n, std::uint64_t budget)
{
    if (!d.finite_support()) {
        throw DomainError("exhaustive enumeration needs a finite-support distribution");
    }
    if (k < 1 || n < 0) {
        throw DomainError("need k >= 1 and n >= 0");
    }
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    const std::uint64_t support = d.values().size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        if (total > budget / support) {
            throw BudgetExceeded(total > UINT64_MAX / support ? UINT64_MAX : total * support, budget);
        }
        total *= support;
    }
    if (total > budget) {
        throw BudgetExceeded(total, budget);
    }

    Integer scale = 1;
    for (const auto& v : d.values()) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
    }
    std::vector<Integer> scaled;
    for (const auto& v : d.values()) {
        scaled.push_back(v.get_num() * (scale / v.get_den()));
    }

    std::vector<std::size_t> digits(cells, 0);
    Rational sum = 0;
    for (std::uint64_t count = 0; count < total; ++count) {
        std::vector<Integer> a(cells);
        Rational prob = 1;
        for (std::size_t c = 0; c < cells; ++c) {
            a[c] = scaled[digits[c]];
            prob *= d.probs()[digits[c]];
        }
        if (prob != 0) {
            Integer det = determinant_bareiss(std::move(a), n);
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), det.get_mpz_t(), static_cast<unsigned long>(k));
            sum += prob * Rational(power);
        }
        for (std::size_t c = cells; c-- > 0;) {
            if (++digits[c] < support) {
                break;
            }
            digits[c] = 0;
        }
    }
    Integer denom = 1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * k; ++i) {
        denom *= scale;
    }
    return sum / Rational(denom);
}

} // namespace detmom
