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

#ifndef DETMOM_SAMPLER_HPP
#define DETMOM_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "detmom/rational.hpp"
#include "detmom/table_oracle.hpp"

namespace detmom
{

// Entry distribution whose raw moments are known exactly.
class DistributionSpec
{
public:
    enum class Kind { rademacher, discrete, std_normal };

    static DistributionSpec rademacher();
    static DistributionSpec std_normal();
    // Finite support; probabilities must be >= 0 and sum to exactly 1.
    static DistributionSpec discrete(std::vector<Rational> values, std::vector<Rational> probs);

    // "rademacher", "normal" (or "std_normal"), "discrete:v1:p1,v2:p2,..."
    static DistributionSpec parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool finite_support() const noexcept { return kind_ != Kind::std_normal; }
    // Support and probabilities; Rademacher reports {-1, 1} with {1/2, 1/2}.
    const std::vector<Rational>& values() const noexcept { return values_; }
    const std::vector<Rational>& probs() const noexcept { return probs_; }

    std::string to_string() const;

private:
    DistributionSpec(Kind kind, std::vector<Rational> values, std::vector<Rational> probs);

    Kind kind_;
    std::vector<Rational> values_;
    std::vector<Rational> probs_;
};

// Exact raw moments m_1..m_up_to (keys 1..up_to).
std::map<int, Rational> exact_moments(const DistributionSpec& d, int up_to);
// Exact central moments mu_2..mu_up_to (keys 2..up_to).
std::map<int, Rational> exact_central_moments(const DistributionSpec& d, int up_to);

// E[det(A)^k] from a closed form evaluated at the exact moments of d. Falls
// back to a small oracle run when no closed form covers (k, n).
std::optional<Rational> exact_target(const DistributionSpec& d, int k, int n);

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<Rational> exact_target;

    nlohmann::json to_json() const;
};

struct SamplerOptions {
    // 0 picks std::thread::hardware_concurrency(). The estimate does not
    // depend on the worker count.
    unsigned workers = 1;
};

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;

// Monte-Carlo estimate of E[det(A)^k]. Sample i is drawn from a generator
// keyed by (seed, i), so results are reproducible for a fixed seed.
EstimateReport mc_estimate(const DistributionSpec& d, int k, int n, std::uint64_t samples, std::uint64_t seed,
                           const SamplerOptions& options = {});

// Exact E[det(A)^k] by enumerating all |support|^(n*n) matrices.
Rational exhaustive_discrete(const DistributionSpec& d, int k, int n, std::uint64_t budget = kDefaultBudget);

} // namespace detmom

#endif
