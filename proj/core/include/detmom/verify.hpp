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

#ifndef DETMOM_VERIFY_HPP
#define DETMOM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace detmom
{

struct CheckResult {
    std::string name;
    std::string expected;
    std::string got;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* first_failure() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::uint64_t samples = 100'000;
    unsigned workers = 0;
};

// Suite "small" checks the oracle against the worked examples and the
// explicit formulas. Suite "series" checks generating functions against the
// explicit sums. Suite "montecarlo" runs seeded 5-sigma checks. Suite "all"
// runs every check.
VerificationReport run_verification(const std::string& suite, const VerifyOptions& options = {});

} // namespace detmom

#endif
