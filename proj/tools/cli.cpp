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

#include "cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "detmom/closed_forms.hpp"
#include "detmom/egf_series.hpp"
#include "detmom/errors.hpp"
#include "detmom/moment_polynomial.hpp"
#include "detmom/sampler.hpp"
#include "detmom/table_oracle.hpp"
#include "detmom/verify.hpp"

namespace detmom::cli
{

namespace
{

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct CommandConfig {
    int k = 0;
    int n = 0;
    int order = kDefaultSeriesOrder;
    std::string basis = "raw";
    std::string format = "text";
    std::optional<std::uint64_t> budget;
    std::uint64_t samples = kDefaultSamples;
    std::uint64_t seed = 42;
    std::string dist = "rademacher";
    std::string suite = "all";
    std::string mode = "plain";
    std::string reduce = "auto";
    std::string name;
    unsigned workers = 0;
    bool central_only = false;
    bool gaussian = false;
    bool extract = false;
    bool quiet = false;
};

void validate(const CommandConfig& c, bool needs_kn)
{
    if (needs_kn) {
        if (c.k < 1) {
            throw UsageError("--k must be >= 1");
        }
        if (c.n < 0) {
            throw UsageError("--n must be >= 0");
        }
    }
    if (c.order < 0 || c.order > 64) {
        throw UsageError("--order must lie in [0, 64]");
    }
}

std::uint64_t resolve_budget(const CommandConfig& c)
{
    if (c.budget) {
        return *c.budget;
    }
    if (const char* env = std::getenv("DETMOM_BUDGET"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto value = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
            return value;
        } catch (const std::exception&) {
            throw UsageError(std::string("DETMOM_BUDGET is not an unsigned integer: '") + env + "'");
        }
    }
    return kDefaultBudget;
}

unsigned resolve_workers(const CommandConfig& c)
{
    return c.workers != 0 ? c.workers : std::max(1u, std::thread::hardware_concurrency());
}

void print_polynomial(std::ostream& out, const MomentPolynomial& p, const std::string& format)
{
    if (format == "json") {
        out << to_json(p).dump() << '\n';
    } else {
        out << to_text(p) << '\n';
    }
}

int cmd_closed(const CommandConfig& c, std::ostream& out)
{
    validate(c, true);
    const Basis basis = parse_basis(c.basis);
    if (c.gaussian) {
        if (c.k % 2 != 0) {
            throw UsageError("--gaussian needs an even --k");
        }
        const auto value = gaussian_fk(c.k, c.n);
        if (c.format == "json") {
            out << nlohmann::json{{"k", c.k}, {"n", c.n}, {"value", value.get_str()}}.dump() << '\n';
        } else {
            out << value.get_str() << '\n';
        }
        return kExitOk;
    }
    MomentPolynomial p;
    switch (c.k) {
    case 2:
        p = to_basis(f2_explicit(c.n), basis);
        break;
    case 4:
        p = to_basis(f4_explicit(c.n), basis);
        break;
    case 6:
        if (!c.central_only) {
            throw UsageError("k = 6 is only known for mean-zero entries; pass --central-only to accept m1 = 0");
        }
        // with m1 = 0 the raw and central moments coincide
        p = relabel_basis(f6_central_explicit(c.n), basis);
        break;
    default:
        throw UsageError("no closed form for k = " + std::to_string(c.k)
                         + "; supported: --k 2, --k 4, --k 6 --central-only, or --gaussian with any even k");
    }
    print_polynomial(out, p, c.format);
    return kExitOk;
}

int cmd_oracle(const CommandConfig& c, std::ostream& out, std::ostream& err)
{
    validate(c, true);
    OracleMode mode;
    if (c.mode == "plain") {
        mode = OracleMode::plain;
    } else if (c.mode == "marked") {
        mode = OracleMode::marked;
    } else {
        throw UsageError("--mode must be plain or marked");
    }
    Reduction reduce;
    if (c.reduce == "auto") {
        reduce = c.k % 2 == 0 ? Reduction::first_row_identity : Reduction::full;
    } else if (c.reduce == "full") {
        reduce = Reduction::full;
    } else if (c.reduce == "first-row") {
        reduce = Reduction::first_row_identity;
    } else {
        throw UsageError("--reduce must be auto, full or first-row");
    }

    OracleOptions options;
    options.budget = resolve_budget(c);
    options.workers = resolve_workers(c);
    if (!c.quiet) {
        options.progress = [&err, last = std::uint64_t{0}](std::uint64_t done, std::uint64_t total) mutable {
            const std::uint64_t step = done * 20 / std::max<std::uint64_t>(total, 1);
            if (step != last || done == total) {
                last = step;
                err << "processed " << done << "/" << total << " tables\n";
            }
        };
    }
    const auto p = oracle_fk(c.k, c.n, mode, reduce, options);
    if (c.k % 2 != 0) {
        err << "note: no closed form exists for odd k; this result is unverified\n";
    }
    print_polynomial(out, p, c.format);
    return kExitOk;
}

TruncatedEGF named_series(const CommandConfig& c)
{
    std::string name = c.name;
    if (name.empty()) {
        if (c.k == 2 || c.k == 4 || c.k == 6) {
            name = "F" + std::to_string(c.k);
        } else {
            throw UsageError("series needs --name or --k in {2, 4, 6}");
        }
    }
    if (name == "F2") {
        return F2_series(c.order);
    }
    if (name == "F4") {
        return F4_series(c.order);
    }
    if (name == "F6") {
        if (!c.central_only) {
            throw UsageError("F6 is only known for mean-zero entries; pass --central-only to accept m1 = 0");
        }
        return F6_central_series(c.order);
    }
    if (name == "N6") {
        return N6_series(c.order);
    }
    try {
        return s4_series(parse_s4_part(name), c.order);
    } catch (const DomainError&) {
        throw UsageError("unknown series '" + name + "'; supported: F2, F4, F6, N6, S0, S2, S41, S42, S4");
    }
}

int cmd_series(const CommandConfig& c, std::ostream& out)
{
    validate(c, false);
    const TruncatedEGF s = named_series(c);
    if (!c.extract) {
        if (c.format == "json") {
            out << to_json(s).dump() << '\n';
        } else {
            out << to_text(s);
        }
        return kExitOk;
    }
    nlohmann::json values = nlohmann::json::array();
    for (int n = 0; n <= s.order(); ++n) {
        const auto fk = extract_fk(s, n);
        if (c.format == "json") {
            values.push_back({{"n", n}, {"poly", to_json(fk)}});
        } else {
            out << n << ": " << to_text(fk) << '\n';
        }
    }
    if (c.format == "json") {
        out << nlohmann::json{{"order", s.order()}, {"basis", to_string(s.basis())}, {"values", values}}.dump()
            << '\n';
    }
    return kExitOk;
}

int cmd_mc(const CommandConfig& c, std::ostream& out)
{
    validate(c, true);
    SamplerOptions options;
    options.workers = resolve_workers(c);
    const auto report = mc_estimate(DistributionSpec::parse(c.dist), c.k, c.n, c.samples, c.seed, options);
    if (c.format == "json") {
        out << report.to_json().dump() << '\n';
    } else {
        out << "estimate " << report.estimate << " std_error " << report.std_error << " samples " << report.samples
            << " seed " << report.seed;
        if (report.exact_target) {
            out << " exact_target " << report.exact_target->get_str();
        }
        out << '\n';
    }
    return kExitOk;
}

int cmd_exhaustive(const CommandConfig& c, std::ostream& out)
{
    validate(c, true);
    const auto value = exhaustive_discrete(DistributionSpec::parse(c.dist), c.k, c.n, resolve_budget(c));
    if (c.format == "json") {
        out << nlohmann::json{{"k", c.k}, {"n", c.n}, {"dist", c.dist}, {"value", value.get_str()}}.dump() << '\n';
    } else {
        out << value.get_str() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const CommandConfig& c, std::ostream& out, std::ostream& err)
{
    VerifyOptions options;
    options.seed = c.seed;
    options.samples = c.samples == kDefaultSamples ? VerifyOptions{}.samples : c.samples;
    options.workers = resolve_workers(c);
    const auto report = run_verification(c.suite, options);
    out << report.to_json().dump(2) << '\n';
    if (const auto* failure = report.first_failure()) {
        err << "verification failed: " << failure->name << '\n'
            << "  expected: " << failure->expected << '\n'
            << "  got:      " << failure->got << '\n';
        return kExitVerificationFailed;
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CommandConfig c;
    CLI::App app{"Exact moments E[det(A)^k] of random matrices with i.i.d. entries", "detmom"};
    app.require_subcommand(1);
    app.add_option("--workers", c.workers, "Worker threads for oracle and sampler (default: all cores)");

    const auto add_kn = [&](CLI::App* sub) {
        sub->add_option("--k", c.k, "Moment order k")->required();
        sub->add_option("--n", c.n, "Matrix size n")->required();
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* closed = app.add_subcommand("closed", "Closed-form f_k(n) as a moment polynomial");
    add_kn(closed);
    closed->add_option("--basis", c.basis, "Moment basis")->check(CLI::IsMember({"raw", "central"}));
    add_format(closed);
    closed->add_flag("--central-only", c.central_only, "Accept that the k = 6 formula assumes m1 = 0");
    closed->add_flag("--gaussian", c.gaussian, "Standard-normal entries, any even k");

    auto* oracle = app.add_subcommand("oracle", "Brute-force f_k(n) over permutation tables");
    add_kn(oracle);
    oracle->add_option("--mode", c.mode, "plain or marked tables")->check(CLI::IsMember({"plain", "marked"}));
    oracle->add_option("--reduce", c.reduce, "Symmetry reduction (auto uses first-row for even k)")
        ->check(CLI::IsMember({"auto", "full", "first-row"}));
    oracle->add_option("--budget", c.budget, "Maximum number of weight evaluations");
    oracle->add_flag("--quiet", c.quiet, "No progress on stderr");
    add_format(oracle);

    auto* series = app.add_subcommand("series", "Truncated generating function F_k(t)");
    series->add_option("--k", c.k, "Shorthand for --name F<k>");
    series->add_option("--name", c.name, "F2, F4, F6, N6, S0, S2, S41, S42 or S4");
    series->add_option("--order", c.order, "Truncation order");
    series->add_flag("--central-only", c.central_only, "Accept that F6 assumes m1 = 0");
    series->add_flag("--extract", c.extract, "Print f_k(n) = n!^2 [t^n] instead of the coefficients");
    add_format(series);

    auto* mc = app.add_subcommand("mc", "Monte-Carlo estimate of E[det(A)^k]");
    add_kn(mc);
    mc->add_option("--dist", c.dist, "rademacher, normal or discrete:v1:p1,v2:p2,...");
    mc->add_option("--samples", c.samples, "Number of samples");
    mc->add_option("--seed", c.seed, "Random seed");
    add_format(mc);

    auto* exhaustive = app.add_subcommand("exhaustive", "Exact E[det(A)^k] over all matrices of a finite support");
    add_kn(exhaustive);
    exhaustive->add_option("--dist", c.dist, "rademacher or discrete:v1:p1,v2:p2,...");
    exhaustive->add_option("--budget", c.budget, "Maximum number of matrices");
    add_format(exhaustive);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", c.suite, "small, series, montecarlo or all")
        ->check(CLI::IsMember({"small", "series", "montecarlo", "all"}));
    verify->add_option("--seed", c.seed, "Seed for the Monte-Carlo suite");
    verify->add_option("--samples", c.samples, "Samples per Monte-Carlo check (default 100000)");

    for (auto* sub : {closed, oracle, series, mc, exhaustive, verify}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (closed->parsed()) {
            return cmd_closed(c, out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(c, out, err);
        }
        if (series->parsed()) {
            return cmd_series(c, out);
        }
        if (mc->parsed()) {
            return cmd_mc(c, out);
        }
        if (exhaustive->parsed()) {
            return cmd_exhaustive(c, out);
        }
        if (verify->parsed()) {
            return cmd_verify(c, out, err);
        }
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return kExitResourceRefused;
    } catch (const CapacityError& e) {
        err << "refused: " << e.what() << '\n';
        return kExitResourceRefused;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace detmom::cli
