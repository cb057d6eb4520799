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

#include "detmom/verify.hpp"

#include <cmath>
#include <sstream>

#include "detmom/closed_forms.hpp"
#include "detmom/egf_series.hpp"
#include "detmom/errors.hpp"
#include "detmom/sampler.hpp"
#include "detmom/table_oracle.hpp"

namespace detmom
{

bool VerificationReport::passed() const
{
    return first_failure() == nullptr;
}

const CheckResult* VerificationReport::first_failure() const
{
    for (const auto& c : checks) {
        if (!c.pass) {
            return &c;
        }
    }
    return nullptr;
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    }
    return {{"suite", suite}, {"passed", passed()}, {"checks", std::move(list)}};
}

namespace
{

MomentPolynomial m(int r)
{
    return MomentPolynomial::variable(Basis::raw, r);
}

MomentPolynomial mu(int r)
{
    return MomentPolynomial::variable(Basis::central, r);
}

class Checker
{
public:
    explicit Checker(VerificationReport& report) : report_(report) {}

    void poly(std::string name, const MomentPolynomial& expected, const MomentPolynomial& got)
    {
        report_.checks.push_back({std::move(name), to_text(expected), to_text(got), expected == got});
    }

    void value(std::string name, const Rational& expected, const Rational& got)
    {
        report_.checks.push_back({std::move(name), expected.get_str(), got.get_str(), expected == got});
    }

    void series(std::string name, const TruncatedEGF& expected, const TruncatedEGF& got)
    {
        bool same = expected.order() == got.order();
        std::string exp_text = "order " + std::to_string(expected.order());
        std::string got_text = "order " + std::to_string(got.order());
        for (int n = 0; same && n <= expected.order(); ++n) {
            if (!(expected.coeff(n) == got.coeff(n))) {
                same = false;
                exp_text = "t^" + std::to_string(n) + ": " + to_text(expected.coeff(n));
                got_text = "t^" + std::to_string(n) + ": " + to_text(got.coeff(n));
            }
        }
        report_.checks.push_back({std::move(name), exp_text, got_text, same});
    }

    void structure(const std::string& name, const MomentPolynomial& p, int k, int n)
    {
        const auto weights = grade_weight(p);
        const bool graded = weights == std::set<unsigned>{static_cast<unsigned>(k * n)};
        std::string got;
        for (auto w : weights) {
            got += (got.empty() ? "" : ",") + std::to_string(w);
        }
        report_.checks.push_back({name + " grade", std::to_string(k * n), got, graded});
        if (k % 2 == 0) {
            const auto flipped = scale_symbols(p, [](int r) { return Rational(r % 2 == 0 ? 1 : -1); });
            report_.checks.push_back({name + " sign symmetry", to_text(p), to_text(flipped), flipped == p});
        }
    }

private:
    VerificationReport& report_;
};

OracleOptions oracle_options(const VerifyOptions& v)
{
    OracleOptions o;
    o.workers = v.workers;
    return o;
}

void small_suite(Checker& check, const VerifyOptions& v)
{
    const auto opts = oracle_options(v);
    const auto plain = [&](int k, int n) {
        return oracle_fk(k, n, OracleMode::plain, k % 2 == 0 ? Reduction::first_row_identity : Reduction::full,
                         opts);
    };
    const auto m1sq = m(1).pow(2);

    const auto f22 = plain(2, 2);
    check.poly("oracle f2(2)", Rational(2) * m(2).pow(2) - Rational(2) * m(1).pow(4), f22);
    const auto f23 = plain(2, 3);
    check.poly("oracle f2(3)", Rational(6) * (m(2) + Rational(2) * m1sq) * (m(2) - m1sq).pow(2), f23);
    const auto f42 = plain(4, 2);
    check.poly("oracle f4(2)",
               Rational(2) * m(4).pow(2) - Rational(8) * m1sq * m(3).pow(2) + Rational(6) * m(2).pow(4), f42);

    const auto c1 = mu(1);
    const auto marked_expected =
        Rational(2)
        * (mu(4).pow(2) + Rational(3) * mu(2).pow(4) + Rational(8) * c1 * mu(3) * mu(4)
           + Rational(12) * c1.pow(2) * mu(2) * mu(4) + Rational(12) * c1.pow(2) * mu(2).pow(3)
           + Rational(12) * c1.pow(2) * mu(3).pow(2) + Rational(24) * c1.pow(3) * mu(2) * mu(3)
           + Rational(2) * c1.pow(4) * mu(4) + Rational(18) * c1.pow(4) * mu(2).pow(2));
    const auto marked42 = oracle_fk(4, 2, OracleMode::marked, Reduction::first_row_identity, opts);
    check.poly("marked oracle f4(2)", marked_expected, marked42);
    check.poly("marked f4(2) to raw", f42, central_to_raw(marked42));

    check.structure("oracle f2(2)", f22, 2, 2);
    check.structure("oracle f2(3)", f23, 2, 3);
    check.structure("oracle f4(2)", f42, 4, 2);
    check.structure("marked oracle f4(2)", marked42, 4, 2);

    for (int n = 0; n <= 6; ++n) {
        const auto p = plain(2, n);
        check.poly("oracle = f2_explicit, n=" + std::to_string(n), f2_explicit(n), p);
        check.structure("f2(" + std::to_string(n) + ")", p, 2, n);
    }
    for (int n = 0; n <= 4; ++n) {
        const auto p = plain(4, n);
        check.poly("oracle = f4_explicit, n=" + std::to_string(n), central_to_raw(f4_explicit(n)), p);
        check.structure("f4(" + std::to_string(n) + ")", p, 4, n);
    }
    for (int n = 0; n <= 3; ++n) {
        const auto p = specialize(plain(6, n), {}, Rational(0));
        check.poly("oracle|m1=0 = f6_central_explicit, n=" + std::to_string(n), f6_central_explicit(n), p);
        check.structure("f6(" + std::to_string(n) + ")|m1=0", p, 6, n);
    }

    const auto rad = DistributionSpec::rademacher();
    check.value("exhaustive rademacher E[det^2], n=2", Rational(2), exhaustive_discrete(rad, 2, 2));
    check.value("exhaustive rademacher E[det^4], n=2", Rational(8), exhaustive_discrete(rad, 4, 2));
    check.value("exhaustive rademacher E[det^4], n=3", Rational(96), exhaustive_discrete(rad, 4, 3));
    check.value("exhaustive rademacher E[det^4], n=3 vs f4",
                evaluate(f4_explicit(3), exact_central_moments(rad, 4), Rational(0)),
                exhaustive_discrete(rad, 4, 3));
}

void series_suite(Checker& check)
{
    constexpr int order = 8;
    const auto F2 = F2_series(order);
    const auto F4 = F4_series(order);
    const auto F6 = F6_central_series(order);
    for (int n = 0; n <= order; ++n) {
        const auto tag = ", n=" + std::to_string(n);
        check.poly("F2 series = f2_explicit" + tag, f2_explicit(n), extract_fk(F2, n));
        check.poly("F4 series = f4_explicit" + tag, f4_explicit(n), extract_fk(F4, n));
        check.poly("F6 series = f6_central_explicit" + tag, f6_central_explicit(n), extract_fk(F6, n));
    }

    constexpr int assembly_order = 10;
    const auto F = Convention::f_convention;
    const auto cross = TruncatedEGF::one(Basis::central, assembly_order, F)
                       + TruncatedEGF::linear(mu(1) * mu(3), assembly_order, F);
    const auto assembled = series_pow(cross, 4) * s4_series(S4Part::s0, assembly_order)
                           + series_pow(cross, 2) * s4_series(S4Part::s2, assembly_order)
                           + s4_series(S4Part::s4, assembly_order);
    const auto F4_unit = map_coefficients(F4_series(assembly_order),
                                          [](const MomentPolynomial& p) { return specialize(p, {{2, Rational(1)}}); });
    check.series("S-series assembly = F4|mu2=1", F4_unit, assembled);
    check.series("S4 = S41 + S42", s4_series(S4Part::s4, assembly_order),
                 s4_series(S4Part::s4_one_column, assembly_order) + s4_series(S4Part::s4_two_columns, assembly_order));

    const auto gauss = gaussian_moments(8);
    for (int n = 0; n <= 10; ++n) {
        const auto tag = ", n=" + std::to_string(n);
        check.value("gaussian f2" + tag, Rational(gaussian_fk(2, n)), evaluate(f2_explicit(n), gauss, Rational(0)));
        check.value("gaussian f4" + tag, Rational(gaussian_fk(4, n)), evaluate(f4_explicit(n), gauss, Rational(0)));
        check.value("gaussian f6" + tag, Rational(gaussian_fk(6, n)),
                    evaluate(f6_central_explicit(n), gauss, Rational(0)));
    }

    // derangements: SET(CYC_{>=2}(atom)) = exp(-t) / (1 - t)
    const auto P = Convention::plain_egf;
    const auto atom = TruncatedEGF::linear(MomentPolynomial::constant(Rational(1)), 12, P);
    const auto derangements = series_exp(series_log_inv(atom, LogInvKind::log_geom) - atom);
    check.value("derangements of 4", Rational(9), extract_egf(derangements, 4).constant_term());

    // SET(CYC(a)) = SEQ(a)
    std::vector<MomentPolynomial> ac(13, MomentPolynomial());
    ac[1] = m(2);
    ac[2] = m(1).pow(2);
    ac[3] = Rational(-1, 3) * m(3);
    const TruncatedEGF base(ac, P);
    check.series("SET(CYC(a)) = SEQ(a)", series_log_inv(base, LogInvKind::geom),
                 series_exp(series_log_inv(base, LogInvKind::log_geom)));
}

void montecarlo_suite(Checker&, VerificationReport& report, const VerifyOptions& v)
{
    struct Case {
        DistributionSpec dist;
        int k;
        int n;
        Rational target;
    };
    const Case cases[] = {{DistributionSpec::rademacher(), 2, 3, Rational(6)},
                          {DistributionSpec::rademacher(), 4, 3, Rational(96)},
                          {DistributionSpec::std_normal(), 6, 2, Rational(720)}};
    SamplerOptions opts;
    opts.workers = v.workers;
    for (const auto& c : cases) {
        const auto r = mc_estimate(c.dist, c.k, c.n, v.samples, v.seed, opts);
        const double diff = std::abs(r.estimate - c.target.get_d());
        std::ostringstream expected;
        expected << c.target.get_str() << " within 5 sigma";
        std::ostringstream got;
        got << r.estimate << " (std_error " << r.std_error << ")";
        const bool target_ok = r.exact_target && *r.exact_target == c.target;
        report.checks.push_back({"montecarlo " + c.dist.to_string() + " k=" + std::to_string(c.k)
                                     + " n=" + std::to_string(c.n),
                                 expected.str(), got.str(), target_ok && diff <= 5.0 * r.std_error});
    }
}

} // namespace

VerificationReport run_verification(const std::string& suite, const VerifyOptions& options)
{
    VerificationReport report{suite, {}};
    Checker check(report);
    if (suite == "small") {
        small_suite(check, options);
    } else if (suite == "series") {
        series_suite(check);
    } else if (suite == "montecarlo") {
        montecarlo_suite(check, report, options);
    } else if (suite == "all") {
        small_suite(check, options);
        series_suite(check);
        montecarlo_suite(check, report, options);
    } else {
        throw DomainError("unknown verification suite '" + suite + "' (expected small, series, montecarlo or all)");
    }
    return report;
}

} // namespace detmom
