// SPDX-License-Identifier: Apache-2.0

#include <crispla/sim.hpp>

#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

using namespace crispla;

namespace
{
ExperimentPlan small_plan(StrategyKind kind, AttackerSpec attacker = AttackerSpec::passive({3.4, 2.5, 3.0}))
{
    ExperimentPlan p;
    p.strategy = kind;
    p.pla_mode = default_pla_mode(kind);
    p.rows = 10;
    p.cols = 6;
    p.attacker = attacker;
    p.trials = 400;
    p.master_seed = 3;
    return p;
}

double mean(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }
} // namespace

TEST_CASE("Noise calibration follows the SNR", "[sim]")
{
    const SystemModel sys;
    const auto n10 = calibrate_noise(sys, 10.0);
    const auto n20 = calibrate_noise(sys, 20.0);
    CHECK(n10.sigma2() / n20.sigma2() == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(calibrate_noise(sys, 0.0).sigma2() == Catch::Approx(10.0 * n10.sigma2()).epsilon(1e-12));

    Scene s;
    const auto link = make_reflected_link(s, s.alice, sys.led, sys.pd, sys.power);
    const auto e = link.received(fixed_cyclic(1500));
    double e2 = 0.0, h2 = 0.0;
    for (std::size_t c = 0; c < 4; ++c)
    {
        e2 += e[c] * e[c];
        h2 += link.gains(fixed_cyclic(1500))[c] * link.gains(fixed_cyclic(1500))[c];
    }
    CHECK(n10.sigma2() == Catch::Approx(e2 / 10.0).epsilon(1e-12));
    CHECK(calibrate_noise(sys, 10.0, NoiseCalibration::gain).sigma2() == Catch::Approx(h2 / 10.0).epsilon(1e-12));
}

TEST_CASE("Noise is zero mean with the calibrated variance", "[sim]")
{
    const NoiseModel noise(2.5);
    Engine rng(6);
    double m = 0.0, m2 = 0.0;
    const int n = 40000;
    for (int k = 0; k < n; ++k)
    {
        const auto w = noise.sample(rng);
        for (double v : w.values)
        {
            m += v;
            m2 += v * v;
        }
    }
    m /= 4.0 * n;
    const double var = m2 / (4.0 * n) - m * m;
    CHECK(std::abs(m) < 4.0 * std::sqrt(2.5 / (4.0 * n)));
    CHECK(var == Catch::Approx(2.5).epsilon(0.02));
    Engine r(1);
    CHECK(NoiseModel(0.0).observe({{1.0, 2.0, 3.0, 4.0}}, r) == ColorPowers{{1.0, 2.0, 3.0, 4.0}});
}

TEST_CASE("Authentic scores are sigma^2 times a chi-square with four degrees of freedom", "[sim]")
{
    for (auto kind : {StrategyKind::FixedCyclic, StrategyKind::DynamicRandom})
    {
        auto plan = small_plan(kind);
        plan.trials = 4000;
        const auto r = run_experiment(plan);
        const double s2 = r.noise.sigma2();
        CHECK(mean(r.scores.h0) / s2 == Catch::Approx(4.0).epsilon(0.05));
        std::vector<double> scaled;
        for (double v : r.scores.h0)
            scaled.push_back(v / s2);
        // chi-square(4) CDF: 1 - exp(-x/2)(1 + x/2)
        double d = 0.0;
        std::sort(scaled.begin(), scaled.end());
        for (std::size_t i = 0; i < scaled.size(); ++i)
        {
            const double x = scaled[i];
            const double f = 1.0 - std::exp(-x / 2.0) * (1.0 + x / 2.0);
            d = std::max({d, std::abs(f - double(i) / scaled.size()), std::abs(f - double(i + 1) / scaled.size())});
        }
        CHECK(d < oracle::ks_critical_one_sample(scaled.size()));
    }
}

TEST_CASE("Scores do not depend on the thread count", "[sim]")
{
    for (auto kind : {StrategyKind::StaticRandom, StrategyKind::DynamicRandom, StrategyKind::RandomPermutation})
    {
        const auto plan = small_plan(kind);
        const auto one = run_experiment(plan, 1);
        const auto four = run_experiment(plan, 4);
        const auto seven = run_experiment(plan, 7);
        CHECK(one.scores.h0 == four.scores.h0);
        CHECK(one.scores.h1 == four.scores.h1);
        CHECK(one.scores.h1 == seven.scores.h1);
    }
}

TEST_CASE("Seeds change the draws but not the plan's physics", "[sim]")
{
    auto plan = small_plan(StrategyKind::DynamicRandom);
    const auto a = run_experiment(plan);
    plan.master_seed = 4;
    const auto b = run_experiment(plan);
    CHECK(a.scores.h0 != b.scores.h0);
    CHECK(a.noise.sigma2() == b.noise.sigma2());
    const auto id_a = plan.id();
    plan.trials += 1;
    CHECK(plan.id() != id_a);
}

TEST_CASE("Attackers of one strategy share the challenge stream", "[sim]")
{
    const auto p1 = small_plan(StrategyKind::DynamicRandom, AttackerSpec::passive({2.7, 2.5, 3.0}));
    const auto p2 = small_plan(StrategyKind::DynamicRandom, AttackerSpec::passive({4.1, 2.5, 3.0}));
    CHECK(p1.cris_key() == p2.cris_key());
    CHECK(p1.stream_key() != p2.stream_key());
}

TEST_CASE("Higher SNR separates the hypotheses better", "[sim]")
{
    auto plan = small_plan(StrategyKind::DynamicRandom);
    plan.trials = 2000;
    plan.calibration_rows = 10;
    plan.calibration_cols = 6;
    double previous = 1.0;
    for (double snr : {0.0, 10.0, 20.0})
    {
        plan.snr_db = snr;
        const double e = equal_error_rate(run_experiment(plan).scores).eer;
        INFO("snr " << snr << " eer " << e);
        CHECK(e < previous);
        previous = e;
    }
}

TEST_CASE("A clone at Alice's position is indistinguishable", "[sim]")
{
    auto plan = small_plan(StrategyKind::DynamicRandom, AttackerSpec::passive({2.5, 2.5, 3.0}));
    plan.trials = 4000;
    const auto e = equal_error_rate(run_experiment(plan).scores);
    CHECK(std::abs(e.eer - 0.5) < 4.0 * e.std_error + 0.02);
}

TEST_CASE("Measured references run in both modes", "[sim]")
{
    auto sc = small_plan(StrategyKind::FixedCyclic);
    sc.reference = ReferenceMode::measured;
    sc.ia_probes = 8;
    CHECK(run_experiment(sc).scores.h0.size() == 400);

    auto cr = small_plan(StrategyKind::DynamicRandom);
    cr.reference = ReferenceMode::measured;
    const auto r = run_experiment(cr);
    CHECK(mean(r.scores.h0) / r.noise.sigma2() > 3.0);
}

TEST_CASE("Plan validation", "[sim]")
{
    auto plan = small_plan(StrategyKind::FixedCyclic);
    CHECK(plan.violations().empty());
    plan.pla_mode = PlaMode::CR;
    CHECK(plan.violations().size() == 1);
    plan = small_plan(StrategyKind::FixedCyclic);
    plan.rows = 60;
    plan.cols = 40;
    CHECK(plan.violations().size() == 2);
    CHECK_THROWS_AS(run_experiment(plan), std::invalid_argument);
    plan = small_plan(StrategyKind::FixedCyclic, AttackerSpec::passive({9.0, 2.5, 3.0}));
    CHECK_FALSE(plan.violations().empty());
}

TEST_CASE("Suite records failing plans and continues", "[sim]")
{
    auto good = small_plan(StrategyKind::FixedCyclic);
    good.trials = 50;
    auto bad = good;
    bad.rows = 60;
    bad.cols = 40;
    const auto suite = run_suite({good, bad, good});
    REQUIRE(suite.size() == 3);
    CHECK(suite[0].error.empty());
    CHECK_FALSE(suite[1].error.empty());
    CHECK_FALSE(suite[1].result.has_value());
    CHECK(suite[2].eer.eer == suite[0].eer.eer);
    CHECK_THROWS_AS(run_suite({}), std::invalid_argument);
}
