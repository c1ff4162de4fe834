// SPDX-License-Identifier: Apache-2.0

#include <crispla/attack.hpp>
#include <crispla/sim.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace crispla;

namespace
{
const LedModel kLed;
const Photodetector kPd;
const PowerModel kPower;
} // namespace

TEST_CASE("Passive attacker at Alice's position receives exactly Alice's power", "[attack]")
{
    const Scene s;
    const PassiveAttacker clone{s.alice.position};
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5; ++k)
    {
        const auto config = uniform_configuration(s.grid.size(), rng);
        const auto alice = kPower.received(cris_channel_gains(s, s.alice, config, kLed, kPd));
        CHECK(passive_received_powers(s, clone, config, kLed, kPd, kPower) == alice);
    }
}

TEST_CASE("Distant passive attackers receive less power under the cyclic profile", "[attack]")
{
    const Scene s;
    const auto config = fixed_cyclic(s.grid.size());
    const auto near = passive_received_powers(s, {{2.7, 2.5, 3.0}}, config, kLed, kPd, kPower);
    const auto far = passive_received_powers(s, {{4.1, 2.5, 3.0}}, config, kLed, kPd, kPower);
    CHECK(far.sum() < near.sum());
    CHECK_THROWS_AS(passive_received_powers(s, {{6.0, 2.5, 3.0}}, config, kLed, kPd, kPower), std::invalid_argument);
}

TEST_CASE("LoS attacker: equal split sums to the budget", "[attack]")
{
    const Scene s;
    LosAttacker a;
    a.power_budget = 4e-12;
    const auto r = los_attack_powers(a, s.bob, kLed, kPd);
    for (std::size_t c = 0; c < 4; ++c)
    {
        CHECK(r.received[c] == 1e-12);
        CHECK(r.transmit[c] * r.gain * r.gain == Catch::Approx(r.received[c]).epsilon(1e-14));
    }
    CHECK(r.received.sum() == Catch::Approx(4e-12).epsilon(1e-15));
    CHECK(r.gain == Catch::Approx(0.000012387850935844650081).epsilon(1e-13));
}

TEST_CASE("LoS attacker: custom split and invalid inputs", "[attack]")
{
    const Scene s;
    LosAttacker a;
    a.power_budget = 10.0;
    a.split = SplitPolicy::custom;
    a.weights = {1.0, 2.0, 3.0, 4.0};
    const auto r = los_attack_powers(a, s.bob, kLed, kPd);
    CHECK(r.received[Color::B] == Catch::Approx(4.0));
    CHECK(r.received.sum() == Catch::Approx(10.0));

    a.weights = {0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(los_attack_powers(a, s.bob, kLed, kPd), std::invalid_argument);
    a.split = SplitPolicy::equal;
    a.power_budget = 0.0;
    CHECK_THROWS_AS(los_attack_powers(a, s.bob, kLed, kPd), std::invalid_argument);

    LosAttacker away;
    away.power_budget = 1.0;
    away.normal = {-1.0, 0.0, 0.0};
    CHECK_THROWS_AS(los_attack_powers(away, s.bob, kLed, kPd), std::invalid_argument);
}

TEST_CASE("Power budget is exact for static strategies", "[attack]")
{
    Scene s;
    s.grid.rows = 10;
    s.grid.cols = 6;
    const auto link = make_reflected_link(s, s.alice, kLed, kPd, kPower);
    const ChallengeSource src(StrategyKind::FixedCyclic, 60, kDefaultProfiles, 1);
    Engine rng(1);
    const auto b = average_alice_power(link, src, 50, rng);
    CHECK(b.mean == link.received(fixed_cyclic(60)).sum());
    CHECK(b.std_error == 0.0);
}

TEST_CASE("Power budget standard error falls as one over root n", "[attack]")
{
    Scene s;
    s.grid.rows = 10;
    s.grid.cols = 6;
    const auto link = make_reflected_link(s, s.alice, kLed, kPd, kPower);
    const ChallengeSource src(StrategyKind::DynamicRandom, 60, kDefaultProfiles, 1);
    Engine r1(8), r2(8);
    const auto small = average_alice_power(link, src, 400, r1);
    const auto large = average_alice_power(link, src, 6400, r2);
    CHECK(small.std_error / large.std_error == Catch::Approx(4.0).epsilon(0.15));
    CHECK(std::abs(small.mean - large.mean) < 4.0 * small.std_error);
}

TEST_CASE("Attack outcomes are reproducible under the master seed", "[attack]")
{
    ExperimentPlan plan;
    plan.rows = 10;
    plan.cols = 6;
    plan.strategy = StrategyKind::DynamicRandom;
    plan.pla_mode = PlaMode::CR;
    plan.attacker = AttackerSpec::los();
    plan.trials = 50;
    plan.master_seed = 17;
    const auto a = run_experiment(plan);
    const auto b = run_experiment(plan);
    REQUIRE(a.budget.has_value());
    CHECK(a.budget->mean == b.budget->mean);
    CHECK(a.scores.h1 == b.scores.h1);
    plan.master_seed = 18;
    CHECK(run_experiment(plan).budget->mean != a.budget->mean);
}
