// SPDX-License-Identifier: Apache-2.0
//
// Impersonation attackers: a passive clone of Alice's transmitter at another ceiling position, and a
// line-of-sight attacker that bypasses the CRIS with a power budget matched to Alice's average.

#pragma once

#include "channel.hpp"
#include "cris.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crispla
{

// Same LED and per-colour power as Alice, mounted facing down.
struct PassiveAttacker
{
    Vec3 position;
    Vec3 normal = kDown;

    OrientedPoint surface() const { return OrientedPoint::make(position, normal); }
};

inline ColorPowers passive_received_powers(const Scene &scene, const PassiveAttacker &attacker,
                                           const CrisConfiguration &config, const LedModel &led,
                                           const Photodetector &pd, const PowerModel &power)
{
    if (!scene.contains(attacker.position))
        throw std::invalid_argument("passive_received_powers: attacker " + to_string(attacker.position) +
                                    " outside the room");
    return power.received(cris_channel_gains(scene, attacker.surface(), config, led, pd));
}

struct PowerBudget
{
    double mean = 0.0;      // total average noise-free power over the four channels
    double std_error = 0.0; // zero for static strategies
    std::size_t samples = 0;
};

/// Sum over colours of Alice's expected noise-free power. Exact for static strategies; for dynamic ones a
/// Monte Carlo mean over n_samples configurations drawn from `rng`.
inline PowerBudget average_alice_power(const ReflectedLink &alice, const ChallengeSource &strategy,
                                       std::size_t n_samples, Engine &rng)
{
    if (n_samples < 1)
        throw std::invalid_argument("average_alice_power: need at least one sample");
    if (strategy.is_static())
        return {alice.received(strategy.at(0)).sum(), 0.0, 1};

    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k)
    {
        const auto config = strategy.kind() == StrategyKind::DynamicRandom
                                ? uniform_configuration(strategy.elements(), rng)
                                : permuted_cyclic(strategy.elements(), strategy.profiles(), rng);
        const double x = alice.received(config).sum();
        const double delta = x - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (x - mean);
    }
    const double var = n_samples > 1 ? m2 / static_cast<double>(n_samples - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n_samples)), n_samples};
}

enum class SplitPolicy
{
    equal,
    custom
};

struct LosAttacker
{
    Vec3 position{0.1, 2.5, 0.85};
    Vec3 normal{1.0, 0.0, 0.0};
    double power_budget = 0.0; // target total received power
    SplitPolicy split = SplitPolicy::equal;
    std::array<double, kNumColors> weights{1.0, 1.0, 1.0, 1.0}; // used by SplitPolicy::custom

    OrientedPoint surface() const { return OrientedPoint::make(position, normal); }
};

struct LosAttack
{
    ColorPowers received; // noise-free power at Bob, sums to the budget
    ColorPowers transmit; // back-solved LED powers
    double gain = 0.0;    // LoS channel gain
};

inline LosAttack los_attack_powers(const LosAttacker &attacker, const OrientedPoint &bob, const LedModel &led,
                                   const Photodetector &pd, int gain_exponent = 2)
{
    if (!(attacker.power_budget > 0.0))
        throw std::invalid_argument("los_attack_powers: power budget must be positive");
    const double h = los_channel_gain(attacker.surface(), bob, led, pd);
    if (!(h > 0.0))
        throw std::invalid_argument("los_attack_powers: attacker at " + to_string(attacker.position) +
                                    " has no line of sight to the receiver");

    std::array<double, kNumColors> share{0.25, 0.25, 0.25, 0.25};
    if (attacker.split == SplitPolicy::custom)
    {
        double total = 0.0;
        for (double w : attacker.weights)
        {
            if (!(w >= 0.0))
                throw std::invalid_argument("los_attack_powers: split weights must be non-negative");
            total += w;
        }
        if (!(total > 0.0))
            throw std::invalid_argument("los_attack_powers: split weights sum to zero");
        for (std::size_t c = 0; c < kNumColors; ++c)
            share[c] = attacker.weights[c] / total;
    }

    LosAttack out;
    out.gain = h;
    const double path = gain_exponent == 1 ? h : h * h;
    for (std::size_t c = 0; c < kNumColors; ++c)
    {
        out.received[c] = attacker.power_budget * share[c];
        out.transmit[c] = out.received[c] / path;
    }
    return out;
}

} // namespace crispla
