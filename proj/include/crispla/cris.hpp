// SPDX-License-Identifier: Apache-2.0
//
// CRIS configuration strategies and the verifier's challenge selection.

#pragma once

#include "configuration.hpp"
#include "random.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crispla
{

enum class StrategyKind
{
    FixedCyclic,      // scenario 1
    StaticRandom,     // scenario 2
    DynamicRandom,    // scenario 3
    RandomPermutation // scenario 4
};

constexpr bool is_dynamic(StrategyKind k) { return k == StrategyKind::DynamicRandom || k == StrategyKind::RandomPermutation; }

constexpr int scenario_number(StrategyKind k) { return static_cast<int>(k) + 1; }

constexpr std::string_view strategy_name(StrategyKind k)
{
    switch (k)
    {
    case StrategyKind::FixedCyclic: return "fixed_cyclic";
    case StrategyKind::StaticRandom: return "static_random";
    case StrategyKind::DynamicRandom: return "dynamic_random";
    case StrategyKind::RandomPermutation: return "random_permutation";
    }
    return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view s)
{
    for (auto k : {StrategyKind::FixedCyclic, StrategyKind::StaticRandom, StrategyKind::DynamicRandom,
                   StrategyKind::RandomPermutation})
        if (s == strategy_name(k) || s == "scenario" + std::to_string(scenario_number(k)))
            return k;
    return std::nullopt;
}

using ProfileSet = std::array<ReflectanceProfile, kNumColors>;

/// Element i receives profiles[i mod 4].
inline CrisConfiguration fixed_cyclic(std::size_t n_elements, const ProfileSet &profiles = kDefaultProfiles)
{
    if (n_elements < 1)
        throw std::invalid_argument("fixed_cyclic: need at least one element");
    std::vector<ReflectanceProfile> rows(n_elements);
    for (std::size_t i = 0; i < n_elements; ++i)
        rows[i] = profiles[i % kNumColors];
    return CrisConfiguration(std::move(rows));
}

// i.i.d. U[0,1] reflectivities, drawn element by element in colour order
inline CrisConfiguration uniform_configuration(std::size_t n_elements, Engine &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ReflectanceProfile> rows(n_elements);
    for (auto &row : rows)
        for (auto &v : row)
            v = u(rng);
    return CrisConfiguration(std::move(rows));
}

inline CrisConfiguration static_random(std::size_t n_elements, Engine &rng)
{
    if (n_elements < 1)
        throw std::invalid_argument("static_random: need at least one element");
    return uniform_configuration(n_elements, rng);
}

// Fresh i.i.d. uniform configuration per call.
class DynamicRandom
{
  public:
    DynamicRandom(std::size_t n_elements, Engine rng) : n_(n_elements), rng_(std::move(rng))
    {
        if (n_elements < 1)
            throw std::invalid_argument("dynamic_random: need at least one element");
    }

    CrisConfiguration operator()() { return uniform_configuration(n_, rng_); }

  private:
    std::size_t n_;
    Engine rng_;
};

inline CrisConfiguration permuted_cyclic(std::size_t n_elements, const ProfileSet &profiles, Engine &rng)
{
    auto rows = fixed_cyclic(n_elements, profiles).rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    return CrisConfiguration(std::move(rows));
}

// Fresh uniform permutation of the cyclic assignment per call; profile multiplicities are preserved.
class RandomPermutation
{
  public:
    RandomPermutation(std::size_t n_elements, const ProfileSet &profiles, Engine rng)
        : n_(n_elements), profiles_(profiles), rng_(std::move(rng))
    {
        if (n_elements < 1)
            throw std::invalid_argument("random_permutation: need at least one element");
    }

    CrisConfiguration operator()() { return permuted_cyclic(n_, profiles_, rng_); }

  private:
    std::size_t n_;
    ProfileSet profiles_;
    Engine rng_;
};

// Verifier-side configuration source. Dynamic draws are indexed by a transmission counter so any
// transmission's challenge can be regenerated independently of evaluation order.
// The stream key must never be shared with an attacker-visible stream.
class ChallengeSource
{
  public:
    ChallengeSource(StrategyKind kind, std::size_t n_elements, const ProfileSet &profiles, std::uint64_t stream_key)
        : kind_(kind), n_(n_elements), profiles_(profiles), key_(stream_key)
    {
        if (n_elements < 1)
            throw std::invalid_argument("ChallengeSource: need at least one element");
        if (kind == StrategyKind::FixedCyclic)
            fixed_ = fixed_cyclic(n_, profiles_);
        else if (kind == StrategyKind::StaticRandom)
        {
            auto rng = substream(key_, StreamRole::setup);
            fixed_ = static_random(n_, rng);
        }
    }

    StrategyKind kind() const { return kind_; }
    std::size_t elements() const { return n_; }
    const ProfileSet &profiles() const { return profiles_; }
    bool is_static() const { return !is_dynamic(kind_); }

    // Configuration for transmission `counter`
    CrisConfiguration at(std::uint64_t counter) const
    {
        if (is_static())
            return *fixed_;
        auto rng = substream(key_, StreamRole::challenge, counter);
        return kind_ == StrategyKind::DynamicRandom ? uniform_configuration(n_, rng)
                                                    : permuted_cyclic(n_, profiles_, rng);
    }

    CrisConfiguration next() { return at(cursor_++); }

  private:
    StrategyKind kind_;
    std::size_t n_;
    ProfileSet profiles_;
    std::uint64_t key_;
    std::uint64_t cursor_ = 0;
    std::optional<CrisConfiguration> fixed_;
};

inline CrisConfiguration challenge_select(ChallengeSource &source) { return source.next(); }

} // namespace crispla
