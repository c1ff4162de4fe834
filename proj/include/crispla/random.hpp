// SPDX-License-Identifier: Apache-2.0
//
// Counter-based derivation of independent random substreams.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace crispla
{

using Engine = std::mt19937_64;

// splitmix64 finaliser
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts)
{
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts)
        h = mix64(h ^ mix64(p));
    return h;
}

// FNV-1a, used to fold text into stream keys and plan identifiers.
constexpr std::uint64_t hash_text(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s)
    {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

enum class StreamRole : std::uint64_t
{
    setup = 1,       // static configurations
    challenge = 2,   // per-transmission configurations
    alice_noise = 3, // h0 observations
    trudy_noise = 4, // h1 observations
    ia = 5,          // identification-association probes
    budget = 6       // attacker power-budget estimation
};

inline Engine substream(std::uint64_t key, StreamRole role, std::uint64_t counter = 0)
{
    return Engine(derive_key({key, static_cast<std::uint64_t>(role), counter}));
}

} // namespace crispla
