// SPDX-License-Identifier: Apache-2.0
//
// Four-colour channel indexing shared by every per-colour quantity.

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace crispla
{

// Canonical order. Every length-4 vector in the library is indexed R, A, G, B.
enum class Color : std::size_t
{
    R = 0,
    A = 1,
    G = 2,
    B = 3
};

inline constexpr std::size_t kNumColors = 4;
inline constexpr std::array<Color, kNumColors> kAllColors = {Color::R, Color::A, Color::G, Color::B};

constexpr std::string_view color_name(Color c)
{
    switch (c)
    {
    case Color::R: return "R";
    case Color::A: return "A";
    case Color::G: return "G";
    case Color::B: return "B";
    }
    return "?";
}

constexpr std::size_t index(Color c) { return static_cast<std::size_t>(c); }

// Unit tags for ColorVector
struct GainUnit {};      // dimensionless channel gain
struct PowerUnit {};     // received power, W
struct StatisticUnit {}; // per-colour statistic contributions

// Fixed-size per-colour vector. The tag keeps gains and powers from mixing.
template <class Unit>
struct ColorVector
{
    std::array<double, kNumColors> values{};

    constexpr double &operator[](Color c) { return values[index(c)]; }
    constexpr double operator[](Color c) const { return values[index(c)]; }
    constexpr double &operator[](std::size_t i) { return values[i]; }
    constexpr double operator[](std::size_t i) const { return values[i]; }

    constexpr double sum() const { return values[0] + values[1] + values[2] + values[3]; }

    friend constexpr bool operator==(const ColorVector &, const ColorVector &) = default;
};

using ColorGains = ColorVector<GainUnit>;
using ColorPowers = ColorVector<PowerUnit>;

} // namespace crispla
