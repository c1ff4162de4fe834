// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "color.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace crispla
{

// Per-colour reflectivities of one element, each in [0, 1]
using ReflectanceProfile = std::array<double, kNumColors>;

inline bool valid_reflectance(const ReflectanceProfile &p)
{
    for (double v : p)
        if (!(v >= 0.0 && v <= 1.0))
            return false;
    return true;
}

// Row i holds the reflectivities of grid element i (row-major grid order).
class CrisConfiguration
{
  public:
    CrisConfiguration() = default;

    explicit CrisConfiguration(std::vector<ReflectanceProfile> rows) : rows_(std::move(rows))
    {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (!valid_reflectance(rows_[i]))
                throw std::invalid_argument("CrisConfiguration: reflectivity of element " + std::to_string(i) +
                                            " outside [0, 1]");
    }

    std::size_t size() const { return rows_.size(); }
    const ReflectanceProfile &operator[](std::size_t i) const { return rows_[i]; }
    double rho(std::size_t element, Color c) const { return rows_[element][index(c)]; }
    const std::vector<ReflectanceProfile> &rows() const { return rows_; }

    friend bool operator==(const CrisConfiguration &, const CrisConfiguration &) = default;

  private:
    std::vector<ReflectanceProfile> rows_;
};

// One profile per colour, each favouring its own channel (R, A, G, B).
inline constexpr std::array<ReflectanceProfile, kNumColors> kDefaultProfiles = {{
    {1.0, 0.2, 0.0, 0.0},
    {0.2, 1.0, 0.2, 0.0},
    {0.0, 0.2, 1.0, 0.2},
    {0.0, 0.0, 0.2, 1.0},
}};

} // namespace crispla
