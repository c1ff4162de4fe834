// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "color.hpp"
#include "random.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace crispla
{

// Zero-mean white Gaussian noise with a common variance on all four channels.
class NoiseModel
{
  public:
    explicit NoiseModel(double sigma2 = 0.0) : sigma2_(sigma2)
    {
        if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
            throw std::invalid_argument("NoiseModel: variance must be finite and non-negative");
    }

    double sigma2() const { return sigma2_; }

    ColorPowers sample(Engine &rng) const
    {
        ColorPowers w;
        if (sigma2_ == 0.0)
            return w;
        std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2_));
        for (auto &v : w.values)
            v = gauss(rng);
        return w;
    }

    // Noise is added to the raw power; negative observations are kept.
    ColorPowers observe(const ColorPowers &noise_free, Engine &rng) const
    {
        const auto w = sample(rng);
        ColorPowers out;
        for (std::size_t c = 0; c < kNumColors; ++c)
            out[c] = noise_free[c] + w[c];
        return out;
    }

  private:
    double sigma2_;
};

} // namespace crispla
