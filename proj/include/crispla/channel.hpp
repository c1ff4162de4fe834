// SPDX-License-Identifier: Apache-2.0
//
// Lambertian channel gains for the CRIS-reflected and the direct path, and the gain-to-power model.

#pragma once

#include "color.hpp"
#include "configuration.hpp"
#include "geometry.hpp"
#include "spectral.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace crispla
{

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

class LedModel
{
  public:
    explicit LedModel(double half_angle_deg = 47.5) : half_angle_deg_(half_angle_deg)
    {
        if (!(half_angle_deg > 0.0 && half_angle_deg < 90.0))
            throw std::invalid_argument("LedModel: half angle must lie in (0, 90) degrees");
        order_ = -1.0 / std::log2(std::cos(deg_to_rad(half_angle_deg)));
    }

    double half_angle_deg() const { return half_angle_deg_; }
    double lambertian_order() const { return order_; }

  private:
    double half_angle_deg_;
    double order_;
};

class Photodetector
{
  public:
    Photodetector(double area_m2 = 1e-4, double refractive_index = 1.5, double fov_deg = 120.0,
                  double responsivity = 0.54)
        : area_(area_m2), n_(refractive_index), fov_deg_(fov_deg), responsivity_(responsivity)
    {
        if (!(area_m2 > 0.0 && refractive_index > 0.0 && responsivity > 0.0))
            throw std::invalid_argument("Photodetector: area, refractive index and responsivity must be positive");
        if (!(fov_deg > 0.0 && fov_deg < 180.0))
            throw std::invalid_argument("Photodetector: field of view must lie in (0, 180) degrees");
    }

    double area() const { return area_; }
    double refractive_index() const { return n_; }
    double fov_deg() const { return fov_deg_; }
    double responsivity() const { return responsivity_; }

    double concentrator_gain() const
    {
        const double s = std::sin(deg_to_rad(fov_deg_));
        return n_ * n_ / (s * s);
    }

    bool within_fov(double cos_incidence) const
    {
        // For fov >= 90 deg the clamped cosine already encodes visibility.
        return fov_deg_ >= 90.0 || cos_incidence >= std::cos(deg_to_rad(fov_deg_));
    }

  private:
    double area_;
    double n_;
    double fov_deg_;
    double responsivity_;
};

/// Transmitter to CRIS element: (m+1) A cos^m(phi) cos(theta) / (2 pi d^2).
inline double first_hop_gain(const OrientedPoint &tx, const OrientedPoint &element, const LedModel &led,
                             double element_area)
{
    if (!(element_area > 0.0))
        throw std::invalid_argument("first_hop_gain: element area must be positive");
    const auto link = link_cosines(tx, element);
    if (link.cos_irradiance == 0.0 || link.cos_incidence == 0.0)
        return 0.0;
    const double m = led.lambertian_order();
    return (m + 1.0) * element_area * std::pow(link.cos_irradiance, m) * link.cos_incidence /
           (2.0 * std::numbers::pi * link.distance * link.distance);
}

/// CRIS element to photodetector: A_pd cos(phi') cos(psi) / (pi d^2) * G * R * rho, zero outside the FoV.
inline double second_hop_gain(const OrientedPoint &element, const OrientedPoint &rx, const Photodetector &pd,
                              double rho)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("second_hop_gain: reflectivity outside [0, 1]");
    const auto link = link_cosines(element, rx);
    if (!pd.within_fov(link.cos_incidence))
        return 0.0;
    return pd.area() * link.cos_irradiance * link.cos_incidence / (std::numbers::pi * link.distance * link.distance) *
           pd.concentrator_gain() * pd.responsivity() * rho;
}

// Product of both hops with rho = 1, per element. The reflected gain of colour c is sum_i rho_{i,c} * p_i.
struct ElementPaths
{
    std::vector<double> products;

    std::size_t size() const { return products.size(); }

    ColorGains gains(const CrisConfiguration &config) const
    {
        if (config.size() != products.size())
            throw std::invalid_argument("cris_channel_gains: configuration has " + std::to_string(config.size()) +
                                        " rows for " + std::to_string(products.size()) + " elements");
        ColorGains out;
        for (std::size_t i = 0; i < products.size(); ++i)
        {
            const auto &row = config[i];
            for (std::size_t c = 0; c < kNumColors; ++c)
                out[c] += row[c] * products[i];
        }
        return out;
    }
};

inline ElementPaths element_paths(const Scene &scene, const OrientedPoint &tx, const LedModel &led,
                                  const Photodetector &pd)
{
    const auto surfaces = element_surfaces(scene.grid, scene.room);
    const double area = scene.grid.element_area();
    ElementPaths out;
    out.products.reserve(surfaces.size());
    for (const auto &e : surfaces)
    {
        const double lr = first_hop_gain(tx, e, led, area);
        out.products.push_back(lr == 0.0 ? 0.0 : lr * second_hop_gain(e, scene.bob, pd, 1.0));
    }
    return out;
}

/// Reflected gain per colour, h_c = sum_i h_i^(lr) h_{c,i}^(rp).
inline ColorGains cris_channel_gains(const Scene &scene, const OrientedPoint &tx, const CrisConfiguration &config,
                                     const LedModel &led, const Photodetector &pd)
{
    if (config.size() != scene.grid.size())
        throw std::invalid_argument("cris_channel_gains: configuration/grid size mismatch");
    return element_paths(scene, tx, led, pd).gains(config);
}

/// Direct transmitter-to-photodetector gain, with the same concentrator and responsivity factors as the reflected path.
inline double los_channel_gain(const OrientedPoint &tx, const OrientedPoint &rx, const LedModel &led,
                               const Photodetector &pd)
{
    const auto link = link_cosines(tx, rx);
    if (link.cos_irradiance == 0.0 || link.cos_incidence == 0.0 || !pd.within_fov(link.cos_incidence))
        return 0.0;
    const double m = led.lambertian_order();
    return (m + 1.0) * pd.area() * std::pow(link.cos_irradiance, m) * link.cos_incidence /
           (2.0 * std::numbers::pi * link.distance * link.distance) * pd.concentrator_gain() * pd.responsivity();
}

/// E = h^exponent * P. The default exponent 2 squares the gain.
inline double received_signal_power(double gain, double tx_power_w, int gain_exponent = 2)
{
    if (!(tx_power_w >= 0.0))
        throw std::invalid_argument("received_signal_power: negative transmit power");
    return (gain_exponent == 1 ? gain : gain * gain) * tx_power_w;
}

enum class SpectralCoupling
{
    off,
    diagonal,
    full
};

// Maps per-colour gains to the noise-free powers seen by the four filtered photodetectors.
struct PowerModel
{
    double tx_power_w = 25.0;
    int gain_exponent = 2;
    SpectralCoupling coupling = SpectralCoupling::off;
    CouplingMatrix coupling_matrix{};

    ColorPowers received(const ColorGains &h) const
    {
        ColorPowers e;
        for (std::size_t c = 0; c < kNumColors; ++c)
            e[c] = received_signal_power(h[c], tx_power_w, gain_exponent);
        switch (coupling)
        {
        case SpectralCoupling::off:
            return e;
        case SpectralCoupling::diagonal:
            for (std::size_t c = 0; c < kNumColors; ++c)
                e[c] *= coupling_matrix[c][c];
            return e;
        case SpectralCoupling::full:
        {
            ColorPowers mixed;
            for (std::size_t row = 0; row < kNumColors; ++row)
                for (std::size_t col = 0; col < kNumColors; ++col)
                    mixed[row] += coupling_matrix[row][col] * e[col];
            return mixed;
        }
        }
        return e;
    }
};

// Precomputed reflected path from one transmitter to Bob, evaluated per configuration.
struct ReflectedLink
{
    ElementPaths paths;
    PowerModel power;

    ColorGains gains(const CrisConfiguration &config) const { return paths.gains(config); }
    ColorPowers received(const CrisConfiguration &config) const { return power.received(paths.gains(config)); }
};

inline ReflectedLink make_reflected_link(const Scene &scene, const OrientedPoint &tx, const LedModel &led,
                                         const Photodetector &pd, const PowerModel &power)
{
    return {element_paths(scene, tx, led, pd), power};
}

} // namespace crispla
