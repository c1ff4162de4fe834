// SPDX-License-Identifier: Apache-2.0
//
// H-model QLED power spectral density and its integration over optical filter bands.

#pragma once

#include "color.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crispla
{

// Parameters of the asymmetric H-model PSD
struct HModelParams
{
    double peak_nm = 0.0;        // lambda_p
    double left_width_nm = 0.0;  // half spectral width below the peak
    double right_width_nm = 0.0; // half spectral width above the peak
    double k1 = 0.0;             // weight of the sharpened component
    double k2 = 1.0;             // exponent of the sharpened component

    void validate() const
    {
        if (!(peak_nm > 0.0 && left_width_nm > 0.0 && right_width_nm > 0.0 && k1 > 0.0 && k2 >= 1.0))
            throw std::invalid_argument("HModelParams: require peak, widths, k1 > 0 and k2 >= 1");
    }
};

struct SpectralBand
{
    double lower_nm = 0.0;
    double upper_nm = 0.0;

    void validate() const
    {
        // Zero-width bands are accepted and integrate to 0.
        if (!(lower_nm <= upper_nm))
            throw std::invalid_argument("SpectralBand: lower limit exceeds upper limit");
    }
};

inline constexpr double kPsdDomainMinNm = 300.0;
inline constexpr double kPsdDomainMaxNm = 900.0;
inline constexpr double kIntegrationStepNm = 0.01;
inline constexpr SpectralBand kVisibleRange{380.0, 780.0};

// LUXEON C colour QLED, columns read in R, A, G, B order so each peak falls in its own filter band.
inline constexpr std::array<HModelParams, kNumColors> kLuxeonParams = {{
    {632.5, 23.84, 14.74, 2.0, 6.0},
    {600.0, 19.66, 14.97, 2.0, 5.0},
    {517.7, 29.38, 45.21, 2.0, 3.0},
    {453.0, 18.99, 25.50, 2.0, 5.0},
}};

inline constexpr std::array<SpectralBand, kNumColors> kDefaultFilterBands = {{
    {612.0, 680.0},
    {575.0, 612.0},
    {483.0, 575.0},
    {400.0, 483.0},
}};

/// Normalised PSD, Phi(lambda) = (g + k1 g^k2) / (1 + k1) with
/// g = exp(-(lambda - lambda_p)^2 / dl^2), dl the left width below the peak and the right width at or above it.
/// Throws std::domain_error outside [300, 900] nm.
inline double psd_value(const HModelParams &p, double lambda_nm)
{
    if (!(lambda_nm >= kPsdDomainMinNm && lambda_nm <= kPsdDomainMaxNm))
        throw std::domain_error("psd_value: wavelength " + std::to_string(lambda_nm) + " nm outside [300, 900]");
    const double width = lambda_nm < p.peak_nm ? p.left_width_nm : p.right_width_nm;
    const double offset = (lambda_nm - p.peak_nm) / width;
    const double g = std::exp(-offset * offset);
    return (g + p.k1 * std::pow(g, p.k2)) / (1.0 + p.k1);
}

/// Integral of the PSD over the band by the composite trapezoidal rule.
/// The step is the largest value <= 0.01 nm that divides the band evenly.
namespace detail
{
inline double trapezoid(const HModelParams &p, double lower, double h, long steps)
{
    double interior = 0.0;
    for (long k = 1; k < steps; ++k)
        interior += psd_value(p, lower + static_cast<double>(k) * h);
    return h * (interior + 0.5 * (psd_value(p, lower) + psd_value(p, lower + static_cast<double>(steps) * h)));
}
} // namespace detail

// Trapezoid at 0.01 nm and 0.005 nm, combined by one Richardson step. The plain 0.01 nm rule loses
// a few 1e-6 of relative accuracy on far-tail bands where the integrand is below 1e-9.
inline double band_energy(const HModelParams &p, const SpectralBand &band)
{
    band.validate();
    const double width = band.upper_nm - band.lower_nm;
    if (width == 0.0)
        return 0.0;
    const auto steps = static_cast<long>(std::ceil(width / kIntegrationStepNm - 1e-9));
    const double h = width / static_cast<double>(steps);
    const double coarse = detail::trapezoid(p, band.lower_nm, h, steps);
    const double fine = detail::trapezoid(p, band.lower_nm, 0.5 * h, 2 * steps);
    return (4.0 * fine - coarse) / 3.0;
}

using CouplingMatrix = std::array<std::array<double, kNumColors>, kNumColors>;

/// Entry [row][col] is the fraction of LED `col`'s in-range emission (380-780 nm) that falls inside filter band `row`.
inline CouplingMatrix spectral_coupling_matrix(const std::array<HModelParams, kNumColors> &params,
                                               const std::array<SpectralBand, kNumColors> &bands)
{
    CouplingMatrix out{};
    for (std::size_t col = 0; col < kNumColors; ++col)
    {
        params[col].validate();
        const double total = band_energy(params[col], kVisibleRange);
        for (std::size_t row = 0; row < kNumColors; ++row)
            out[row][col] = band_energy(params[col], bands[row]) / total;
    }
    return out;
}

} // namespace crispla
