// SPDX-License-Identifier: Apache-2.0
//
// Physical-layer authentication: the squared-deviation likelihood test, the identification-association
// phases of SC-PLA and CR-PLA, and detection-error-tradeoff curves.

#pragma once

#include "channel.hpp"
#include "cris.hpp"
#include "noise.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace crispla
{

enum class Provenance
{
    measured_ia,
    predicted
};

struct ReferenceProfile
{
    ColorPowers expected;
    Provenance provenance = Provenance::predicted;
};

/// L = sum_c (P_c - E_c)^2
inline double likelihood_statistic(const ColorPowers &observed, const ReferenceProfile &reference)
{
    double l = 0.0;
    for (std::size_t c = 0; c < kNumColors; ++c)
    {
        const double d = observed[c] - reference.expected[c];
        l += d * d;
    }
    return l;
}

enum class Decision
{
    authentic,
    not_authentic
};

// Authentic iff L < gamma; a tie is rejected.
constexpr Decision decide(double statistic, double gamma)
{
    return statistic < gamma ? Decision::authentic : Decision::not_authentic;
}

/// Single-configuration IA: average of n_probes noisy observations of Alice through `config`.
inline ReferenceProfile ia_phase_sc(const ReflectedLink &alice, const CrisConfiguration &config, const NoiseModel &noise,
                                    std::size_t n_probes, Engine &rng)
{
    if (n_probes < 1)
        throw std::invalid_argument("ia_phase_sc: need at least one probe");
    const auto clean = alice.received(config);
    ColorPowers acc;
    for (std::size_t k = 0; k < n_probes; ++k)
    {
        const auto obs = noise.observe(clean, rng);
        for (std::size_t c = 0; c < kNumColors; ++c)
            acc[c] += obs[c];
    }
    for (auto &v : acc.values)
        v /= static_cast<double>(n_probes);
    return {acc, Provenance::measured_ia};
}

enum class PredictorMode
{
    genie,
    estimated
};

// Maps any CRIS configuration to the powers Bob expects from Alice.
class ChannelPredictor
{
  public:
    // Exact noise-free prediction from the known per-element paths.
    static ChannelPredictor genie(ReflectedLink alice)
    {
        ChannelPredictor p;
        p.mode_ = PredictorMode::genie;
        p.power_ = alice.power;
        for (auto &col : p.products_)
            col = alice.paths.products;
        return p;
    }

    // Per-colour path products fitted from probes.
    static ChannelPredictor from_estimates(std::array<std::vector<double>, kNumColors> products, PowerModel power)
    {
        ChannelPredictor p;
        p.mode_ = PredictorMode::estimated;
        p.power_ = power;
        p.products_ = std::move(products);
        return p;
    }

    PredictorMode mode() const { return mode_; }
    const std::vector<double> &products(Color c) const { return products_[index(c)]; }

    ReferenceProfile predict(const CrisConfiguration &config) const
    {
        const std::size_t n = products_[0].size();
        if (config.size() != n)
            throw std::invalid_argument("ChannelPredictor: configuration size mismatch");
        ColorGains h;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < kNumColors; ++c)
                h[c] += config[i][c] * products_[c][i];
        return {power_.received(h), Provenance::predicted};
    }

  private:
    PredictorMode mode_ = PredictorMode::genie;
    PowerModel power_;
    std::array<std::vector<double>, kNumColors> products_;
};

// Recovers the per-colour reflected gain from a noisy power observation. Negative powers map to zero gain.
inline double gain_from_power(double power, Color c, const PowerModel &model)
{
    double scale = model.tx_power_w;
    if (model.coupling == SpectralCoupling::diagonal)
        scale *= model.coupling_matrix[index(c)][index(c)];
    const double base = std::max(power, 0.0) / scale;
    return model.gain_exponent == 1 ? base : std::sqrt(base);
}

/// Challenge-response IA. In estimated mode, Bob probes `n_probe_configs` configurations drawn from the
/// strategy and fits the N per-element path products of each colour by least squares.
inline ChannelPredictor ia_phase_cr(const ReflectedLink &alice, const ChallengeSource &strategy, const NoiseModel &noise,
                                    std::size_t n_probe_configs, Engine &rng,
                                    PredictorMode mode = PredictorMode::genie)
{
    if (!is_dynamic(strategy.kind()))
        throw std::invalid_argument("ia_phase_cr: challenge-response needs a dynamic strategy");
    if (mode == PredictorMode::genie)
        return ChannelPredictor::genie(alice);

    const std::size_t n = alice.paths.size();
    if (n_probe_configs < n)
        throw std::invalid_argument("ia_phase_cr: " + std::to_string(n_probe_configs) +
                                    " probe configurations cannot determine " + std::to_string(n) + " element paths");
    if (alice.power.coupling == SpectralCoupling::full)
        throw std::invalid_argument("ia_phase_cr: estimated predictor cannot invert full spectral coupling");

    const auto rows = static_cast<Eigen::Index>(n_probe_configs);
    const auto cols = static_cast<Eigen::Index>(n);
    std::array<Eigen::MatrixXd, kNumColors> design;
    std::array<Eigen::VectorXd, kNumColors> target;
    for (std::size_t c = 0; c < kNumColors; ++c)
    {
        design[c].resize(rows, cols);
        target[c].resize(rows);
    }

    // Probe configurations come from the caller's stream, never from the verifier's challenge stream.
    for (Eigen::Index k = 0; k < rows; ++k)
    {
        const auto config = strategy.kind() == StrategyKind::DynamicRandom
                                ? uniform_configuration(n, rng)
                                : permuted_cyclic(n, strategy.profiles(), rng);
        const auto obs = noise.observe(alice.received(config), rng);
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            for (Eigen::Index i = 0; i < cols; ++i)
                design[c](k, i) = config[static_cast<std::size_t>(i)][c];
            target[c](k) = gain_from_power(obs[c], kAllColors[c], alice.power);
        }
    }

    std::array<std::vector<double>, kNumColors> products;
    for (std::size_t c = 0; c < kNumColors; ++c)
    {
        const auto qr = design[c].colPivHouseholderQr();
        if (qr.rank() < cols)
            throw std::runtime_error("ia_phase_cr: probe configurations are rank deficient");
        const Eigen::VectorXd x = qr.solve(target[c]);
        products[c].assign(x.data(), x.data() + x.size());
    }
    return ChannelPredictor::from_estimates(std::move(products), alice.power);
}

// ---------------------------------------------------------------------------
// Score samples and DET curves
// ---------------------------------------------------------------------------

struct ScoreSamples
{
    std::vector<double> h0; // Alice transmitting
    std::vector<double> h1; // attacker transmitting
};

struct DetPoint
{
    double gamma = 0.0;
    double pfa = 0.0;
    double pmd = 0.0;
};

struct DetCurve
{
    std::vector<DetPoint> points; // sorted by gamma
};

namespace detail
{

inline void require_scores(const ScoreSamples &s)
{
    if (s.h0.empty() || s.h1.empty())
        throw std::invalid_argument("det_curve: both score lists must be non-empty");
}

// Empirical error rates with pfa = P[L >= gamma | h0] and pmd = P[L < gamma | h1].
class ErrorRates
{
  public:
    explicit ErrorRates(const ScoreSamples &s) : h0_(s.h0), h1_(s.h1)
    {
        require_scores(s);
        std::sort(h0_.begin(), h0_.end());
        std::sort(h1_.begin(), h1_.end());
    }

    DetPoint at(double gamma) const
    {
        const auto below0 = std::lower_bound(h0_.begin(), h0_.end(), gamma) - h0_.begin();
        const auto below1 = std::lower_bound(h1_.begin(), h1_.end(), gamma) - h1_.begin();
        const auto n0 = static_cast<double>(h0_.size());
        const auto n1 = static_cast<double>(h1_.size());
        return {gamma, static_cast<double>(static_cast<std::ptrdiff_t>(h0_.size()) - below0) / n0,
                static_cast<double>(below1) / n1};
    }

    std::vector<double> pooled_distinct() const
    {
        std::vector<double> out;
        out.reserve(h0_.size() + h1_.size());
        std::merge(h0_.begin(), h0_.end(), h1_.begin(), h1_.end(), std::back_inserter(out));
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::size_t n0() const { return h0_.size(); }
    std::size_t n1() const { return h1_.size(); }

  private:
    std::vector<double> h0_;
    std::vector<double> h1_;
};

} // namespace detail

struct EerEstimate
{
    double eer = 0.0;       // min over gamma of max(pfa, pmd)
    double gamma = 0.0;     // threshold attaining it
    double std_error = 0.0; // binomial standard error sqrt(e (1 - e) / min(n0, n1))
};

/// Equal error rate from the exact empirical sweep over every pooled score.
inline EerEstimate equal_error_rate(const ScoreSamples &samples)
{
    const detail::ErrorRates rates(samples);
    const double inf = std::numeric_limits<double>::infinity();
    EerEstimate best{1.0, inf, 0.0};
    auto consider = [&](double g) {
        const auto p = rates.at(g);
        const double worst = std::max(p.pfa, p.pmd);
        if (worst < best.eer)
            best = {worst, g, 0.0};
    };
    consider(-inf);
    for (double g : rates.pooled_distinct())
        consider(g);
    consider(inf);
    const double n = static_cast<double>(std::min(rates.n0(), rates.n1()));
    best.std_error = std::sqrt(best.eer * (1.0 - best.eer) / n);
    return best;
}

/// DET curve over a threshold sweep, with -inf and +inf sentinels.
/// n_thresholds > 0: that many log-spaced thresholds over [0.5 * smallest positive score, 2 * largest score], plus
/// the equal-error threshold. n_thresholds == 0: every distinct pooled score (the exact empirical curve, invariant
/// under strictly increasing score transforms).
inline DetCurve det_curve(const ScoreSamples &samples, std::size_t n_thresholds = 512)
{
    const detail::ErrorRates rates(samples);
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> gammas;
    if (n_thresholds == 0)
        gammas = rates.pooled_distinct();
    else
    {
        const auto pooled = rates.pooled_distinct();
        const auto first_positive = std::upper_bound(pooled.begin(), pooled.end(), 0.0);
        if (first_positive != pooled.end())
        {
            const double lo = 0.5 * *first_positive;
            const double hi = 2.0 * pooled.back();
            if (n_thresholds == 1)
                gammas.push_back(lo);
            else
            {
                const double step = std::log(hi / lo) / static_cast<double>(n_thresholds - 1);
                for (std::size_t k = 0; k < n_thresholds; ++k)
                    gammas.push_back(lo * std::exp(step * static_cast<double>(k)));
            }
        }
        if (pooled.front() <= 0.0)
            gammas.push_back(0.0);
        gammas.push_back(equal_error_rate(samples).gamma);
    }
    gammas.push_back(-inf);
    gammas.push_back(inf);
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());

    DetCurve curve;
    curve.points.reserve(gammas.size());
    for (double g : gammas)
        curve.points.push_back(rates.at(g));
    return curve;
}

} // namespace crispla
