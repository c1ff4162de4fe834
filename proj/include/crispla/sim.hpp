// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine: noise calibration, experiment plans and score generation.

#pragma once

#include "attack.hpp"
#include "channel.hpp"
#include "cris.hpp"
#include "noise.hpp"
#include "pla.hpp"
#include "random.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace crispla
{

// Physical parameters shared by every plan of a study.
struct SystemModel
{
    Scene scene;
    LedModel led;
    Photodetector pd;
    PowerModel power;
    ProfileSet profiles = kDefaultProfiles;
    std::array<HModelParams, kNumColors> spectra = kLuxeonParams;
    std::array<SpectralBand, kNumColors> bands = kDefaultFilterBands;

    // Fills the coupling matrix from the spectra when a coupling mode is active.
    void resolve_coupling()
    {
        if (power.coupling != SpectralCoupling::off)
            power.coupling_matrix = spectral_coupling_matrix(spectra, bands);
    }
};

enum class PlaMode
{
    SC, // single configuration
    CR  // challenge-response
};

constexpr std::string_view pla_mode_name(PlaMode m) { return m == PlaMode::SC ? "SC" : "CR"; }

enum class AttackerKind
{
    passive,
    los
};

struct AttackerSpec
{
    AttackerKind kind = AttackerKind::passive;
    Vec3 position{3.4, 2.5, 3.0};
    Vec3 normal = kDown;
    SplitPolicy split = SplitPolicy::equal;
    std::array<double, kNumColors> weights{1.0, 1.0, 1.0, 1.0};
    std::size_t budget_samples = 1000;

    static AttackerSpec passive(const Vec3 &position) { return {AttackerKind::passive, position, kDown}; }
    static AttackerSpec los(const Vec3 &position = {0.1, 2.5, 0.85}, const Vec3 &normal = {1.0, 0.0, 0.0})
    {
        return {AttackerKind::los, position, normal};
    }

    std::string label() const
    {
        char buf[64];
        if (kind == AttackerKind::los)
            return "los";
        std::snprintf(buf, sizeof buf, "passive_x%g", position.x);
        return buf;
    }
};

enum class ReferenceMode
{
    genie,   // noise-free reference (SC) or exact predictor (CR)
    measured // IA probes (SC) or least-squares predictor (CR)
};

enum class NoiseCalibration
{
    received_power, // sigma^2 = sum_c E_c^2 / 10^(snr/10)
    gain            // sigma^2 = sum_c h_c^2 / 10^(snr/10)
};

struct ExperimentPlan
{
    SystemModel system;
    StrategyKind strategy = StrategyKind::FixedCyclic;
    std::size_t rows = 50;
    std::size_t cols = 30;
    AttackerSpec attacker;
    std::size_t trials = 20000;
    double snr_db = 10.0;
    std::uint64_t master_seed = 1;
    PlaMode pla_mode = PlaMode::SC;
    ReferenceMode reference = ReferenceMode::genie;
    std::size_t ia_probes = 1;
    std::size_t ia_probe_configs = 0; // 0 means 2N
    NoiseCalibration calibration = NoiseCalibration::received_power;
    std::size_t calibration_rows = 50;
    std::size_t calibration_cols = 30;
    std::size_t n_thresholds = 512;

    std::size_t elements() const { return rows * cols; }

    Scene scene() const
    {
        Scene s = system.scene;
        s.grid.rows = rows;
        s.grid.cols = cols;
        return s;
    }

    // Everything that shapes the simulated physics and randomness, excluding seed and trial count.
    std::string physics_signature() const
    {
        std::ostringstream os;
        os.precision(17);
        const auto &sc = system.scene;
        auto v = [&](const Vec3 &p) { os << p.x << ',' << p.y << ',' << p.z << ';'; };
        v(sc.room);
        v(sc.alice.position);
        v(sc.alice.normal);
        v(sc.bob.position);
        v(sc.bob.normal);
        v(sc.grid.center);
        v(sc.grid.normal);
        os << sc.grid.element_side << ';' << system.led.half_angle_deg() << ';' << system.pd.area() << ','
           << system.pd.refractive_index() << ',' << system.pd.fov_deg() << ',' << system.pd.responsivity() << ';'
           << system.power.tx_power_w << ',' << system.power.gain_exponent << ','
           << static_cast<int>(system.power.coupling) << ';';
        for (const auto &p : system.profiles)
            for (double r : p)
                os << r << ',';
        for (const auto &p : system.spectra)
            os << p.peak_nm << ',' << p.left_width_nm << ',' << p.right_width_nm << ',' << p.k1 << ',' << p.k2 << ';';
        for (const auto &b : system.bands)
            os << b.lower_nm << ',' << b.upper_nm << ';';
        os << strategy_name(strategy) << ';' << rows << 'x' << cols << ';' << attacker.label() << ';';
        v(attacker.position);
        v(attacker.normal);
        os << static_cast<int>(attacker.split) << ',';
        for (double w : attacker.weights)
            os << w << ',';
        os << attacker.budget_samples << ';' << snr_db << ';' << pla_mode_name(pla_mode) << ';'
           << static_cast<int>(reference) << ',' << ia_probes << ',' << ia_probe_configs << ';'
           << static_cast<int>(calibration) << ',' << calibration_rows << 'x' << calibration_cols;
        return os.str();
    }

    std::string canonical() const
    {
        return physics_signature() + ";seed=" + std::to_string(master_seed) + ";trials=" + std::to_string(trials) +
               ";thresholds=" + std::to_string(n_thresholds);
    }

    // Content hash of the resolved plan
    std::string id() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_text(canonical())));
        return buf;
    }

    // Key of every noise/probe substream of this plan.
    std::uint64_t stream_key() const { return derive_key({master_seed, hash_text(physics_signature())}); }

    // Key of the verifier's configuration stream. Shared by all attackers of one (strategy, grid) so the
    // curves of a figure see the same surface.
    std::uint64_t cris_key() const
    {
        return derive_key({master_seed, hash_text(strategy_name(strategy)), rows, cols});
    }

    std::vector<std::string> violations() const
    {
        std::vector<std::string> out;
        if (trials < 1)
            out.push_back("sim.trials must be at least 1");
        if (!std::isfinite(snr_db))
            out.push_back("sim.snr_db must be finite");
        if (pla_mode == PlaMode::CR && !is_dynamic(strategy))
            out.push_back("CR mode requires a dynamic strategy, got " + std::string(strategy_name(strategy)));
        if (pla_mode == PlaMode::SC && is_dynamic(strategy))
            out.push_back("SC mode requires a static strategy, got " + std::string(strategy_name(strategy)));
        if (ia_probes < 1)
            out.push_back("sim.ia_probes must be at least 1");
        for (auto &v : scene_violations(scene()))
            out.push_back(v);
        if (attacker.kind == AttackerKind::passive && !system.scene.contains(attacker.position))
            out.push_back("attacker " + to_string(attacker.position) + " outside the room");
        if (attacker.kind == AttackerKind::los && attacker.budget_samples < 1)
            out.push_back("attack.budget_samples must be at least 1");
        return out;
    }

    void validate() const
    {
        const auto v = violations();
        if (!v.empty())
        {
            std::string msg = "invalid experiment plan:";
            for (const auto &s : v)
                msg += "\n  " + s;
            throw std::invalid_argument(msg);
        }
    }
};

inline PlaMode default_pla_mode(StrategyKind k) { return is_dynamic(k) ? PlaMode::CR : PlaMode::SC; }

/// Noise variance fixed once for all scenarios from Alice's scenario-1 channel on the calibration grid.
inline NoiseModel calibrate_noise(const SystemModel &system, double snr_db,
                                  NoiseCalibration mode = NoiseCalibration::received_power,
                                  std::size_t rows = 50, std::size_t cols = 30)
{
    Scene scene = system.scene;
    scene.grid.rows = rows;
    scene.grid.cols = cols;
    const auto link = make_reflected_link(scene, scene.alice, system.led, system.pd, system.power);
    const auto config = fixed_cyclic(scene.grid.size(), system.profiles);
    double total = 0.0;
    if (mode == NoiseCalibration::gain)
    {
        const auto h = link.gains(config);
        for (double v : h.values)
            total += v * v;
    }
    else
    {
        const auto e = link.received(config);
        for (double v : e.values)
            total += v * v;
    }
    return NoiseModel(total / std::pow(10.0, snr_db / 10.0));
}

struct ExperimentResult
{
    ScoreSamples scores;
    NoiseModel noise;
    std::optional<PowerBudget> budget; // LoS attacks only
};

namespace detail
{

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn &&fn)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1)
    {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w)
    {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try
            {
                fn(begin, end);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace detail

/// Runs plan.trials transmissions per hypothesis. Trial t draws its challenge and both noise realisations
/// from substreams keyed by t, so the output does not depend on `threads`.
inline ExperimentResult run_experiment(const ExperimentPlan &plan, unsigned threads = 1)
{
    plan.validate();
    const Scene scene = plan.scene();
    const auto &sys = plan.system;
    const std::size_t n = plan.elements();
    const std::uint64_t key = plan.stream_key();

    ExperimentResult result{{}, calibrate_noise(sys, plan.snr_db, plan.calibration, plan.calibration_rows,
                                                plan.calibration_cols),
                            std::nullopt};
    const NoiseModel &noise = result.noise;

    const auto alice = make_reflected_link(scene, scene.alice, sys.led, sys.pd, sys.power);
    const ChallengeSource source(plan.strategy, n, sys.profiles, plan.cris_key());

    // Attacker's noise-free observation, either through the CRIS or fixed over the LoS path.
    std::optional<ReflectedLink> trudy;
    std::optional<ColorPowers> los_powers;
    if (plan.attacker.kind == AttackerKind::passive)
        trudy = make_reflected_link(scene, OrientedPoint::make(plan.attacker.position, plan.attacker.normal), sys.led,
                                    sys.pd, sys.power);
    else
    {
        auto rng = substream(key, StreamRole::budget);
        result.budget = average_alice_power(alice, source, plan.attacker.budget_samples, rng);
        LosAttacker los{plan.attacker.position, plan.attacker.normal, result.budget->mean, plan.attacker.split,
                        plan.attacker.weights};
        los_powers = los_attack_powers(los, scene.bob, sys.led, sys.pd, sys.power.gain_exponent).received;
    }

    // Verifier reference
    std::optional<ReferenceProfile> static_reference;
    std::optional<ChannelPredictor> predictor;
    auto ia_rng = substream(key, StreamRole::ia);
    if (plan.pla_mode == PlaMode::SC)
    {
        const auto config = source.at(0);
        static_reference = plan.reference == ReferenceMode::genie
                               ? ReferenceProfile{alice.received(config), Provenance::predicted}
                               : ia_phase_sc(alice, config, noise, plan.ia_probes, ia_rng);
    }
    else
    {
        const std::size_t probes = plan.ia_probe_configs == 0 ? 2 * n : plan.ia_probe_configs;
        predictor = ia_phase_cr(alice, source, noise, probes, ia_rng,
                                plan.reference == ReferenceMode::genie ? PredictorMode::genie
                                                                       : PredictorMode::estimated);
    }

    // Static configurations are evaluated once.
    std::optional<ColorPowers> static_alice, static_trudy;
    if (source.is_static())
    {
        const auto config = source.at(0);
        static_alice = alice.received(config);
        static_trudy = trudy ? trudy->received(config) : *los_powers;
    }

    auto &scores = result.scores;
    scores.h0.assign(plan.trials, 0.0);
    scores.h1.assign(plan.trials, 0.0);
    detail::parallel_for(plan.trials, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t)
        {
            ColorPowers ea, et;
            ReferenceProfile ref;
            if (source.is_static())
            {
                ea = *static_alice;
                et = *static_trudy;
                ref = *static_reference;
            }
            else
            {
                const auto config = source.at(t);
                ea = alice.received(config);
                et = trudy ? trudy->received(config) : *los_powers;
                ref = predictor->predict(config);
            }
            auto rng_a = substream(key, StreamRole::alice_noise, t);
            auto rng_t = substream(key, StreamRole::trudy_noise, t);
            scores.h0[t] = likelihood_statistic(noise.observe(ea, rng_a), ref);
            scores.h1[t] = likelihood_statistic(noise.observe(et, rng_t), ref);
        }
    });
    return result;
}

struct SuiteEntry
{
    ExperimentPlan plan;
    std::optional<ExperimentResult> result;
    DetCurve det;
    EerEstimate eer;
    double runtime_s = 0.0;
    std::string error; // non-empty when the plan failed
};

/// Evaluates each plan independently; a failing plan is recorded and the suite continues.
inline std::vector<SuiteEntry> run_suite(const std::vector<ExperimentPlan> &plans, unsigned threads = 1)
{
    if (plans.empty())
        throw std::invalid_argument("run_suite: no plans");
    std::vector<SuiteEntry> out;
    out.reserve(plans.size());
    for (const auto &plan : plans)
    {
        SuiteEntry entry{plan, std::nullopt, {}, {}, 0.0, {}};
        const auto start = std::chrono::steady_clock::now();
        try
        {
            entry.result = run_experiment(plan, threads);
            entry.det = det_curve(entry.result->scores, plan.n_thresholds);
            entry.eer = equal_error_rate(entry.result->scores);
        }
        catch (const std::exception &e)
        {
            entry.result.reset();
            entry.error = e.what();
        }
        entry.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace crispla
