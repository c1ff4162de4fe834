// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <crispla/commands.hpp>
#include <crispla/config.hpp>

#include "support/oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace crispla;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int number, const std::string &name, double budget_s, const std::function<Outcome()> &body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try
    {
        out = body();
    }
    catch (const std::exception &e)
    {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < budget_s;
    const bool pass = out.ok && in_time;
    if (!pass)
        ++failures;
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, budget_s);
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << number << "] " << name << " (" << timing
              << (in_time ? "" : ", over budget") << ")  " << out.detail << std::endl;
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

unsigned threads() { return resolve_threads(0); }

ExperimentPlan desk_plan(StrategyKind kind, std::size_t rows, std::size_t cols, const AttackerSpec &attacker,
                         std::size_t trials = kDeskTrials)
{
    auto cfg = parse_config("schema_version = 1\n", "acceptance");
    cfg.strategy = kind;
    cfg.rows = rows;
    cfg.cols = cols;
    cfg.trials = trials;
    return cfg.plan_for(attacker);
}

EerEstimate eer_of(const ExperimentPlan &plan) { return equal_error_rate(run_experiment(plan, threads()).scores); }

double combined(const EerEstimate &a, const EerEstimate &b)
{
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

bool det_ok(const DetCurve &c)
{
    if (c.points.size() < 2 || c.points.front().pfa != 1.0 || c.points.front().pmd != 0.0 ||
        c.points.back().pfa != 0.0 || c.points.back().pmd != 1.0)
        return false;
    for (std::size_t i = 1; i < c.points.size(); ++i)
        if (!(c.points[i].gamma > c.points[i - 1].gamma) || c.points[i].pfa > c.points[i - 1].pfa ||
            c.points[i].pmd < c.points[i - 1].pmd)
            return false;
    return true;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// summary.csv without its wall-clock column
std::string strip_runtime(const std::string &csv)
{
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        out += line.substr(0, line.rfind(',')) + '\n';
    return out;
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(CRISPLA_CLI) + " " + args + " > /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

int main()
{
    std::cout << "acceptance: " << threads() << " worker thread(s)" << std::endl;

    criterion(1, "spectral correctness", 1.0, [] {
        Outcome o;
        double worst = 0.0;
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            if (psd_value(kLuxeonParams[c], kLuxeonParams[c].peak_nm) != 1.0)
                o.ok = false;
            for (const auto &band : kDefaultFilterBands)
            {
                const double got = band_energy(kLuxeonParams[c], band);
                const double ref = oracle::band_integral(oracle::kTable[c], band.lower_nm, band.upper_nm);
                worst = std::max(worst, std::abs(got - ref) / ref);
            }
        }
        o.ok = o.ok && worst < 1e-6;
        o.detail = fmt("peaks exact; worst relative band error %.3g over 16 colour/band pairs", worst);
        return o;
    });

    criterion(2, "channel oracle equivalence", 1.0, [] {
        std::mt19937_64 rng(2);
        double worst = 0.0;
        for (auto [rows, cols] : {std::pair{1, 1}, {2, 2}, {4, 2}, {2, 4}})
        {
            Scene s;
            s.grid.rows = rows;
            s.grid.cols = cols;
            for (int rep = 0; rep < 20; ++rep)
            {
                const auto config = uniform_configuration(s.grid.size(), rng);
                const auto h = cris_channel_gains(s, s.alice, config, LedModel(), Photodetector());
                oracle::NaiveScene ns;
                ns.rows = rows;
                ns.cols = cols;
                const auto ref = oracle::reflected_gains(ns, config.rows());
                for (std::size_t c = 0; c < kNumColors; ++c)
                    worst = std::max(worst, std::abs(h[c] - ref[c]) / ref[c]);
            }
        }
        return Outcome{worst < 1e-12, fmt("N in {1, 4, 8}; worst relative error %.3g", worst)};
    });

    criterion(3, "GLRT noise floor", 10.0, [] {
        const auto plan = desk_plan(StrategyKind::FixedCyclic, 50, 30, AttackerSpec::passive({3.4, 2.5, 3.0}),
                                    kFullTrials);
        const auto r = run_experiment(plan, threads());
        double mean = 0.0;
        for (double v : r.scores.h0)
            mean += v;
        mean /= static_cast<double>(r.scores.h0.size());
        const double ratio = mean / (4.0 * r.noise.sigma2());
        return Outcome{std::abs(ratio - 1.0) < 0.05,
                       fmt("mean(h0) / 4 sigma^2 = %.4f over %.0f trials", ratio, double(r.scores.h0.size()))};
    });

    criterion(4, "DET structural invariants", 5.0, [] {
        std::mt19937_64 rng(4);
        std::size_t curves = 0;
        bool ok = true;
        for (int k = 0; k < 200; ++k)
        {
            std::gamma_distribution<double> d0(1.0 + k % 5, 1.0), d1(1.0 + k % 7, 1.0 + 0.05 * k);
            ScoreSamples s;
            for (int i = 0; i < 200 + k; ++i)
                s.h0.push_back(d0(rng));
            for (int i = 0; i < 150 + 2 * k; ++i)
                s.h1.push_back(d1(rng));
            for (std::size_t n : {std::size_t{0}, std::size_t{16}, std::size_t{512}})
            {
                ok = ok && det_ok(det_curve(s, n));
                ++curves;
            }
            ScoreSamples same{s.h0, s.h0};
            for (std::size_t n : {std::size_t{0}, std::size_t{512}})
            {
                const auto c = det_curve(same, n);
                ok = ok && det_ok(c);
                for (const auto &p : c.points)
                    ok = ok && std::abs(p.pfa + p.pmd - 1.0) < 1e-15;
                ++curves;
            }
        }
        return Outcome{ok, fmt("%.0f curves monotone with endpoints (1,0) and (0,1); identical inputs sum to 1",
                               double(curves))};
    });

    criterion(5, "scenario ordering at desk scale", 120.0, [] {
        const auto trudy = AttackerSpec::passive({3.4, 2.5, 3.0});
        std::array<EerEstimate, 4> e;
        const std::array<StrategyKind, 4> kinds = {StrategyKind::FixedCyclic, StrategyKind::StaticRandom,
                                                   StrategyKind::DynamicRandom, StrategyKind::RandomPermutation};
        for (std::size_t i = 0; i < 4; ++i)
            e[i] = eer_of(desk_plan(kinds[i], 50, 30, trudy));
        const double se14 = combined(e[0], e[3]);
        const bool ok = e[2].eer <= e[1].eer && e[1].eer <= e[0].eer && std::abs(e[0].eer - e[3].eer) <= 2.0 * se14;
        return Outcome{ok, fmt("EER S1 %.4f, S2 %.4f, S3 %.4f, ", e[0].eer, e[1].eer, e[2].eer) +
                               fmt("S4 %.4f; |S1-S4| = %.4f vs 2 SE = %.4f", e[3].eer, std::abs(e[0].eer - e[3].eer),
                                   2.0 * se14)};
    });

    criterion(6, "separation monotonicity", 180.0, [] {
        std::vector<EerEstimate> e;
        for (const auto &p : kDefaultPassivePositions)
            e.push_back(eer_of(desk_plan(StrategyKind::DynamicRandom, 50, 30, AttackerSpec::passive(p))));
        bool ok = true;
        std::string detail = "S3 EER by x_T:";
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            detail += fmt(" %.4f", e[i].eer);
            if (i > 0 && e[i].eer > e[i - 1].eer + combined(e[i], e[i - 1]))
                ok = false;
        }
        return Outcome{ok, detail};
    });

    criterion(7, "CRIS size benefit", 120.0, [] {
        const auto trudy = AttackerSpec::passive({3.05, 2.5, 3.0});
        bool ok = true;
        std::string detail;
        for (auto kind : {StrategyKind::StaticRandom, StrategyKind::DynamicRandom})
        {
            const auto small = eer_of(desk_plan(kind, 40, 24, trudy));
            const auto large = eer_of(desk_plan(kind, 50, 30, trudy));
            const double se = combined(small, large);
            ok = ok && large.eer <= small.eer + se;
            detail += fmt("S%.0f: N=960 %.4f, N=1500 %.4f (SE %.4f); ", scenario_number(kind), small.eer, large.eer, se);
        }
        return Outcome{ok, detail};
    });

    criterion(8, "LoS attack budget", 60.0, [] {
        auto plan = desk_plan(StrategyKind::DynamicRandom, 50, 30, AttackerSpec::los(), 200);
        const auto r = run_experiment(plan, threads());
        const auto scene = plan.scene();
        const LosAttacker los{plan.attacker.position, plan.attacker.normal, r.budget->mean};
        const auto attack = los_attack_powers(los, scene.bob, plan.system.led, plan.system.pd);
        const double budget_err = std::abs(attack.received.sum() - r.budget->mean) / r.budget->mean;

        // Noise-free statistic spread over 200 distinct challenges
        const auto alice = make_reflected_link(scene, scene.alice, plan.system.led, plan.system.pd, plan.system.power);
        const ChallengeSource source(plan.strategy, plan.elements(), plan.system.profiles, plan.cris_key());
        const auto predictor = ChannelPredictor::genie(alice);
        double m = 0.0, m2 = 0.0;
        const int n = 200;
        for (int t = 0; t < n; ++t)
        {
            const double l = likelihood_statistic(attack.received, predictor.predict(source.at(t)));
            m += l;
            m2 += l * l;
        }
        const double var_clean = m2 / n - (m / n) * (m / n);
        double hm = 0.0, hm2 = 0.0;
        for (double v : r.scores.h1)
        {
            hm += v;
            hm2 += v * v;
        }
        const double var_h1 = hm2 / n - (hm / n) * (hm / n);

        auto clone = desk_plan(StrategyKind::FixedCyclic, 50, 30, AttackerSpec::passive(scene.alice.position));
        const auto c = run_experiment(clone, threads());
        const double d = oracle::ks_two_sample(c.scores.h0, c.scores.h1);
        const double crit = oracle::ks_critical_two_sample(c.scores.h0.size(), c.scores.h1.size());

        const bool ok = budget_err < 1e-9 && var_h1 > 0.0 && var_clean > 0.0 && d < crit;
        return Outcome{ok, fmt("budget error %.3g; h1 variance %.3g (noise-free %.3g); ", budget_err, var_h1, var_clean) +
                               fmt("clone KS D = %.4f < %.4f", d, crit)};
    });

    criterion(9, "determinism across thread counts", 300.0, [] {
        const auto base = fs::temp_directory_path() / "crispla_acceptance_determinism";
        fs::remove_all(base);
        const auto a = base / "t1", b = base / "t8";
        const int ra = run_cli("reproduce fig6 --scale desk --seed 42 --threads 1 --out " + a.string());
        const int rb = run_cli("reproduce fig6 --scale desk --seed 42 --threads 8 --out " + b.string());
        if (ra != 0 || rb != 0)
            return Outcome{false, fmt("exit codes %.0f and %.0f", ra, rb)};
        std::size_t compared = 0;
        std::string mismatch;
        for (const auto &entry : fs::directory_iterator(a))
        {
            const auto name = entry.path().filename().string();
            if (entry.path().extension() != ".csv")
                continue;
            const auto other = b / name;
            if (!fs::exists(other))
            {
                mismatch += " missing:" + name;
                continue;
            }
            std::string x = slurp(entry.path()), y = slurp(other);
            if (name == "summary.csv")
            {
                x = strip_runtime(x);
                y = strip_runtime(y);
            }
            if (x != y)
                mismatch += " differs:" + name;
            ++compared;
        }
        const bool ok = mismatch.empty() && compared == 25; // 12 plans x (scores, det) + summary
        fs::remove_all(base);
        return Outcome{ok, fmt("%.0f CSV files compared", double(compared)) + mismatch};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion/criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
