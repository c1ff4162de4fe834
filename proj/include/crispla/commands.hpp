// SPDX-License-Identifier: Apache-2.0
//
// Implementation of the command-line subcommands. Each returns the process exit status:
// 0 success, 2 configuration error, 3 runtime failure.

#pragma once

#include "config.hpp"
#include "csv.hpp"
#include "sim.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace crispla
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

inline constexpr std::size_t kDeskTrials = 2000;
inline constexpr std::size_t kFullTrials = 20000;

struct CommandOptions
{
    std::vector<std::string> overrides; // key=value, applied after the configuration file
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    unsigned threads = 0; // 0: CRIS_SIM_THREADS, then hardware concurrency
    std::ostream *log = &std::cout;
    std::ostream *err = &std::cerr;
};

inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char *env = std::getenv("CRIS_SIM_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace command_detail
{

inline std::vector<std::string> all_overrides(const CommandOptions &opts, std::vector<std::string> leading = {})
{
    for (const auto &o : opts.overrides)
        leading.push_back(o);
    if (opts.seed)
        leading.push_back("sim.seed=" + std::to_string(*opts.seed));
    if (opts.out)
        leading.push_back("output.directory=\"" + *opts.out + "\"");
    return leading;
}

inline void report(std::ostream &err, const ConfigError &e)
{
    err << "configuration error:\n";
    for (const auto &p : e.problems())
        err << "  " << p << '\n';
}

struct WrittenPlan
{
    std::string id;
    std::string det_file;
    const SuiteEntry *entry = nullptr;
};

inline std::string attacker_column(const AttackerSpec &a) { return a.label(); }

// Writes per-plan CSVs and summary.csv; returns false if any plan failed.
inline bool write_suite(const std::filesystem::path &dir, const std::vector<SuiteEntry> &suite,
                        std::vector<WrittenPlan> &written, std::ostream &log)
{
    std::filesystem::create_directories(dir);
    bool ok = true;
    std::ostringstream summary;
    summary << kSummaryHeader << '\n';
    for (const auto &e : suite)
    {
        const std::string id = e.plan.id();
        summary << id << ',' << scenario_number(e.plan.strategy) << ',' << e.plan.elements() << ','
                << attacker_column(e.plan.attacker) << ',';
        if (!e.error.empty())
        {
            ok = false;
            summary << "nan," << format_double(e.runtime_s) << '\n';
            log << "plan " << id << " FAILED: " << e.error << '\n';
            continue;
        }
        const std::string det = "det_" + id + ".csv";
        write_file((dir / ("scores_" + id + ".csv")).string(), write_scores, e.result->scores);
        write_file((dir / det).string(), write_det, e.det);
        summary << format_double(e.eer.eer) << ',' << format_double(e.runtime_s) << '\n';
        written.push_back({id, det, &e});
        log << "plan " << id << " scenario=" << scenario_number(e.plan.strategy) << " N=" << e.plan.elements()
            << " attacker=" << attacker_column(e.plan.attacker) << " EER=" << e.eer.eer << " (" << e.runtime_s
            << " s)\n";
    }
    std::ofstream out(dir / "summary.csv", std::ios::binary | std::ios::trunc);
    out << summary.str();
    if (!out)
        throw std::runtime_error("cannot write " + (dir / "summary.csv").string());
    return ok;
}

} // namespace command_detail

/// Runs every plan of the configuration (one per configured attacker).
inline int cmd_run(const std::string &config_path, const CommandOptions &opts = {})
{
    ExperimentConfig cfg;
    try
    {
        cfg = load_config(config_path, command_detail::all_overrides(opts));
    }
    catch (const ConfigError &e)
    {
        command_detail::report(*opts.err, e);
        return kExitConfig;
    }
    try
    {
        const auto suite = run_suite(cfg.plans(), resolve_threads(opts.threads));
        std::vector<command_detail::WrittenPlan> written;
        return command_detail::write_suite(cfg.output_dir, suite, written, *opts.log) ? kExitOk : kExitRuntime;
    }
    catch (const std::exception &e)
    {
        *opts.err << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

inline std::optional<StrategyKind> figure_strategy(const std::string &figure)
{
    if (figure == "fig4")
        return StrategyKind::FixedCyclic;
    if (figure == "fig5")
        return StrategyKind::StaticRandom;
    if (figure == "fig6")
        return StrategyKind::DynamicRandom;
    if (figure == "fig7")
        return StrategyKind::RandomPermutation;
    return std::nullopt;
}

// Both CRIS sizes of the DET figures, 960 and 1500 elements.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 2> kFigureGrids = {{{40, 24}, {50, 30}}};

/// Builds the plan grid of one DET figure: both CRIS sizes times every configured attacker.
inline std::vector<ExperimentPlan> figure_plans(const ExperimentConfig &cfg)
{
    std::vector<ExperimentPlan> plans;
    for (const auto &[rows, cols] : kFigureGrids)
    {
        ExperimentConfig sized = cfg;
        sized.rows = rows;
        sized.cols = cols;
        for (auto &p : sized.plans())
            plans.push_back(std::move(p));
    }
    return plans;
}

/// Regenerates the curves of one figure at desk (2,000 trials) or full (20,000 trials) scale.
/// An optional configuration file supplies the physical parameters; the figure fixes the strategy.
inline int cmd_reproduce(const std::string &figure, const std::string &scale,
                         const std::optional<std::string> &config_path, const CommandOptions &opts = {})
{
    const auto strategy = figure_strategy(figure);
    if (!strategy)
    {
        *opts.err << "unknown figure '" << figure << "' (expected fig4, fig5, fig6 or fig7)\n";
        return kExitConfig;
    }
    if (scale != "desk" && scale != "full")
    {
        *opts.err << "unknown scale '" << scale << "' (expected desk or full)\n";
        return kExitConfig;
    }
    const std::size_t trials = scale == "desk" ? kDeskTrials : kFullTrials;
    ExperimentConfig cfg;
    std::vector<ExperimentPlan> plans;
    try
    {
        const std::vector<std::string> leading{"cris.strategy=" + std::string(strategy_name(*strategy)),
                                               "sim.trials=" + std::to_string(trials)};
        const auto overrides = command_detail::all_overrides(opts, leading);
        cfg = config_path ? load_config(*config_path, overrides)
                          : parse_config("schema_version = 1\n", "defaults", overrides);
        cfg.strategy = *strategy;
        plans = figure_plans(cfg);
        std::vector<std::string> problems;
        for (const auto &p : plans)
            for (const auto &v : p.violations())
                problems.push_back(v);
        if (!problems.empty())
            throw ConfigError(problems);
    }
    catch (const ConfigError &e)
    {
        command_detail::report(*opts.err, e);
        return kExitConfig;
    }

    try
    {
        const auto suite = run_suite(plans, resolve_threads(opts.threads));
        const std::filesystem::path dir = cfg.output_dir;
        std::vector<command_detail::WrittenPlan> written;
        const bool ok = command_detail::write_suite(dir, suite, written, *opts.log);

        // gnuplot-compatible index: one row per curve
        std::ofstream index(dir / "index.dat", std::ios::binary | std::ios::trunc);
        index << "# figure " << figure << " scenario " << scenario_number(*strategy) << " trials " << trials << '\n'
              << "# plan_id N attacker eer det_file\n";
        for (const auto &w : written)
            index << w.id << ' ' << w.entry->plan.elements() << ' ' << w.entry->plan.attacker.label() << ' '
                  << format_double(w.entry->eer.eer) << ' ' << w.det_file << '\n';

        std::ofstream gp(dir / ("plot_" + figure + ".gp"), std::ios::binary | std::ios::trunc);
        gp << "# DET curves for " << figure << " (scenario " << scenario_number(*strategy) << ")\n"
           << "set datafile separator ','\nset logscale xy\nset xlabel 'P_FA'\nset ylabel 'P_MD'\n"
           << "set key bottom left\nplot \\\n";
        for (std::size_t i = 0; i < written.size(); ++i)
            gp << "  '" << written[i].det_file << "' skip 1 using 2:3 with lines title '"
               << written[i].entry->plan.attacker.label() << " N=" << written[i].entry->plan.elements() << "'"
               << (i + 1 < written.size() ? ", \\\n" : "\n");
        if (!index || !gp)
            throw std::runtime_error("cannot write figure index in " + dir.string());
        return ok ? kExitOk : kExitRuntime;
    }
    catch (const std::exception &e)
    {
        *opts.err << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

/// Schema and physics checks only; prints the resolved configuration.
inline int cmd_validate(const std::string &config_path, const CommandOptions &opts = {})
{
    try
    {
        const auto cfg = load_config(config_path, command_detail::all_overrides(opts));
        *opts.log << cfg.describe();
        return kExitOk;
    }
    catch (const ConfigError &e)
    {
        command_detail::report(*opts.err, e);
        return kExitConfig;
    }
}

} // namespace crispla
