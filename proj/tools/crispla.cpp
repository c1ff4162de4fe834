// SPDX-License-Identifier: Apache-2.0
//
// crispla: Monte Carlo evaluation of CRIS-based physical-layer authentication.

#include <crispla/commands.hpp>

#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

int main(int argc, char **argv)
{
    CLI::App app{"Physical-layer authentication over a colored RIS in VLC: Monte Carlo DET evaluation"};
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    unsigned threads = 0;
    std::string figure;
    std::string scale = "desk";

    auto common = [&](CLI::App *cmd) {
        cmd->add_option("--set", sets, "Override a configuration value, e.g. --set sim.trials=100")->take_all();
        cmd->add_option("--seed", seed, "Master seed (overrides sim.seed)");
        cmd->add_option("--out", out, "Output directory (overrides output.directory)");
        cmd->add_option("--threads", threads, "Worker threads (default: CRIS_SIM_THREADS or all cores)");
    };

    auto *run = app.add_subcommand("run", "Run every plan of a configuration file");
    run->add_option("--config,config", config, "Configuration file (TOML)")->required();
    common(run);

    auto *reproduce = app.add_subcommand("reproduce", "Regenerate the DET curves of one figure");
    reproduce->add_option("figure", figure, "fig4 | fig5 | fig6 | fig7")->required();
    reproduce->add_option("--scale", scale, "desk (2,000 trials) or full (20,000 trials)");
    reproduce->add_option("--config", config, "Optional configuration file with physical parameters");
    common(reproduce);

    auto *validate = app.add_subcommand("validate", "Check a configuration file and print the resolved values");
    validate->add_option("--config,config", config, "Configuration file (TOML)")->required();
    common(validate);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : crispla::kExitConfig;
    }

    crispla::CommandOptions opts;
    opts.overrides = sets;
    opts.seed = seed;
    opts.out = out;
    opts.threads = threads;

    if (*run)
        return crispla::cmd_run(config, opts);
    if (*reproduce)
        return crispla::cmd_reproduce(figure, scale, config.empty() ? std::nullopt : std::optional(config), opts);
    return crispla::cmd_validate(config, opts);
}
