#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "phasecade/errors.hpp"
#include "phasecade/version.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string seed_list;
    int workers = -1;
    int max_iters = -1;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Key=value configuration file");
    cmd->add_option("--out-dir", args.out_dir, "Output directory (default '.')");
    cmd->add_option("--seed-list", args.seed_list, "Comma-separated PRNG seeds");
    cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores)");
    cmd->add_option("--max-iters", args.max_iters, "Solver iteration cap");
    cmd->add_option("--set", args.sets, "Extra key=value override (repeatable)")
        ->type_name("KEY=VALUE");
}

// Defaults, then the config file, then --set pairs, then dedicated flags.
phasecade::RunConfig assemble(const CommonArgs& args, bool laser_defaults) {
    phasecade::RunConfig cfg = phasecade::default_run_config();
    if (laser_defaults) cfg.stage_counts = {3, 4, 5, 6};
    if (!args.config_path.empty()) phasecade::load_config_file(cfg, args.config_path);
    for (const auto& pair : args.sets) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            throw phasecade::config_error("--set expects KEY=VALUE, got '" + pair + "'");
        }
        phasecade::apply_key_value(cfg, pair.substr(0, eq), pair.substr(eq + 1));
    }
    if (!args.seed_list.empty()) cfg.seeds = phasecade::parse_seed_list(args.seed_list);
    if (args.workers >= 0) cfg.workers = args.workers;
    if (args.max_iters >= 0) cfg.solver.max_iterations = args.max_iters;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drive synthesis for cascaded phase-modulator waveform generation"};
    app.set_version_flag("--version", phasecade::version_string);
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        bool is_solve;
        phasecade::SweepAxis axis;
    };
    const Sub subs[] = {
        {"solve", "Single drive-profile solve with artifact dumps", true, {}},
        {"sweep-dispersion", "SDR versus per-stage dispersion", false, phasecade::SweepAxis::dispersion},
        {"sweep-bandwidth", "SDR versus drive bandwidth", false, phasecade::SweepAxis::pm_bandwidth},
        {"sweep-dac", "SINAD versus DAC resolution", false, phasecade::SweepAxis::dac_bits},
        {"sweep-laser", "SINAD versus laser power with IQ baseline", false, phasecade::SweepAxis::laser_power},
    };

    std::vector<CommonArgs> args(std::size(subs));
    std::vector<CLI::App*> cmds;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(cmd, args[i]);
        cmds.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(subs); ++i) {
        if (!cmds[i]->parsed()) continue;
        try {
            const bool laser = !subs[i].is_solve && subs[i].axis == phasecade::SweepAxis::laser_power;
            const phasecade::RunConfig cfg = assemble(args[i], laser);
            return subs[i].is_solve ? phasecade::cli::cmd_solve(cfg)
                                    : phasecade::cli::cmd_sweep(cfg, subs[i].axis);
        } catch (const phasecade::config_error& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
