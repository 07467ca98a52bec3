#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "prbtd/experiment.hpp"
#include "prbtd/io.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> methods;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    cmd->add_option("--config", args.config_path, "configuration file (key = value lines)")
        ->required(config_required);
    cmd->add_option("--out", args.out_dir, "output directory");
    auto* seed_opt = cmd->add_option("--seed", "override the configured seed");
    seed_opt->check(CLI::NonNegativeNumber);
    seed_opt->each([&args](const std::string& v) { args.seed = std::stoull(v); });
    cmd->add_option("--methods", "comma-separated subset of prbtd,wei,cnb,td")
        ->each([&args](const std::string& v) { args.methods = v; });
}

prbtd::ExperimentConfig resolve_config(const CommonArgs& args) {
    prbtd::ExperimentConfig cfg = args.config_path.empty()
                                      ? prbtd::ExperimentConfig{}
                                      : prbtd::load_experiment_config(args.config_path);
    if (args.seed) cfg.scenario.seed = *args.seed;
    if (args.methods) {
        cfg.methods.clear();
        std::string item;
        std::istringstream ss(*args.methods);
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) cfg.methods.push_back(prbtd::method_from_string(item));
        }
        cfg.validate();
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prediction- and reputation-based truth discovery for crowdsensing data"};
    app.require_subcommand(1);

    CommonArgs sim_args, run_args, sweep_args;
    std::string axis;

    auto* sim = app.add_subcommand("simulate", "generate a synthetic world and write its files");
    add_common(sim, sim_args, false);

    auto* run = app.add_subcommand("run", "run the configured methods and write metrics");
    add_common(run, run_args, false);

    auto* sweep = app.add_subcommand("sweep", "run a comparison across one parameter axis");
    add_common(sweep, sweep_args, false);
    sweep->add_option("--axis", axis, "one of sparsity, clean_fraction, mu, bursty")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            prbtd::cmd_simulate(resolve_config(sim_args), sim_args.out_dir);
        } else if (run->parsed()) {
            prbtd::cmd_run(resolve_config(run_args), run_args.out_dir);
        } else if (sweep->parsed()) {
            prbtd::cmd_sweep(resolve_config(sweep_args), axis, sweep_args.out_dir);
        }
    } catch (const prbtd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const prbtd::MissingInputError& e) {
        std::cerr << "missing input: " << e.what() << '\n';
        return 4;
    } catch (const prbtd::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
