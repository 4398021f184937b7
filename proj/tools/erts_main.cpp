#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "erts/commands.hpp"
#include "erts/config.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::int64_t runs = 0;
    std::int64_t horizon = 0;
    CLI::Option* out_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* runs_opt = nullptr;
    CLI::Option* horizon_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
        out_opt = cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
        seed_opt = cmd->add_option("--seed", seed, "root seed (overrides root_seed)");
        runs_opt = cmd->add_option("--runs", runs, "number of runs (overrides n_runs)");
        horizon_opt =
            cmd->add_option("--horizon", horizon, "episode length (overrides horizon)");
    }

    erts::ExperimentConfig load() const {
        erts::ExperimentConfig config = erts::load_config_file(config_path);
        erts::ConfigOverrides overrides;
        if (out_opt->count() > 0) overrides.out_dir = out_dir;
        if (seed_opt->count() > 0) overrides.root_seed = seed;
        if (runs_opt->count() > 0) overrides.n_runs = runs;
        if (horizon_opt->count() > 0) overrides.horizon = horizon;
        erts::apply_overrides(config, overrides);
        return config;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic-risk Gaussian bandit simulator and theory-bound evaluator"};
    app.require_subcommand(1);

    CLI::App* simulate = app.add_subcommand("simulate", "run the configured policies and "
                                                        "write CSV/JSON/plot-data outputs");
    CommonOptions sim_opts;
    sim_opts.attach(simulate);
    bool serial = false;
    simulate->add_flag("--serial", serial, "use the serial reference path instead of OpenMP");

    CLI::App* theory = app.add_subcommand("theory", "evaluate the regret-bound constants and "
                                                    "write the JSON report");
    CommonOptions theory_opts;
    theory_opts.attach(theory);

    CLI::App* validate = app.add_subcommand("validate", "run the fast invariant suite");
    std::string inject_fault;
    validate->add_option("--inject-fault", inject_fault,
                         "test fixture: corrupt an internal step (beta_update)")
        ->check(CLI::IsMember({"beta_update"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const auto outputs = erts::cmd_simulate(
                sim_opts.load(), serial ? erts::ExecMode::serial : erts::ExecMode::parallel);
            std::cout << "wrote " << outputs.csv_path << '\n'
                      << "wrote " << outputs.json_path << '\n'
                      << "wrote " << outputs.plot_path << '\n';
            return 0;
        }
        if (theory->parsed()) {
            std::cout << "wrote " << erts::cmd_theory(theory_opts.load()) << '\n';
            return 0;
        }
        erts::ValidateFaults faults;
        faults.corrupt_beta_update = inject_fault == "beta_update";
        return erts::cmd_validate(std::cout, faults);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
