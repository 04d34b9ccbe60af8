// cdasim command line: simulate | ensemble | sweep | theory.
//
// Every subcommand takes an optional `key = value` config file plus flag
// overrides for each key. Exit codes: 0 ok, 2 bad configuration, 3 I/O error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cdasim/io.hpp"

namespace {

struct FlagValues {
    std::optional<std::string> config_path;
    cdasim::ConfigMap overrides;
    int workers = 0;
};

// Registers the shared config keys as string flags; values are parsed by the
// same code path as the config file.
void add_common_options(CLI::App& cmd, FlagValues& flags) {
    cmd.add_option("config", flags.config_path, "config file with key = value lines");
    const auto override_key = [&flags, &cmd](const std::string& flag,
                                             const std::string& key,
                                             const std::string& help) {
        cmd.add_option_function<std::string>(
            flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; },
            help);
    };
    override_key("--N", "N", "price grid size");
    override_key("--n", "n", "placement window width");
    override_key("--lambda-a", "lambda_a", "limit ask arrival rate");
    override_key("--lambda-b", "lambda_b", "limit bid arrival rate");
    override_key("--mu-a", "mu_a", "market sell arrival rate");
    override_key("--mu-b", "mu_b", "market buy arrival rate");
    override_key("--rho", "rho", "symmetric shorthand: lambda = rho, mu = 1");
    override_key("--p0", "p0", "initial price class");
    override_key("--events", "events", "events per simulation run");
    override_key("--seed", "seed", "base seed (64-bit)");
    override_key("--runs", "runs", "runs per ensemble");
    override_key("--max-lag", "max_lag", "ACF horizon");
    override_key("--output-dir", "output_dir", "directory for emitted files");
    override_key("--rho-grid", "rho_grid", "comma-separated rho values (sweep)");
}

cdasim::RunConfig build_config(const FlagValues& flags) {
    cdasim::ConfigMap file;
    if (flags.config_path) {
        file = cdasim::parse_config_file(*flags.config_path);
    }
    return cdasim::make_run_config(file, flags.overrides);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous double auction simulator"};
    app.require_subcommand(1);

    FlagValues sim_flags;
    CLI::App* sim = app.add_subcommand(
        "simulate", "one run: trades.csv, returns.csv, queue.csv, acf.csv, summary.json");
    add_common_options(*sim, sim_flags);

    FlagValues ens_flags;
    CLI::App* ens = app.add_subcommand(
        "ensemble",
        "many runs: per_run_stats.csv, aggregate.csv, eccdf_kurtosis.csv, eccdf_c1.csv");
    add_common_options(*ens, ens_flags);
    ens->add_option("--workers", ens_flags.workers, "worker threads (0 = hardware)");

    FlagValues sweep_flags;
    CLI::App* swp = app.add_subcommand("sweep", "ensembles over a rho grid: sweep.csv");
    add_common_options(*swp, sweep_flags);
    swp->add_option("--workers", sweep_flags.workers, "worker threads (0 = hardware)");

    FlagValues theory_flags;
    CLI::App* thy = app.add_subcommand(
        "theory", "closed-form report: ergodicity, regime, equilibrium pmf");
    add_common_options(*thy, theory_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            cdasim::cmd_simulate(build_config(sim_flags));
        } else if (ens->parsed()) {
            cdasim::cmd_ensemble(build_config(ens_flags), ens_flags.workers);
        } else if (swp->parsed()) {
            cdasim::cmd_sweep(build_config(sweep_flags), sweep_flags.workers);
        } else if (thy->parsed()) {
            cdasim::cmd_theory(build_config(theory_flags), std::cout);
        }
    } catch (const cdasim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cdasim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
