#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdasim/ensemble.hpp"
#include "cdasim/model.hpp"

namespace cdasim {

// Bad key, bad value or contradictory configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output (CLI exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a command needs, assembled from a config file plus overrides.
struct RunConfig {
    ModelParams params;
    std::int64_t events = 100000;
    std::uint64_t seed = 1;
    int runs = 100;
    int max_lag = 50;
    std::string output_dir = ".";
    std::vector<double> rho_grid;  // sweep only

    EnsembleConfig ensemble_config() const {
        return EnsembleConfig{params, runs, events, seed, max_lag};
    }
};

using ConfigMap = std::map<std::string, std::string>;

// `key = value` lines; blank lines and lines starting with # are skipped.
ConfigMap parse_config_text(std::string_view text);
ConfigMap parse_config_file(const std::filesystem::path& path);

// Applies `overrides` on top of `base` and materializes a RunConfig.
// Rejects unknown keys, unparsable values, and the symmetric shorthand `rho`
// combined with any explicit rate. `rho` sets lambda_a = lambda_b = rho and
// mu_a = mu_b = 1.
RunConfig make_run_config(const ConfigMap& base, const ConfigMap& overrides = {});

// Shortest text that parses back to exactly the same double (up to 17
// significant digits), locale-independent.
std::string format_double(double value);

// Commands behind the CLI subcommands. Each writes its files into
// config.output_dir (created if missing) with fixed headers, fixed row order,
// fixed formatting and '\n' newlines, so identical inputs give identical
// bytes.
void cmd_simulate(const RunConfig& config);
void cmd_ensemble(const RunConfig& config, int workers = 0);
void cmd_sweep(const RunConfig& config, int workers = 0);
void cmd_theory(const RunConfig& config, std::ostream& out);

}  // namespace cdasim
