#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cdasim/model.hpp"
#include "cdasim/stats.hpp"

namespace cdasim {

struct EnsembleConfig {
    ModelParams params;
    int runs = 100;
    std::int64_t events_per_run = 100000;
    std::uint64_t base_seed = 1;
    int max_lag = 50;

    void validate() const;  // throws std::invalid_argument
};

// Mean and standard error of one statistic across the runs where it was
// defined. Runs with a degenerate series are excluded and counted, never
// folded in as zeros. std_error = sample std across runs / sqrt(defined runs),
// unset when fewer than two runs define the statistic.
struct StatAggregate {
    std::optional<double> mean;
    std::optional<double> std_error;
    int excluded_runs = 0;
};

struct EnsembleSummary {
    std::vector<SummaryStats> per_run;  // run-index order
    StatAggregate mean;
    StatAggregate std_dev;
    StatAggregate skewness;
    StatAggregate kurtosis;
    StatAggregate c1;
    std::optional<Eccdf> eccdf_kurtosis;  // over defined per-run values
    std::optional<Eccdf> eccdf_c1;
};

// Runs `config.runs` independent simulations (run i is seeded with
// derive_run_seed(base_seed, i)) and aggregates their per-run log-return
// statistics. Aggregation is a fold in run-index order after all runs finish,
// so the result is bit-identical for any worker count. workers = 0 picks the
// hardware concurrency.
EnsembleSummary run_ensemble(const EnsembleConfig& config, int workers = 0);

struct SweepRow {
    double rho;  // bid-queue load lambda_b / mu_a; lambda/mu in the symmetric case
    EnsembleSummary summary;
};

// One ensemble per config, emitted in grid order. The configs must agree on
// everything except the four rates.
std::vector<SweepRow> sweep(std::span<const EnsembleConfig> configs, int workers = 0);

}  // namespace cdasim
