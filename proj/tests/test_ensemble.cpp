#include <doctest.h>

#include <cmath>

#include "cdasim/ensemble.hpp"
#include "cdasim/rng.hpp"
#include "cdasim/simulate.hpp"

using namespace cdasim;

namespace {

EnsembleConfig small_config(double rho, int runs, std::int64_t events,
                            std::uint64_t seed = 20240601) {
    EnsembleConfig config;
    config.params = ModelParams::symmetric(rho);
    config.runs = runs;
    config.events_per_run = events;
    config.base_seed = seed;
    return config;
}

bool same_summary(const EnsembleSummary& a, const EnsembleSummary& b) {
    if (a.per_run.size() != b.per_run.size()) return false;
    for (std::size_t i = 0; i < a.per_run.size(); ++i) {
        if (a.per_run[i].mean != b.per_run[i].mean) return false;
        if (a.per_run[i].std_dev != b.per_run[i].std_dev) return false;
        if (a.per_run[i].skewness != b.per_run[i].skewness) return false;
        if (a.per_run[i].kurtosis != b.per_run[i].kurtosis) return false;
        if (a.per_run[i].c1 != b.per_run[i].c1) return false;
    }
    return a.kurtosis.mean == b.kurtosis.mean &&
           a.kurtosis.std_error == b.kurtosis.std_error &&
           a.c1.mean == b.c1.mean && a.mean.mean == b.mean.mean &&
           a.std_dev.mean == b.std_dev.mean;
}

}  // namespace

TEST_SUITE_BEGIN("ensemble");

TEST_CASE("config validation") {
    EnsembleConfig config = small_config(0.8, 1, 100);
    CHECK_NOTHROW(config.validate());
    config.runs = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_config(0.8, 1, 1);
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_config(0.8, 1, 100);
    config.max_lag = -1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("single-run ensemble reduces to the run itself") {
    const EnsembleConfig config = small_config(0.8, 1, 20000);
    const EnsembleSummary summary = run_ensemble(config);

    const SimOutput out = run(config.params, config.events_per_run,
                              derive_run_seed(config.base_seed, 0));
    const SummaryStats direct = summarize_returns(log_returns(out.trades));

    REQUIRE(summary.per_run.size() == 1);
    CHECK(summary.per_run[0].mean == direct.mean);
    CHECK(summary.per_run[0].kurtosis == direct.kurtosis);
    CHECK(summary.mean.mean == direct.mean);
    CHECK(summary.kurtosis.mean == direct.kurtosis);
    CHECK_FALSE(summary.kurtosis.std_error.has_value());  // one run, no spread
    CHECK(summary.kurtosis.excluded_runs == 0);
}

TEST_CASE("ensembles are deterministic and parallel-invariant") {
    const EnsembleConfig config = small_config(0.8, 12, 10000);
    const EnsembleSummary serial = run_ensemble(config, 1);
    const EnsembleSummary again = run_ensemble(config, 1);
    const EnsembleSummary threaded = run_ensemble(config, 4);

    CHECK(same_summary(serial, again));
    CHECK(same_summary(serial, threaded));
}

TEST_CASE("degenerate runs are excluded and counted") {
    // two events rarely produce two trades, so most runs have no returns
    const EnsembleConfig config = small_config(0.8, 20, 2);
    const EnsembleSummary summary = run_ensemble(config);
    CHECK(summary.per_run.size() == 20);
    CHECK(summary.kurtosis.excluded_runs > 0);
    for (const SummaryStats& s : summary.per_run) {
        if (!s.mean) CHECK(s.count < 2);
    }
}

TEST_CASE("kurtosis standard error shrinks like sqrt(runs)") {
    const EnsembleSummary small = run_ensemble(small_config(6.0, 60, 20000, 99));
    const EnsembleSummary large = run_ensemble(small_config(6.0, 240, 20000, 99));
    REQUIRE(small.kurtosis.std_error.has_value());
    REQUIRE(large.kurtosis.std_error.has_value());
    const double ratio = *small.kurtosis.std_error / *large.kurtosis.std_error;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("sweep emits rows in grid order") {
    std::vector<EnsembleConfig> grid;
    for (double rho : {0.8, 1.2, 6.0}) {
        grid.push_back(small_config(rho, 20, 20000));
    }
    const auto rows = sweep(grid);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rho == doctest::Approx(0.8));
    CHECK(rows[1].rho == doctest::Approx(1.2));
    CHECK(rows[2].rho == doctest::Approx(6.0));

    // volatility of returns decreases as limit orders crowd the book
    REQUIRE(rows[0].summary.std_dev.mean.has_value());
    CHECK(*rows[0].summary.std_dev.mean > *rows[1].summary.std_dev.mean);
    CHECK(*rows[1].summary.std_dev.mean > *rows[2].summary.std_dev.mean);

    // the first-lag volatility autocorrelation collapses across the transition
    CHECK(*rows[0].summary.c1.mean > *rows[1].summary.c1.mean);

    const auto single = sweep(std::vector<EnsembleConfig>{grid[0]});
    REQUIRE(single.size() == 1);
    CHECK(same_summary(single[0].summary, rows[0].summary));

    CHECK_THROWS_AS(sweep(std::vector<EnsembleConfig>{}), std::invalid_argument);

    auto mismatched = grid;
    mismatched[1].runs = 7;
    CHECK_THROWS_AS(sweep(mismatched), std::invalid_argument);
}

TEST_CASE("eccdf products cover the defined runs") {
    const EnsembleConfig config = small_config(6.0, 15, 20000);
    const EnsembleSummary summary = run_ensemble(config);
    REQUIRE(summary.eccdf_kurtosis.has_value());
    REQUIRE(summary.eccdf_c1.has_value());
    const int defined = config.runs - summary.kurtosis.excluded_runs;
    CHECK(static_cast<int>(summary.eccdf_kurtosis->size()) == defined);
}

TEST_SUITE_END();
