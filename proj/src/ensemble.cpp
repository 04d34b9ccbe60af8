#include "cdasim/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cdasim/rng.hpp"
#include "cdasim/simulate.hpp"

namespace cdasim {

void EnsembleConfig::validate() const {
    params.validate();
    if (runs < 1) {
        throw std::invalid_argument("runs must be at least 1");
    }
    if (events_per_run < 2) {
        throw std::invalid_argument("events_per_run must be at least 2");
    }
    if (max_lag < 0) {
        throw std::invalid_argument("max_lag must be non-negative");
    }
}

namespace {

StatAggregate aggregate_stat(const std::vector<SummaryStats>& per_run,
                             std::optional<double> SummaryStats::* field) {
    StatAggregate agg;
    std::vector<double> defined;
    defined.reserve(per_run.size());
    for (const auto& stats : per_run) {
        if (stats.*field) defined.push_back(*(stats.*field));
    }
    agg.excluded_runs = static_cast<int>(per_run.size() - defined.size());
    if (defined.empty()) return agg;

    double sum = 0.0;
    for (double v : defined) sum += v;
    const double mean = sum / static_cast<double>(defined.size());
    agg.mean = mean;
    if (defined.size() >= 2) {
        double ss = 0.0;
        for (double v : defined) {
            const double d = v - mean;
            ss += d * d;
        }
        const double nd = static_cast<double>(defined.size());
        agg.std_error = std::sqrt(ss / (nd - 1.0)) / std::sqrt(nd);
    }
    return agg;
}

std::optional<Eccdf> eccdf_of(const std::vector<SummaryStats>& per_run,
                              std::optional<double> SummaryStats::* field) {
    std::vector<double> defined;
    for (const auto& stats : per_run) {
        if (stats.*field) defined.push_back(*(stats.*field));
    }
    if (defined.empty()) return std::nullopt;
    return Eccdf(std::move(defined));
}

}  // namespace

EnsembleSummary run_ensemble(const EnsembleConfig& config, int workers) {
    config.validate();
    if (workers < 0) {
        throw std::invalid_argument("workers must be non-negative");
    }
    if (workers == 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min(workers, config.runs);

    std::vector<SummaryStats> per_run(static_cast<std::size_t>(config.runs));
    std::atomic<int> next_run{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto work = [&]() {
        for (;;) {
            const int i = next_run.fetch_add(1, std::memory_order_relaxed);
            if (i >= config.runs) return;
            try {
                const std::uint64_t seed =
                    derive_run_seed(config.base_seed, static_cast<std::uint64_t>(i));
                const SimOutput out = run(config.params, config.events_per_run, seed);
                const std::vector<double> returns = log_returns(out.trades);
                per_run[static_cast<std::size_t>(i)] = summarize_returns(returns);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& thread : pool) thread.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    EnsembleSummary summary;
    summary.per_run = std::move(per_run);
    summary.mean = aggregate_stat(summary.per_run, &SummaryStats::mean);
    summary.std_dev = aggregate_stat(summary.per_run, &SummaryStats::std_dev);
    summary.skewness = aggregate_stat(summary.per_run, &SummaryStats::skewness);
    summary.kurtosis = aggregate_stat(summary.per_run, &SummaryStats::kurtosis);
    summary.c1 = aggregate_stat(summary.per_run, &SummaryStats::c1);
    summary.eccdf_kurtosis = eccdf_of(summary.per_run, &SummaryStats::kurtosis);
    summary.eccdf_c1 = eccdf_of(summary.per_run, &SummaryStats::c1);
    return summary;
}

std::vector<SweepRow> sweep(std::span<const EnsembleConfig> configs, int workers) {
    if (configs.empty()) {
        throw std::invalid_argument("sweep needs at least one configuration");
    }
    const EnsembleConfig& head = configs.front();
    for (const EnsembleConfig& config : configs) {
        const ModelParams& p = config.params;
        const ModelParams& h = head.params;
        if (p.num_prices != h.num_prices || p.window != h.window ||
            p.initial_price != h.initial_price || config.runs != head.runs ||
            config.events_per_run != head.events_per_run ||
            config.base_seed != head.base_seed || config.max_lag != head.max_lag) {
            throw std::invalid_argument("sweep configs may differ only in rates");
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (const EnsembleConfig& config : configs) {
        rows.push_back(SweepRow{
            .rho = config.params.lambda_b / config.params.mu_a,
            .summary = run_ensemble(config, workers),
        });
    }
    return rows;
}

}  // namespace cdasim
