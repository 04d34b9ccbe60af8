#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cdasim/model.hpp"
#include "cdasim/simulate.hpp"

namespace cdasim {

// Descriptive statistics of a log-return series. Entries stay nullopt when
// the series is too short or degenerate, never silently 0.
//
// Conventions (fixed so every emitted number is reproducible):
//   std_dev   sample standard deviation, divisor n-1
//   skewness  standardized third central moment, divisor n
//   kurtosis  standardized fourth central moment, divisor n, raw (normal -> 3)
//   c1        lag-1 autocorrelation of the absolute returns, biased estimator
struct SummaryStats {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> std_dev;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::optional<double> c1;
};

// Tick-by-tick log-returns: ln(P(T_{i+1}) / P(T_i)) between consecutive
// trades. Fewer than two trades give an empty series.
std::vector<double> log_returns(std::span<const TradeRecord> trades);
std::vector<double> log_returns_from_prices(std::span<const int> prices);

// Mean / std_dev / skewness / kurtosis; c1 is left unset.
SummaryStats moments(std::span<const double> series);

// moments plus the c1 entry; the one-call Table row for a return series.
SummaryStats summarize_returns(std::span<const double> returns);

// Sample autocorrelation function at lags 0..max_lag: mean-subtracted,
// autocovariance divisor = length (biased), normalized by lag 0. Requires
// length > max_lag >= 0; a zero-variance series has no ACF (nullopt).
std::optional<std::vector<double>> acf(std::span<const double> series, int max_lag);

// Lag-1 autocorrelation of the element-wise absolute values.
std::optional<double> abs_acf_lag1(std::span<const double> series);

// Empirical complementary CDF of a sample: P(X > x), right-continuous step
// function over the sorted sample. Rejects empty input.
class Eccdf {
public:
    explicit Eccdf(std::vector<double> samples);

    double prob_greater(double x) const;
    const std::vector<double>& values() const { return values_; }   // ascending
    const std::vector<double>& probs() const { return probs_; }     // P(X > value)
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    std::vector<double> probs_;
};

// Empirical quantile with linear interpolation between order statistics
// (the common "type 7" rule). p is clamped to [0, 1]; rejects empty input.
double quantile(std::span<const double> sample, double p);

// Occupancy histogram of the book: element k counts the price classes holding
// exactly k orders of the given side.
struct PartitionDescription {
    std::vector<std::int64_t> ask;
    std::vector<std::int64_t> bid;
};

PartitionDescription partition_description(const OrderBook& book);

}  // namespace cdasim
