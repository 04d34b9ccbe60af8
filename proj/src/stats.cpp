#include "cdasim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdasim {

namespace {

double series_mean(std::span<const double> series) {
    double sum = 0.0;
    for (double x : series) sum += x;
    return sum / static_cast<double>(series.size());
}

}  // namespace

std::vector<double> log_returns(std::span<const TradeRecord> trades) {
    std::vector<double> out;
    if (trades.size() < 2) return out;
    out.reserve(trades.size() - 1);
    for (std::size_t i = 0; i + 1 < trades.size(); ++i) {
        if (trades[i].price < 1 || trades[i + 1].price < 1) {
            throw std::invalid_argument("trade prices must be positive");
        }
        out.push_back(std::log(static_cast<double>(trades[i + 1].price) /
                               static_cast<double>(trades[i].price)));
    }
    return out;
}

std::vector<double> log_returns_from_prices(std::span<const int> prices) {
    std::vector<double> out;
    if (prices.size() < 2) return out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        if (prices[i] < 1 || prices[i + 1] < 1) {
            throw std::invalid_argument("prices must be positive");
        }
        out.push_back(std::log(static_cast<double>(prices[i + 1]) /
                               static_cast<double>(prices[i])));
    }
    return out;
}

SummaryStats moments(std::span<const double> series) {
    SummaryStats s;
    s.count = series.size();
    const std::size_t n = series.size();
    if (n == 0) return s;

    const double mean = series_mean(series);
    s.mean = mean;
    if (n < 2) return s;

    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : series) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double nd = static_cast<double>(n);
    s.std_dev = std::sqrt(m2 / (nd - 1.0));

    // Standardized moments need a real spread and a few data points.
    if (n >= 4 && m2 > 0.0) {
        const double var_n = m2 / nd;  // divisor-n variance
        s.skewness = (m3 / nd) / std::pow(var_n, 1.5);
        s.kurtosis = (m4 / nd) / (var_n * var_n);
    }
    return s;
}

SummaryStats summarize_returns(std::span<const double> returns) {
    SummaryStats s = moments(returns);
    s.c1 = abs_acf_lag1(returns);
    return s;
}

std::optional<std::vector<double>> acf(std::span<const double> series, int max_lag) {
    if (max_lag < 0) {
        throw std::invalid_argument("max_lag must be non-negative");
    }
    const std::size_t n = series.size();
    if (n <= static_cast<std::size_t>(max_lag)) {
        throw std::invalid_argument("series must be longer than max_lag");
    }

    const double mean = series_mean(series);
    double c0 = 0.0;
    for (double x : series) {
        const double d = x - mean;
        c0 += d * d;
    }
    if (c0 == 0.0) return std::nullopt;

    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
    out[0] = 1.0;
    for (int lag = 1; lag <= max_lag; ++lag) {
        double ch = 0.0;
        for (std::size_t i = 0; i + static_cast<std::size_t>(lag) < n; ++i) {
            ch += (series[i] - mean) * (series[i + static_cast<std::size_t>(lag)] - mean);
        }
        out[static_cast<std::size_t>(lag)] = ch / c0;
    }
    return out;
}

std::optional<double> abs_acf_lag1(std::span<const double> series) {
    if (series.size() < 2) return std::nullopt;
    std::vector<double> magnitudes(series.size());
    std::transform(series.begin(), series.end(), magnitudes.begin(),
                   [](double x) { return std::fabs(x); });
    auto series_acf = acf(magnitudes, 1);
    if (!series_acf) return std::nullopt;
    return (*series_acf)[1];
}

Eccdf::Eccdf(std::vector<double> samples) : values_(std::move(samples)) {
    if (values_.empty()) {
        throw std::invalid_argument("eccdf needs at least one sample");
    }
    std::sort(values_.begin(), values_.end());
    const double n = static_cast<double>(values_.size());
    probs_.resize(values_.size());
    // P(X > v_i): count of samples strictly above v_i, ties collapse.
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto above = values_.end() -
            std::upper_bound(values_.begin(), values_.end(), values_[i]);
        probs_[i] = static_cast<double>(above) / n;
    }
}

double Eccdf::prob_greater(double x) const {
    const auto above = values_.end() -
        std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(above) / static_cast<double>(values_.size());
}

double quantile(std::span<const double> sample, double p) {
    if (sample.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    p = std::clamp(p, 0.0, 1.0);
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

PartitionDescription partition_description(const OrderBook& book) {
    PartitionDescription part;
    const auto fill = [&](Side side, std::vector<std::int64_t>& z) {
        const auto& counts = book.counts(side);
        std::int64_t max_count = 0;
        for (int p = 1; p <= book.num_prices(); ++p) {
            max_count = std::max(max_count, counts[static_cast<std::size_t>(p)]);
        }
        z.assign(static_cast<std::size_t>(max_count) + 1, 0);
        for (int p = 1; p <= book.num_prices(); ++p) {
            ++z[static_cast<std::size_t>(counts[static_cast<std::size_t>(p)])];
        }
    };
    fill(Side::Ask, part.ask);
    fill(Side::Bid, part.bid);
    return part;
}

}  // namespace cdasim
