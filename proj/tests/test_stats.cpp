#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cdasim/stats.hpp"
#include "reference_stats.hpp"

using namespace cdasim;

namespace {

std::vector<TradeRecord> trades_at(std::initializer_list<int> prices) {
    std::vector<TradeRecord> out;
    std::int64_t i = 0;
    for (int p : prices) {
        out.push_back(TradeRecord{i, static_cast<double>(i), p});
        ++i;
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("log returns") {
    CHECK(log_returns(trades_at({250, 250})) == std::vector<double>{0.0});

    const auto single = log_returns(trades_at({250, 255}));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(0.019802627296179713).epsilon(1e-14));

    const auto round_trip = log_returns(trades_at({123, 321, 123}));
    REQUIRE(round_trip.size() == 2);
    CHECK(round_trip[0] + round_trip[1] == doctest::Approx(0.0).epsilon(1e-15));

    CHECK(log_returns(trades_at({250})).empty());
    CHECK(log_returns(trades_at({})).empty());

    const std::vector<int> prices{2, 4, 8};
    const auto from_prices = log_returns_from_prices(prices);
    REQUIRE(from_prices.size() == 2);
    CHECK(from_prices[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("moments of a symmetric two-point series") {
    std::vector<double> series;
    for (int i = 0; i < 500; ++i) {
        series.push_back(0.3);
        series.push_back(-0.3);
    }
    const SummaryStats s = moments(series);
    CHECK(*s.mean == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(*s.skewness == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(*s.kurtosis == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate series leave higher moments undefined") {
    const std::vector<double> constant(100, 1.5);
    const SummaryStats s = moments(constant);
    CHECK(*s.mean == doctest::Approx(1.5));
    CHECK(*s.std_dev == 0.0);
    CHECK_FALSE(s.skewness.has_value());
    CHECK_FALSE(s.kurtosis.has_value());

    const SummaryStats empty = moments(std::vector<double>{});
    CHECK(empty.count == 0);
    CHECK_FALSE(empty.mean.has_value());
    CHECK_FALSE(empty.std_dev.has_value());

    const SummaryStats three = moments(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(three.mean.has_value());
    CHECK(three.std_dev.has_value());
    CHECK_FALSE(three.kurtosis.has_value());  // needs at least 4 points
}

TEST_CASE("gaussian sample has kurtosis 3") {
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> sample(1000000);
    for (double& x : sample) x = normal(gen);
    const SummaryStats s = moments(sample);
    CHECK(*s.kurtosis == doctest::Approx(3.0).epsilon(0.05 / 3.0));
    CHECK(*s.std_dev == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("moments are translation and scale consistent") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> uniform(-1.0, 2.0);
    std::vector<double> series(2000);
    for (double& x : series) x = uniform(gen);

    const SummaryStats base = moments(series);

    std::vector<double> shifted = series;
    for (double& x : shifted) x += 5.0;
    const SummaryStats sh = moments(shifted);
    CHECK(*sh.mean == doctest::Approx(*base.mean + 5.0).epsilon(1e-12));
    CHECK(*sh.std_dev == doctest::Approx(*base.std_dev).epsilon(1e-12));
    CHECK(*sh.skewness == doctest::Approx(*base.skewness).epsilon(1e-9));
    CHECK(*sh.kurtosis == doctest::Approx(*base.kurtosis).epsilon(1e-9));

    std::vector<double> scaled = series;
    for (double& x : scaled) x *= 3.0;
    const SummaryStats sc = moments(scaled);
    CHECK(*sc.std_dev == doctest::Approx(3.0 * *base.std_dev).epsilon(1e-12));
    CHECK(*sc.skewness == doctest::Approx(*base.skewness).epsilon(1e-12));
    CHECK(*sc.kurtosis == doctest::Approx(*base.kurtosis).epsilon(1e-12));

    const auto acf_base = acf(series, 10);
    const auto acf_scaled = acf(scaled, 10);
    REQUIRE(acf_base.has_value());
    REQUIRE(acf_scaled.has_value());
    for (std::size_t lag = 0; lag <= 10; ++lag) {
        CHECK((*acf_scaled)[lag] == doctest::Approx((*acf_base)[lag]).epsilon(1e-12));
    }
}

TEST_CASE("acf basics") {
    std::mt19937_64 gen(31337);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<double> noise(100000);
    for (double& x : noise) x = uniform(gen);

    const auto values = acf(noise, 50);
    REQUIRE(values.has_value());
    CHECK((*values)[0] == 1.0);
    CHECK(std::fabs((*values)[1]) < 0.01);
    for (double v : *values) {
        CHECK(v <= 1.0);
        CHECK(v >= -1.0);
    }

    // strictly alternating series: lag-1 autocorrelation is -(n-1)/n
    const int n = 1000;
    std::vector<double> alternating(n);
    for (int i = 0; i < n; ++i) alternating[static_cast<std::size_t>(i)] = i % 2 ? -1.0 : 1.0;
    const auto alt = acf(alternating, 1);
    REQUIRE(alt.has_value());
    CHECK((*alt)[1] == doctest::Approx(-(static_cast<double>(n) - 1.0) /
                                       static_cast<double>(n)).epsilon(1e-12));

    CHECK_FALSE(acf(std::vector<double>(100, 2.0), 5).has_value());
    CHECK_THROWS_AS(acf(noise, -1), std::invalid_argument);
    CHECK_THROWS_AS(acf(std::vector<double>{1.0, 2.0}, 2), std::invalid_argument);
}

TEST_CASE("abs acf lag 1") {
    // alternating signs with equal magnitude: |x| is constant, no ACF
    std::vector<double> constant_mag;
    for (int i = 0; i < 100; ++i) constant_mag.push_back(i % 2 ? -0.5 : 0.5);
    CHECK_FALSE(abs_acf_lag1(constant_mag).has_value());

    // bursts of large magnitudes give positive c1
    std::vector<double> bursty;
    for (int block = 0; block < 500; ++block) {
        const double scale = block % 2 ? 1.0 : 0.01;
        for (int i = 0; i < 20; ++i) bursty.push_back((i % 2 ? -1.0 : 1.0) * scale);
    }
    const auto c1 = abs_acf_lag1(bursty);
    REQUIRE(c1.has_value());
    CHECK(*c1 > 0.8);

    CHECK_FALSE(abs_acf_lag1(std::vector<double>{1.0}).has_value());
}

TEST_CASE("eccdf") {
    const Eccdf e(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(e.prob_greater(1.5) == doctest::Approx(2.0 / 3.0));
    CHECK(e.prob_greater(0.0) == 1.0);
    CHECK(e.prob_greater(3.0) == 0.0);
    CHECK(e.prob_greater(5.0) == 0.0);

    CHECK_THROWS_AS(Eccdf(std::vector<double>{}), std::invalid_argument);

    std::mt19937_64 gen(555);
    std::normal_distribution<double> normal(0.0, 2.0);
    std::vector<double> sample(1000);
    for (double& x : sample) x = normal(gen);
    const Eccdf random(sample);
    for (std::size_t i = 1; i < random.size(); ++i) {
        CHECK(random.values()[i] >= random.values()[i - 1]);
        CHECK(random.probs()[i] <= random.probs()[i - 1]);
    }
    CHECK(random.probs().front() <= 1.0);
    CHECK(random.probs().back() >= 0.0);
}

TEST_CASE("quantile interpolates order statistics") {
    const std::vector<double> sample{4.0, 1.0, 3.0, 2.0};
    CHECK(quantile(sample, 0.0) == 1.0);
    CHECK(quantile(sample, 1.0) == 4.0);
    CHECK(quantile(sample, 0.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST_CASE("partition description") {
    OrderBook book(10, 6);
    book.place_limit(Side::Ask, 7);
    book.place_limit(Side::Ask, 8);
    book.place_limit(Side::Ask, 8);
    book.place_limit(Side::Ask, 9);
    book.place_limit(Side::Bid, 3);
    book.place_limit(Side::Bid, 4);
    book.place_limit(Side::Bid, 5);
    book.place_limit(Side::Bid, 5);
    book.place_limit(Side::Bid, 5);

    const PartitionDescription part = partition_description(book);
    CHECK(part.ask == std::vector<std::int64_t>{7, 2, 1});
    CHECK(part.bid == std::vector<std::int64_t>{7, 2, 0, 1});

    const PartitionDescription empty = partition_description(OrderBook(10, 5));
    CHECK(empty.ask == std::vector<std::int64_t>{10});
    CHECK(empty.bid == std::vector<std::int64_t>{10});
}

TEST_CASE("partition description conserves mass on random books") {
    std::mt19937_64 gen(777);
    std::uniform_int_distribution<int> price(1, 40);
    std::uniform_int_distribution<int> count(0, 60);
    for (int trial = 0; trial < 20; ++trial) {
        OrderBook book(40, 20);
        const int orders = count(gen);
        for (int i = 0; i < orders; ++i) book.place_limit(Side::Ask, price(gen));
        const int bids = count(gen);
        for (int i = 0; i < bids; ++i) {
            book.place_limit(Side::Bid, price(gen));
        }
        const PartitionDescription part = partition_description(book);
        std::int64_t classes = 0;
        std::int64_t mass = 0;
        for (std::size_t k = 0; k < part.ask.size(); ++k) {
            classes += part.ask[k];
            mass += static_cast<std::int64_t>(k) * part.ask[k];
        }
        CHECK(classes == 40);
        CHECK(mass == book.depth(Side::Ask));
    }
}

TEST_CASE("library statistics match the slow reference") {
    std::mt19937_64 gen(424242);
    std::uniform_int_distribution<int> length(4, 1000);
    std::uniform_real_distribution<double> value(-3.0, 3.0);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> series(static_cast<std::size_t>(length(gen)));
        for (double& x : series) x = value(gen);

        const SummaryStats fast = moments(series);
        const refstats::Moments slow = refstats::moments(series);
        const auto close = [](double a, long double b) {
            const double diff = std::fabs(a - static_cast<double>(b));
            const double scale = std::max({1.0, std::fabs(a),
                                           std::fabs(static_cast<double>(b))});
            return diff <= 1e-10 * scale;
        };
        CHECK(close(*fast.mean, slow.mean));
        CHECK(close(*fast.std_dev, slow.std_dev));
        REQUIRE(fast.skewness.has_value());
        CHECK(close(*fast.skewness, *slow.skewness));
        CHECK(close(*fast.kurtosis, *slow.kurtosis));

        const int max_lag = std::min<int>(20, static_cast<int>(series.size()) - 1);
        const auto fast_acf = acf(series, max_lag);
        const auto slow_acf = refstats::acf(series, max_lag);
        REQUIRE(fast_acf.has_value());
        for (std::size_t lag = 0; lag < slow_acf.size(); ++lag) {
            CHECK(close((*fast_acf)[lag], slow_acf[lag]));
        }
    }
}

TEST_CASE("summarize_returns fills c1") {
    std::mt19937_64 gen(13);
    std::normal_distribution<double> normal(0.0, 0.02);
    std::vector<double> returns(5000);
    for (double& x : returns) x = normal(gen);
    const SummaryStats s = summarize_returns(returns);
    REQUIRE(s.c1.has_value());
    CHECK(std::fabs(*s.c1) < 0.05);
    CHECK(s.count == returns.size());
}

TEST_SUITE_END();
