#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cdasim {

enum class Side { Bid, Ask };

// Auction parameters: N integer price classes, placement window width n,
// the four Poisson arrival rates and the opening price p0.
//
// lambda_a / lambda_b are the limit ask / bid arrival rates. mu_a is the
// market *sell* rate (sells consume the bid side) and mu_b the market *buy*
// rate (buys consume the ask side), so the ask depth is an M/M/1 queue with
// rates (lambda_a, mu_b) and the bid depth one with rates (lambda_b, mu_a).
struct ModelParams {
    int num_prices = 500;     // N; prices live on 1..N
    int window = 5;           // n
    double lambda_a = 0.8;
    double lambda_b = 0.8;
    double mu_a = 1.0;
    double mu_b = 1.0;
    int initial_price = 250;  // p0

    double total_rate() const { return lambda_a + lambda_b + mu_a + mu_b; }

    // Throws std::invalid_argument unless N >= 2, 1 <= n < N, 1 <= p0 <= N
    // and all four rates are strictly positive.
    void validate() const;

    // Symmetric auction: lambda_a = lambda_b = rho * mu, mu_a = mu_b = mu.
    static ModelParams symmetric(double rho, int num_prices = 500, int window = 5,
                                 int initial_price = 250, double mu = 1.0);
};

// Closed integer interval of price classes; lo > hi encodes the empty set.
struct PriceInterval {
    int lo = 1;
    int hi = 0;

    bool empty() const { return lo > hi; }
    int size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(int p) const { return p >= lo && p <= hi; }
};

// Order book state: per-price order counts for both sides plus the price of
// the last executed trade. Orders within a price class are indistinguishable
// (every order is for one share), so a count per class is the whole state.
// Plain value type; copying gives an independent book.
class OrderBook {
public:
    OrderBook(int num_prices, int initial_price);
    explicit OrderBook(const ModelParams& params);

    int num_prices() const { return num_prices_; }
    int last_trade_price() const { return last_trade_; }

    // Total number of resting orders on one side (A for asks, B for bids).
    std::int64_t depth(Side side) const {
        return side == Side::Ask ? ask_total_ : bid_total_;
    }
    bool side_empty(Side side) const { return depth(side) == 0; }
    std::int64_t count_at(Side side, int price) const;
    const std::vector<std::int64_t>& counts(Side side) const {
        return side == Side::Ask ? ask_counts_ : bid_counts_;
    }

    // Highest occupied bid class / lowest occupied ask class.
    std::optional<int> best_bid() const;
    std::optional<int> best_ask() const;

    // Adds one resting order. Throws std::out_of_range for a price outside
    // 1..N; staying inside the placement interval is the caller's job.
    void place_limit(Side side, int price);

    // Consumes one order at the best price of `side` (Bid = a market sell
    // hitting the best bid, Ask = a market buy lifting the best ask) and
    // returns the trade price. An empty side leaves the book unchanged and
    // returns nullopt: the market order is simply not executed.
    std::optional<int> execute_market(Side side);

    // Recomputes totals and best prices from the raw counts and checks
    // best_bid < best_ask; throws std::logic_error on any mismatch.
    void validate() const;

private:
    void bump_best(Side side, int price);
    void rescan_best(Side side, int from);

    int num_prices_;
    std::vector<std::int64_t> ask_counts_;  // index 1..N; slot 0 unused
    std::vector<std::int64_t> bid_counts_;
    std::int64_t ask_total_ = 0;
    std::int64_t bid_total_ = 0;
    int best_ask_ = 0;  // 0 = side empty
    int best_bid_ = 0;
    int last_trade_;
};

// Price classes a new limit order may land on, clipped to the grid.
//
// Asks go uniformly on {p_b+1 .. p_b+n}, bids on {p_a-n .. p_a-1}. When the
// referenced opposite side is empty the book falls back to the last trade
// price p: {p .. p+n} for asks, {p-n .. p} for bids. An empty result means
// the order is discarded.
PriceInterval placement_interval(const OrderBook& book, Side side,
                                 const ModelParams& params);

}  // namespace cdasim
