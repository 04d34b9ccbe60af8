#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdasim/model.hpp"
#include "cdasim/rng.hpp"

namespace cdasim {

// The four arrival streams. MarketBuy consumes the ask side (rate mu_b),
// MarketSell the bid side (rate mu_a).
enum class EventType { LimitAsk, LimitBid, MarketBuy, MarketSell };

double event_rate(EventType type, const ModelParams& params);

struct TradeRecord {
    std::int64_t index;  // 0-based trade counter
    double epoch;        // continuous time of execution
    int price;
};

struct QueueSample {
    std::int64_t event_index;  // 1-based; state after this event
    double epoch;
    std::int64_t ask_depth;    // A
    std::int64_t bid_depth;    // B
};

struct SimOutput {
    std::vector<TradeRecord> trades;
    std::vector<QueueSample> queue;  // one row per event when recorded, else empty
    std::int64_t events = 0;
    std::int64_t limit_placed = 0;
    std::int64_t limit_discarded = 0;   // empty placement interval
    std::int64_t market_unfilled = 0;   // market order against an empty side
    OrderBook final_book;
    double final_clock = 0.0;
};

// Waiting time to the next event of the superposed process.
double draw_waiting_time(double total_rate, RngStream& rng);

// Which of the four streams fires, with probability rate / total_rate.
EventType draw_event_type(const ModelParams& params, RngStream& rng);

// Applies one already-drawn event to the book. Limit orders draw exactly one
// uniform price from the placement interval (no draw when the interval is
// empty and the order is discarded). Returns the trade price iff a market
// order executed.
std::optional<int> apply_event(OrderBook& book, const ModelParams& params,
                               EventType type, RngStream& rng);

// Sequential event loop over one book. Per event the stream is consumed in a
// fixed order: waiting time, event type, then (limit orders with a non-empty
// interval only) the placement price.
class Simulator {
public:
    Simulator(const ModelParams& params, std::uint64_t seed);

    // Advances the clock by one event and returns the trade, if any.
    std::optional<TradeRecord> step();

    const OrderBook& book() const { return book_; }
    double clock() const { return clock_; }
    std::int64_t events() const { return events_; }
    std::int64_t trades() const { return trades_; }
    std::int64_t limit_placed() const { return limit_placed_; }
    std::int64_t limit_discarded() const { return limit_discarded_; }
    std::int64_t market_unfilled() const { return market_unfilled_; }

private:
    ModelParams params_;
    OrderBook book_;
    RngStream rng_;
    double clock_ = 0.0;
    std::int64_t events_ = 0;
    std::int64_t trades_ = 0;
    std::int64_t limit_placed_ = 0;
    std::int64_t limit_discarded_ = 0;
    std::int64_t market_unfilled_ = 0;
};

// Runs num_events events from an empty book with last_trade_price = p0 at
// clock 0. Deterministic in (params, num_events, seed). With record_queue the
// output carries one (epoch, A, B) sample per event.
SimOutput run(const ModelParams& params, std::int64_t num_events,
              std::uint64_t seed, bool record_queue = false);

}  // namespace cdasim
