#include "cdasim/simulate.hpp"

#include <stdexcept>

namespace cdasim {

double event_rate(EventType type, const ModelParams& params) {
    switch (type) {
        case EventType::LimitAsk: return params.lambda_a;
        case EventType::LimitBid: return params.lambda_b;
        case EventType::MarketBuy: return params.mu_b;
        case EventType::MarketSell: return params.mu_a;
    }
    throw std::invalid_argument("unknown event type");
}

double draw_waiting_time(double total_rate, RngStream& rng) {
    return rng.next_exponential(total_rate);
}

EventType draw_event_type(const ModelParams& params, RngStream& rng) {
    const double u = rng.next_unit() * params.total_rate();
    double edge = params.lambda_a;
    if (u < edge) return EventType::LimitAsk;
    edge += params.lambda_b;
    if (u < edge) return EventType::LimitBid;
    edge += params.mu_b;
    if (u < edge) return EventType::MarketBuy;
    return EventType::MarketSell;
}

std::optional<int> apply_event(OrderBook& book, const ModelParams& params,
                               EventType type, RngStream& rng) {
    switch (type) {
        case EventType::LimitAsk:
        case EventType::LimitBid: {
            const Side side = type == EventType::LimitAsk ? Side::Ask : Side::Bid;
            const PriceInterval iv = placement_interval(book, side, params);
            if (!iv.empty()) {
                book.place_limit(side, rng.next_int(iv.lo, iv.hi));
            }
            return std::nullopt;
        }
        case EventType::MarketBuy:
            return book.execute_market(Side::Ask);
        case EventType::MarketSell:
            return book.execute_market(Side::Bid);
    }
    throw std::invalid_argument("unknown event type");
}

Simulator::Simulator(const ModelParams& params, std::uint64_t seed)
    : params_(params), book_(params), rng_(seed) {
    params_.validate();
}

std::optional<TradeRecord> Simulator::step() {
    clock_ += draw_waiting_time(params_.total_rate(), rng_);
    const EventType type = draw_event_type(params_, rng_);
    ++events_;

    if (type == EventType::LimitAsk || type == EventType::LimitBid) {
        const Side side = type == EventType::LimitAsk ? Side::Ask : Side::Bid;
        const PriceInterval iv = placement_interval(book_, side, params_);
        if (iv.empty()) {
            ++limit_discarded_;
        } else {
            book_.place_limit(side, rng_.next_int(iv.lo, iv.hi));
            ++limit_placed_;
        }
        return std::nullopt;
    }

    const Side side = type == EventType::MarketBuy ? Side::Ask : Side::Bid;
    if (auto price = book_.execute_market(side)) {
        TradeRecord trade{trades_, clock_, *price};
        ++trades_;
        return trade;
    }
    ++market_unfilled_;
    return std::nullopt;
}

SimOutput run(const ModelParams& params, std::int64_t num_events,
              std::uint64_t seed, bool record_queue) {
    params.validate();
    if (num_events < 1) {
        throw std::invalid_argument("num_events must be at least 1");
    }

    Simulator sim(params, seed);
    SimOutput out{.final_book = OrderBook(params)};
    if (record_queue) {
        out.queue.reserve(static_cast<std::size_t>(num_events));
    }

    for (std::int64_t i = 0; i < num_events; ++i) {
        if (auto trade = sim.step()) {
            out.trades.push_back(*trade);
        }
        if (record_queue) {
            out.queue.push_back(QueueSample{
                .event_index = i + 1,
                .epoch = sim.clock(),
                .ask_depth = sim.book().depth(Side::Ask),
                .bid_depth = sim.book().depth(Side::Bid),
            });
        }
    }

    out.events = sim.events();
    out.limit_placed = sim.limit_placed();
    out.limit_discarded = sim.limit_discarded();
    out.market_unfilled = sim.market_unfilled();
    out.final_book = sim.book();
    out.final_clock = sim.clock();
    return out;
}

}  // namespace cdasim
