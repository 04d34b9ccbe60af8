#include "cdasim/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cdasim {

void ModelParams::validate() const {
    if (num_prices < 2) {
        throw std::invalid_argument("num_prices must be at least 2");
    }
    if (window < 1 || window >= num_prices) {
        throw std::invalid_argument("window must satisfy 1 <= n < N");
    }
    if (initial_price < 1 || initial_price > num_prices) {
        throw std::invalid_argument("initial_price must lie in 1..N");
    }
    for (double rate : {lambda_a, lambda_b, mu_a, mu_b}) {
        if (!(rate > 0.0)) {
            throw std::invalid_argument("all arrival rates must be strictly positive");
        }
    }
}

ModelParams ModelParams::symmetric(double rho, int num_prices, int window,
                                   int initial_price, double mu) {
    if (!(rho > 0.0) || !(mu > 0.0)) {
        throw std::invalid_argument("rho and mu must be strictly positive");
    }
    ModelParams p;
    p.num_prices = num_prices;
    p.window = window;
    p.lambda_a = rho * mu;
    p.lambda_b = rho * mu;
    p.mu_a = mu;
    p.mu_b = mu;
    p.initial_price = initial_price;
    p.validate();
    return p;
}

OrderBook::OrderBook(int num_prices, int initial_price)
    : num_prices_(num_prices),
      ask_counts_(static_cast<std::size_t>(num_prices) + 1, 0),
      bid_counts_(static_cast<std::size_t>(num_prices) + 1, 0),
      last_trade_(initial_price) {
    if (num_prices < 2) {
        throw std::invalid_argument("num_prices must be at least 2");
    }
    if (initial_price < 1 || initial_price > num_prices) {
        throw std::invalid_argument("initial_price must lie in 1..N");
    }
}

OrderBook::OrderBook(const ModelParams& params)
    : OrderBook(params.num_prices, params.initial_price) {
    params.validate();
}

std::int64_t OrderBook::count_at(Side side, int price) const {
    if (price < 1 || price > num_prices_) {
        throw std::out_of_range("price outside 1..N");
    }
    return counts(side)[static_cast<std::size_t>(price)];
}

std::optional<int> OrderBook::best_bid() const {
    if (best_bid_ == 0) return std::nullopt;
    return best_bid_;
}

std::optional<int> OrderBook::best_ask() const {
    if (best_ask_ == 0) return std::nullopt;
    return best_ask_;
}

void OrderBook::bump_best(Side side, int price) {
    if (side == Side::Bid) {
        if (best_bid_ == 0 || price > best_bid_) best_bid_ = price;
    } else {
        if (best_ask_ == 0 || price < best_ask_) best_ask_ = price;
    }
}

// Finds the next occupied class after the level at `from` emptied.
void OrderBook::rescan_best(Side side, int from) {
    if (side == Side::Bid) {
        if (bid_total_ == 0) {
            best_bid_ = 0;
            return;
        }
        int p = from;
        while (p >= 1 && bid_counts_[static_cast<std::size_t>(p)] == 0) --p;
        best_bid_ = p;
    } else {
        if (ask_total_ == 0) {
            best_ask_ = 0;
            return;
        }
        int p = from;
        while (p <= num_prices_ && ask_counts_[static_cast<std::size_t>(p)] == 0) ++p;
        best_ask_ = p;
    }
}

void OrderBook::place_limit(Side side, int price) {
    if (price < 1 || price > num_prices_) {
        throw std::out_of_range("place_limit: price outside 1..N");
    }
    if (side == Side::Bid) {
        ++bid_counts_[static_cast<std::size_t>(price)];
        ++bid_total_;
    } else {
        ++ask_counts_[static_cast<std::size_t>(price)];
        ++ask_total_;
    }
    bump_best(side, price);
}

std::optional<int> OrderBook::execute_market(Side side) {
    if (side == Side::Bid) {
        if (bid_total_ == 0) return std::nullopt;
        const int price = best_bid_;
        --bid_counts_[static_cast<std::size_t>(price)];
        --bid_total_;
        if (bid_counts_[static_cast<std::size_t>(price)] == 0) rescan_best(side, price);
        last_trade_ = price;
        return price;
    }
    if (ask_total_ == 0) return std::nullopt;
    const int price = best_ask_;
    --ask_counts_[static_cast<std::size_t>(price)];
    --ask_total_;
    if (ask_counts_[static_cast<std::size_t>(price)] == 0) rescan_best(side, price);
    last_trade_ = price;
    return price;
}

void OrderBook::validate() const {
    std::int64_t a = 0;
    std::int64_t b = 0;
    int lo_ask = 0;
    int hi_bid = 0;
    for (int p = 1; p <= num_prices_; ++p) {
        const std::int64_t ac = ask_counts_[static_cast<std::size_t>(p)];
        const std::int64_t bc = bid_counts_[static_cast<std::size_t>(p)];
        if (ac < 0 || bc < 0) throw std::logic_error("negative order count");
        a += ac;
        b += bc;
        if (ac > 0 && lo_ask == 0) lo_ask = p;
        if (bc > 0) hi_bid = p;
    }
    if (a != ask_total_ || b != bid_total_) {
        throw std::logic_error("cached totals disagree with counts");
    }
    if (lo_ask != best_ask_ || hi_bid != best_bid_) {
        throw std::logic_error("cached best prices disagree with counts");
    }
    if (best_bid_ != 0 && best_ask_ != 0 && best_bid_ >= best_ask_) {
        throw std::logic_error("book is crossed: best_bid >= best_ask");
    }
    if (last_trade_ < 1 || last_trade_ > num_prices_) {
        throw std::logic_error("last_trade_price outside 1..N");
    }
}

PriceInterval placement_interval(const OrderBook& book, Side side,
                                 const ModelParams& params) {
    const int n = params.window;
    const int N = book.num_prices();
    PriceInterval iv;
    if (side == Side::Ask) {
        if (auto pb = book.best_bid()) {
            iv.lo = *pb + 1;
            iv.hi = *pb + n;
        } else {
            const int p = book.last_trade_price();
            iv.lo = p;
            iv.hi = p + n;
        }
    } else {
        if (auto pa = book.best_ask()) {
            iv.lo = *pa - n;
            iv.hi = *pa - 1;
        } else {
            const int p = book.last_trade_price();
            iv.lo = p - n;
            iv.hi = p;
        }
    }
    iv.lo = std::max(iv.lo, 1);
    iv.hi = std::min(iv.hi, N);
    if (iv.empty()) {
        iv = PriceInterval{};  // normalized empty
    }
    return iv;
}

}  // namespace cdasim
