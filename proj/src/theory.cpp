#include "cdasim/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace cdasim {

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Ergodic: return "Ergodic";
        case Regime::NonErgodicFluctuating: return "NonErgodicFluctuating";
        case Regime::NonErgodicTelegraph: return "NonErgodicTelegraph";
    }
    return "?";
}

bool is_ergodic(const ModelParams& params) {
    params.validate();
    return params.lambda_a < params.mu_b && params.lambda_b < params.mu_a;
}

Regime classify_regime(const ModelParams& params) {
    if (is_ergodic(params)) return Regime::Ergodic;
    const double n = static_cast<double>(params.window);
    const bool ask_best_diverges = params.lambda_a / (n * params.mu_b) >= 1.0;
    const bool bid_best_diverges = params.lambda_b / (n * params.mu_a) >= 1.0;
    if (ask_best_diverges && bid_best_diverges) return Regime::NonErgodicTelegraph;
    return Regime::NonErgodicFluctuating;
}

double equilibrium_pmf(double lambda, double mu, std::int64_t k) {
    if (!(lambda > 0.0) || !(mu > 0.0)) {
        throw std::invalid_argument("rates must be strictly positive");
    }
    if (lambda >= mu) {
        throw std::invalid_argument("no equilibrium: lambda >= mu");
    }
    if (k < 0) {
        throw std::invalid_argument("queue length must be non-negative");
    }
    const double r = lambda / mu;
    return std::pow(r, static_cast<double>(k)) * (1.0 - r);
}

double joint_pmf(const ModelParams& params, std::int64_t a, std::int64_t b) {
    if (!is_ergodic(params)) {
        throw std::invalid_argument("no equilibrium: parameters are non-ergodic");
    }
    return equilibrium_pmf(params.lambda_a, params.mu_b, a) *
           equilibrium_pmf(params.lambda_b, params.mu_a, b);
}

double empty_book_prob(const ModelParams& params) {
    if (!is_ergodic(params)) {
        throw std::invalid_argument("no equilibrium: parameters are non-ergodic");
    }
    return (1.0 - params.lambda_a / params.mu_b) *
           (1.0 - params.lambda_b / params.mu_a);
}

QueueRates coupled_best_queue_rates(const ModelParams& params, Side side) {
    params.validate();
    const double n = static_cast<double>(params.window);
    if (side == Side::Bid) {
        return QueueRates{params.lambda_b / n, params.mu_a};
    }
    return QueueRates{params.lambda_a / n, params.mu_b};
}

}  // namespace cdasim
