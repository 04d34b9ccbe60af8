#pragma once

#include <cstdint>
#include <string_view>

#include "cdasim/model.hpp"

namespace cdasim {

// Long-run behaviour of the auction. With symmetric rates and rho = lambda/mu:
// rho < 1 ergodic, 1 <= rho < n non-ergodic with prices fluctuating over a
// set, rho >= n non-ergodic with prices locked to two values (telegraph).
enum class Regime { Ergodic, NonErgodicFluctuating, NonErgodicTelegraph };

std::string_view to_string(Regime regime);

// Both queues admit a stationary distribution: lambda_a < mu_b and
// lambda_b < mu_a. Equality counts as non-ergodic.
bool is_ergodic(const ModelParams& params);

// Three-way classification. For asymmetric rates each side's best-price queue
// is compared against its own threshold; the telegraph regime needs both
// sides' best queues to diverge.
Regime classify_regime(const ModelParams& params);

// Stationary P(Q = k) = (lambda/mu)^k (1 - lambda/mu) of an M/M/1 queue.
// Rejects lambda >= mu (no equilibrium) and k < 0.
double equilibrium_pmf(double lambda, double mu, std::int64_t k);

// Joint stationary P(A = a, B = b); the two queues are independent.
double joint_pmf(const ModelParams& params, std::int64_t a, std::int64_t b);

// Stationary probability of a fully empty book,
// (1 - lambda_a/mu_b)(1 - lambda_b/mu_a).
double empty_book_prob(const ModelParams& params);

// The M/M/1 queue coupled to the number of orders at the best price of one
// side: limit orders spread uniformly over n classes, so the best class
// receives arrivals at rate lambda/n while market orders drain it at the
// opposite side's mu.
struct QueueRates {
    double arrival;
    double service;
};

QueueRates coupled_best_queue_rates(const ModelParams& params, Side side);

}  // namespace cdasim
