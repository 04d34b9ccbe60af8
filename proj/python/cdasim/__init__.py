"""Continuous double auction simulator.

A price-class limit order book driven by four Poisson arrival streams. The
ask and bid depths evolve as independent M/M/1 queues, which gives closed
forms for ergodicity, the stationary book distribution and the regime of the
trade-price process; the simulator and ensemble tooling measure the matching
log-return statistics.
"""

from cdasim._core import (
    Eccdf,
    EnsembleConfig,
    EnsembleSummary,
    EventType,
    ModelParams,
    OrderBook,
    PartitionDescription,
    PriceInterval,
    QueueRates,
    QueueSample,
    Regime,
    RngStream,
    SimOutput,
    StatAggregate,
    Side,
    SummaryStats,
    TradeRecord,
    __version__,
    abs_acf_lag1,
    acf,
    classify_regime,
    coupled_best_queue_rates,
    derive_run_seed,
    draw_event_type,
    draw_waiting_time,
    empty_book_prob,
    equilibrium_pmf,
    is_ergodic,
    joint_pmf,
    log_returns,
    moments,
    partition_description,
    placement_interval,
    quantile,
    run,
    run_ensemble,
    summarize_returns,
)

__all__ = [
    "Eccdf",
    "EnsembleConfig",
    "EnsembleSummary",
    "EventType",
    "ModelParams",
    "OrderBook",
    "PartitionDescription",
    "PriceInterval",
    "QueueRates",
    "QueueSample",
    "Regime",
    "RngStream",
    "SimOutput",
    "StatAggregate",
    "Side",
    "SummaryStats",
    "TradeRecord",
    "__version__",
    "abs_acf_lag1",
    "acf",
    "classify_regime",
    "coupled_best_queue_rates",
    "derive_run_seed",
    "draw_event_type",
    "draw_waiting_time",
    "empty_book_prob",
    "equilibrium_pmf",
    "is_ergodic",
    "joint_pmf",
    "log_returns",
    "moments",
    "partition_description",
    "placement_interval",
    "quantile",
    "run",
    "run_ensemble",
    "summarize_returns",
]
