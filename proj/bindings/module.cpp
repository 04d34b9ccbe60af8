#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "cdasim/ensemble.hpp"
#include "cdasim/model.hpp"
#include "cdasim/rng.hpp"
#include "cdasim/simulate.hpp"
#include "cdasim/stats.hpp"
#include "cdasim/theory.hpp"

namespace py = pybind11;
using namespace cdasim;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    py::array_t<T> arr(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), arr.mutable_data());
    return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Continuous double auction simulator: a price-class order book "
              "driven by four Poisson streams, with closed-form M/M/1 results "
              "and ensemble statistics.";

    py::enum_<Side>(m, "Side")
        .value("Bid", Side::Bid)
        .value("Ask", Side::Ask);

    py::enum_<EventType>(m, "EventType")
        .value("LimitAsk", EventType::LimitAsk)
        .value("LimitBid", EventType::LimitBid)
        .value("MarketBuy", EventType::MarketBuy)
        .value("MarketSell", EventType::MarketSell);

    py::enum_<Regime>(m, "Regime")
        .value("Ergodic", Regime::Ergodic)
        .value("NonErgodicFluctuating", Regime::NonErgodicFluctuating)
        .value("NonErgodicTelegraph", Regime::NonErgodicTelegraph);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init([](int N, int n, double lambda_a, double lambda_b, double mu_a,
                         double mu_b, int p0) {
                 ModelParams p{N, n, lambda_a, lambda_b, mu_a, mu_b, p0};
                 p.validate();
                 return p;
             }),
             py::arg("N"), py::arg("n"), py::arg("lambda_a"), py::arg("lambda_b"),
             py::arg("mu_a"), py::arg("mu_b"), py::arg("p0"))
        .def_readwrite("N", &ModelParams::num_prices)
        .def_readwrite("n", &ModelParams::window)
        .def_readwrite("lambda_a", &ModelParams::lambda_a)
        .def_readwrite("lambda_b", &ModelParams::lambda_b)
        .def_readwrite("mu_a", &ModelParams::mu_a)
        .def_readwrite("mu_b", &ModelParams::mu_b)
        .def_readwrite("p0", &ModelParams::initial_price)
        .def("total_rate", &ModelParams::total_rate)
        .def("validate", &ModelParams::validate)
        .def_static("symmetric", &ModelParams::symmetric, py::arg("rho"),
                    py::arg("N") = 500, py::arg("n") = 5, py::arg("p0") = 250,
                    py::arg("mu") = 1.0)
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream s;
            s << "ModelParams(N=" << p.num_prices << ", n=" << p.window
              << ", lambda_a=" << p.lambda_a << ", lambda_b=" << p.lambda_b
              << ", mu_a=" << p.mu_a << ", mu_b=" << p.mu_b
              << ", p0=" << p.initial_price << ")";
            return s.str();
        });

    py::class_<PriceInterval>(m, "PriceInterval")
        .def_readonly("lo", &PriceInterval::lo)
        .def_readonly("hi", &PriceInterval::hi)
        .def("empty", &PriceInterval::empty)
        .def("__len__", &PriceInterval::size)
        .def("__contains__", &PriceInterval::contains)
        .def("__repr__", [](const PriceInterval& iv) {
            std::ostringstream s;
            if (iv.empty()) {
                s << "PriceInterval(empty)";
            } else {
                s << "PriceInterval(" << iv.lo << ".." << iv.hi << ")";
            }
            return s.str();
        });

    py::class_<OrderBook>(m, "OrderBook")
        .def(py::init<int, int>(), py::arg("num_prices"), py::arg("initial_price"))
        .def(py::init<const ModelParams&>(), py::arg("params"))
        .def_property_readonly("num_prices", &OrderBook::num_prices)
        .def_property_readonly("last_trade_price", &OrderBook::last_trade_price)
        .def("depth", &OrderBook::depth)
        .def("count_at", &OrderBook::count_at)
        .def("best_bid", &OrderBook::best_bid)
        .def("best_ask", &OrderBook::best_ask)
        .def("place_limit", &OrderBook::place_limit)
        .def("execute_market", &OrderBook::execute_market)
        .def("validate", &OrderBook::validate)
        .def("counts", [](const OrderBook& b, Side side) {
            // element p is price class p; element 0 is unused
            return to_array(b.counts(side));
        });

    m.def("placement_interval", &placement_interval, py::arg("book"), py::arg("side"),
          py::arg("params"));

    py::class_<TradeRecord>(m, "TradeRecord")
        .def_readonly("index", &TradeRecord::index)
        .def_readonly("epoch", &TradeRecord::epoch)
        .def_readonly("price", &TradeRecord::price)
        .def("__repr__", [](const TradeRecord& t) {
            std::ostringstream s;
            s << "TradeRecord(index=" << t.index << ", epoch=" << t.epoch
              << ", price=" << t.price << ")";
            return s.str();
        });

    py::class_<QueueSample>(m, "QueueSample")
        .def_readonly("event_index", &QueueSample::event_index)
        .def_readonly("epoch", &QueueSample::epoch)
        .def_readonly("ask_depth", &QueueSample::ask_depth)
        .def_readonly("bid_depth", &QueueSample::bid_depth);

    py::class_<SimOutput>(m, "SimOutput")
        .def_readonly("trades", &SimOutput::trades)
        .def_readonly("queue", &SimOutput::queue)
        .def_readonly("events", &SimOutput::events)
        .def_readonly("limit_placed", &SimOutput::limit_placed)
        .def_readonly("limit_discarded", &SimOutput::limit_discarded)
        .def_readonly("market_unfilled", &SimOutput::market_unfilled)
        .def_readonly("final_book", &SimOutput::final_book)
        .def_readonly("final_clock", &SimOutput::final_clock)
        .def("trade_epochs",
             [](const SimOutput& out) {
                 py::array_t<double> arr(static_cast<py::ssize_t>(out.trades.size()));
                 auto* data = arr.mutable_data();
                 for (std::size_t i = 0; i < out.trades.size(); ++i) {
                     data[i] = out.trades[i].epoch;
                 }
                 return arr;
             })
        .def("trade_prices",
             [](const SimOutput& out) {
                 py::array_t<std::int64_t> arr(
                     static_cast<py::ssize_t>(out.trades.size()));
                 auto* data = arr.mutable_data();
                 for (std::size_t i = 0; i < out.trades.size(); ++i) {
                     data[i] = out.trades[i].price;
                 }
                 return arr;
             })
        .def("log_returns",
             [](const SimOutput& out) { return to_array(log_returns(out.trades)); });

    m.def("run", &run, py::arg("params"), py::arg("num_events"), py::arg("seed"),
          py::arg("record_queue") = false, py::call_guard<py::gil_scoped_release>());

    m.def("draw_waiting_time", &draw_waiting_time);
    m.def("draw_event_type", &draw_event_type);
    m.def("derive_run_seed", &derive_run_seed, py::arg("base"), py::arg("index"));

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &RngStream::next_u64)
        .def("next_unit", &RngStream::next_unit)
        .def("next_exponential", &RngStream::next_exponential)
        .def("next_int", &RngStream::next_int);

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("count", &SummaryStats::count)
        .def_readonly("mean", &SummaryStats::mean)
        .def_readonly("std_dev", &SummaryStats::std_dev)
        .def_readonly("skewness", &SummaryStats::skewness)
        .def_readonly("kurtosis", &SummaryStats::kurtosis)
        .def_readonly("c1", &SummaryStats::c1)
        .def("__repr__", [](const SummaryStats& s) {
            const auto opt = [](const std::optional<double>& v) {
                return v ? std::to_string(*v) : std::string("None");
            };
            std::ostringstream out;
            out << "SummaryStats(count=" << s.count << ", mean=" << opt(s.mean)
                << ", std_dev=" << opt(s.std_dev) << ", skewness=" << opt(s.skewness)
                << ", kurtosis=" << opt(s.kurtosis) << ", c1=" << opt(s.c1) << ")";
            return out.str();
        });

    m.def("log_returns", [](const std::vector<int>& prices) {
        return to_array(log_returns_from_prices(prices));
    });
    m.def("moments",
          [](const std::vector<double>& series) { return moments(series); });
    m.def("summarize_returns", [](const std::vector<double>& returns) {
        return summarize_returns(returns);
    });
    m.def(
        "acf",
        [](const std::vector<double>& series, int max_lag) -> py::object {
            const auto values = acf(series, max_lag);
            if (!values) return py::none();
            return to_array(*values);
        },
        py::arg("series"), py::arg("max_lag"));
    m.def("abs_acf_lag1", [](const std::vector<double>& series) {
        return abs_acf_lag1(series);
    });
    m.def(
        "quantile",
        [](const std::vector<double>& sample, double p) { return quantile(sample, p); },
        py::arg("sample"), py::arg("p"));

    py::class_<Eccdf>(m, "Eccdf")
        .def(py::init<std::vector<double>>(), py::arg("samples"))
        .def("prob_greater", &Eccdf::prob_greater)
        .def("values", [](const Eccdf& e) { return to_array(e.values()); })
        .def("probs", [](const Eccdf& e) { return to_array(e.probs()); })
        .def("__len__", &Eccdf::size);

    py::class_<PartitionDescription>(m, "PartitionDescription")
        .def_property_readonly(
            "ask", [](const PartitionDescription& p) { return to_array(p.ask); })
        .def_property_readonly(
            "bid", [](const PartitionDescription& p) { return to_array(p.bid); });
    m.def("partition_description", &partition_description);

    m.def("is_ergodic", &is_ergodic);
    m.def("classify_regime", &classify_regime);
    m.def("equilibrium_pmf", &equilibrium_pmf, py::arg("lambda_"), py::arg("mu"),
          py::arg("k"));
    m.def("joint_pmf", &joint_pmf, py::arg("params"), py::arg("a"), py::arg("b"));
    m.def("empty_book_prob", &empty_book_prob);

    py::class_<QueueRates>(m, "QueueRates")
        .def_readonly("arrival", &QueueRates::arrival)
        .def_readonly("service", &QueueRates::service);
    m.def("coupled_best_queue_rates", &coupled_best_queue_rates, py::arg("params"),
          py::arg("side"));

    py::class_<EnsembleConfig>(m, "EnsembleConfig")
        .def(py::init<>())
        .def(py::init([](const ModelParams& params, int runs,
                         std::int64_t events_per_run, std::uint64_t base_seed,
                         int max_lag) {
                 EnsembleConfig c{params, runs, events_per_run, base_seed, max_lag};
                 c.validate();
                 return c;
             }),
             py::arg("params"), py::arg("runs"), py::arg("events_per_run"),
             py::arg("base_seed") = 1, py::arg("max_lag") = 50)
        .def_readwrite("params", &EnsembleConfig::params)
        .def_readwrite("runs", &EnsembleConfig::runs)
        .def_readwrite("events_per_run", &EnsembleConfig::events_per_run)
        .def_readwrite("base_seed", &EnsembleConfig::base_seed)
        .def_readwrite("max_lag", &EnsembleConfig::max_lag);

    py::class_<StatAggregate>(m, "StatAggregate")
        .def_readonly("mean", &StatAggregate::mean)
        .def_readonly("std_error", &StatAggregate::std_error)
        .def_readonly("excluded_runs", &StatAggregate::excluded_runs);

    py::class_<EnsembleSummary>(m, "EnsembleSummary")
        .def_readonly("per_run", &EnsembleSummary::per_run)
        .def_readonly("mean", &EnsembleSummary::mean)
        .def_readonly("std_dev", &EnsembleSummary::std_dev)
        .def_readonly("skewness", &EnsembleSummary::skewness)
        .def_readonly("kurtosis", &EnsembleSummary::kurtosis)
        .def_readonly("c1", &EnsembleSummary::c1)
        .def_readonly("eccdf_kurtosis", &EnsembleSummary::eccdf_kurtosis)
        .def_readonly("eccdf_c1", &EnsembleSummary::eccdf_c1);

    m.def("run_ensemble", &run_ensemble, py::arg("config"), py::arg("workers") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = "0.1.0";
}
