#include "cdasim/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "cdasim/simulate.hpp"
#include "cdasim/stats.hpp"
#include "cdasim/theory.hpp"

namespace cdasim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("key '" + std::string(key) + "': cannot parse '" +
                          std::string(value) + "' as a real number");
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("key '" + std::string(key) + "': cannot parse '" +
                          std::string(value) + "' as an integer");
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t end = value.find(',', start);
        if (end == std::string_view::npos) end = value.size();
        const std::string_view item = trim(value.substr(start, end - start));
        if (!item.empty()) out.push_back(parse_double(key, item));
        start = end + 1;
    }
    return out;
}

const std::array<std::string_view, 14> kKnownKeys = {
    "N",      "n",      "lambda_a", "lambda_b", "mu_a",    "mu_b",     "rho",
    "p0",     "events", "seed",     "runs",     "max_lag", "output_dir",
    "rho_grid",
};

// Streams all rows through a fixed formatter so emission is byte-stable.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::string_view header) : path_(path) {
        stream_.open(path, std::ios::binary | std::ios::trunc);
        if (!stream_) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        stream_ << header << '\n';
    }

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((stream_ << (first ? "" : ",") << field(fields), first = false), ...);
        stream_ << '\n';
    }

    void close() {
        stream_.close();
        if (stream_.fail()) {
            throw IoError("failed while writing '" + path_.string() + "'");
        }
    }

private:
    static std::string field(double v) { return format_double(v); }
    static std::string field(const std::optional<double>& v) {
        return v ? format_double(*v) : "nan";
    }
    static std::string field(std::int64_t v) { return std::to_string(v); }
    static std::string field(int v) { return std::to_string(v); }
    static std::string field(std::string_view v) { return std::string(v); }

    std::filesystem::path path_;
    std::ofstream stream_;
};

std::filesystem::path prepare_output_dir(const RunConfig& config) {
    const std::filesystem::path dir = config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    return dir;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    stream << text;
    stream.close();
    if (stream.fail()) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

nlohmann::ordered_json stats_json(const SummaryStats& stats) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    return nlohmann::ordered_json{
        {"count", stats.count},   {"mean", opt(stats.mean)},
        {"std_dev", opt(stats.std_dev)}, {"skewness", opt(stats.skewness)},
        {"kurtosis", opt(stats.kurtosis)}, {"c1", opt(stats.c1)},
    };
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
    ConfigMap map;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = trim(text.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        map[key] = value;
    }
    return map;
}

ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw IoError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_config_text(buffer.str());
}

RunConfig make_run_config(const ConfigMap& base, const ConfigMap& overrides) {
    ConfigMap merged = base;
    for (const auto& [key, value] : overrides) merged[key] = value;

    for (const auto& [key, value] : merged) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    const bool has_rho = merged.contains("rho");
    for (const char* rate_key : {"lambda_a", "lambda_b", "mu_a", "mu_b"}) {
        if (has_rho && merged.contains(rate_key)) {
            throw ConfigError("'rho' is a symmetric shorthand and cannot be combined "
                              "with explicit rates");
        }
    }

    RunConfig config;
    try {
        if (auto it = merged.find("N"); it != merged.end()) {
            config.params.num_prices = parse_int<int>("N", it->second);
        }
        if (auto it = merged.find("n"); it != merged.end()) {
            config.params.window = parse_int<int>("n", it->second);
        }
        if (auto it = merged.find("p0"); it != merged.end()) {
            config.params.initial_price = parse_int<int>("p0", it->second);
        }
        if (has_rho) {
            const double rho = parse_double("rho", merged.at("rho"));
            if (!(rho > 0.0)) throw ConfigError("'rho' must be strictly positive");
            config.params.lambda_a = rho;
            config.params.lambda_b = rho;
            config.params.mu_a = 1.0;
            config.params.mu_b = 1.0;
        } else {
            if (auto it = merged.find("lambda_a"); it != merged.end()) {
                config.params.lambda_a = parse_double("lambda_a", it->second);
            }
            if (auto it = merged.find("lambda_b"); it != merged.end()) {
                config.params.lambda_b = parse_double("lambda_b", it->second);
            }
            if (auto it = merged.find("mu_a"); it != merged.end()) {
                config.params.mu_a = parse_double("mu_a", it->second);
            }
            if (auto it = merged.find("mu_b"); it != merged.end()) {
                config.params.mu_b = parse_double("mu_b", it->second);
            }
        }
        if (auto it = merged.find("events"); it != merged.end()) {
            config.events = parse_int<std::int64_t>("events", it->second);
        }
        if (auto it = merged.find("seed"); it != merged.end()) {
            config.seed = parse_int<std::uint64_t>("seed", it->second);
        }
        if (auto it = merged.find("runs"); it != merged.end()) {
            config.runs = parse_int<int>("runs", it->second);
        }
        if (auto it = merged.find("max_lag"); it != merged.end()) {
            config.max_lag = parse_int<int>("max_lag", it->second);
        }
        if (auto it = merged.find("output_dir"); it != merged.end()) {
            config.output_dir = it->second;
        }
        if (auto it = merged.find("rho_grid"); it != merged.end()) {
            config.rho_grid = parse_double_list("rho_grid", it->second);
            for (double rho : config.rho_grid) {
                if (!(rho > 0.0)) throw ConfigError("'rho_grid' entries must be positive");
            }
        }
        config.params.validate();
        if (config.events < 1) throw ConfigError("'events' must be at least 1");
        if (config.runs < 1) throw ConfigError("'runs' must be at least 1");
        if (config.max_lag < 0) throw ConfigError("'max_lag' must be non-negative");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

std::string format_double(double value) {
    std::array<char, 64> buffer;
    const auto [ptr, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

void cmd_simulate(const RunConfig& config) {
    const std::filesystem::path dir = prepare_output_dir(config);
    const SimOutput out = run(config.params, config.events, config.seed,
                              /*record_queue=*/true);
    const std::vector<double> returns = log_returns(out.trades);
    const SummaryStats stats = summarize_returns(returns);

    CsvWriter trades(dir / "trades.csv", "index,epoch,price");
    for (const TradeRecord& t : out.trades) trades.row(t.index, t.epoch, t.price);
    trades.close();

    CsvWriter rets(dir / "returns.csv", "index,log_return");
    for (std::size_t i = 0; i < returns.size(); ++i) {
        rets.row(static_cast<std::int64_t>(i), returns[i]);
    }
    rets.close();

    CsvWriter queue(dir / "queue.csv", "event_index,epoch,A,B");
    for (const QueueSample& q : out.queue) {
        queue.row(q.event_index, q.epoch, q.ask_depth, q.bid_depth);
    }
    queue.close();

    // ACF of the absolute returns, as far as the series allows.
    CsvWriter acf_csv(dir / "acf.csv", "lag,acf_abs_returns");
    const int lag_cap = returns.empty()
        ? 0
        : static_cast<int>(std::min<std::int64_t>(
              config.max_lag, static_cast<std::int64_t>(returns.size()) - 1));
    if (lag_cap > 0) {
        std::vector<double> magnitudes(returns.size());
        std::transform(returns.begin(), returns.end(), magnitudes.begin(),
                       [](double x) { return std::fabs(x); });
        if (const auto values = acf(magnitudes, lag_cap)) {
            for (int lag = 0; lag <= lag_cap; ++lag) {
                acf_csv.row(lag, (*values)[static_cast<std::size_t>(lag)]);
            }
        }
    }
    acf_csv.close();

    nlohmann::ordered_json summary{
        {"params",
         {{"N", config.params.num_prices},
          {"n", config.params.window},
          {"lambda_a", config.params.lambda_a},
          {"lambda_b", config.params.lambda_b},
          {"mu_a", config.params.mu_a},
          {"mu_b", config.params.mu_b},
          {"p0", config.params.initial_price}}},
        {"events", out.events},
        {"seed", config.seed},
        {"ergodic", is_ergodic(config.params)},
        {"regime", std::string(to_string(classify_regime(config.params)))},
        {"trades", out.trades.size()},
        {"limit_placed", out.limit_placed},
        {"limit_discarded", out.limit_discarded},
        {"market_unfilled", out.market_unfilled},
        {"final_ask_depth", out.final_book.depth(Side::Ask)},
        {"final_bid_depth", out.final_book.depth(Side::Bid)},
        {"final_clock", out.final_clock},
        {"returns", stats_json(stats)},
    };
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

void cmd_ensemble(const RunConfig& config, int workers) {
    const std::filesystem::path dir = prepare_output_dir(config);
    const EnsembleSummary summary = run_ensemble(config.ensemble_config(), workers);

    CsvWriter per_run(dir / "per_run_stats.csv", "run,mean,std,skewness,kurtosis,c1");
    for (std::size_t i = 0; i < summary.per_run.size(); ++i) {
        const SummaryStats& s = summary.per_run[i];
        per_run.row(static_cast<std::int64_t>(i), s.mean, s.std_dev, s.skewness,
                    s.kurtosis, s.c1);
    }
    per_run.close();

    CsvWriter aggregate(dir / "aggregate.csv", "statistic,mean,stderr,excluded_runs");
    const auto agg_row = [&](std::string_view name, const StatAggregate& agg) {
        aggregate.row(name, agg.mean, agg.std_error, agg.excluded_runs);
    };
    agg_row("mean", summary.mean);
    agg_row("std", summary.std_dev);
    agg_row("skewness", summary.skewness);
    agg_row("kurtosis", summary.kurtosis);
    agg_row("c1", summary.c1);
    aggregate.close();

    const auto write_eccdf = [&](const std::filesystem::path& path,
                                 const std::optional<Eccdf>& eccdf) {
        CsvWriter csv(path, "value,ccdf_prob");
        if (eccdf) {
            for (std::size_t i = 0; i < eccdf->size(); ++i) {
                csv.row(eccdf->values()[i], eccdf->probs()[i]);
            }
        }
        csv.close();
    };
    write_eccdf(dir / "eccdf_kurtosis.csv", summary.eccdf_kurtosis);
    write_eccdf(dir / "eccdf_c1.csv", summary.eccdf_c1);
}

void cmd_sweep(const RunConfig& config, int workers) {
    if (config.rho_grid.empty()) {
        throw ConfigError("sweep needs a non-empty 'rho_grid'");
    }
    const std::filesystem::path dir = prepare_output_dir(config);

    std::vector<EnsembleConfig> grid;
    grid.reserve(config.rho_grid.size());
    for (double rho : config.rho_grid) {
        EnsembleConfig ec = config.ensemble_config();
        ec.params.lambda_a = rho;
        ec.params.lambda_b = rho;
        ec.params.mu_a = 1.0;
        ec.params.mu_b = 1.0;
        grid.push_back(ec);
    }
    const std::vector<SweepRow> rows = sweep(grid, workers);

    CsvWriter csv(dir / "sweep.csv",
                  "rho,std_mean,std_err,kurt_mean,kurt_err,c1_mean,c1_err");
    for (const SweepRow& row : rows) {
        csv.row(row.rho, row.summary.std_dev.mean, row.summary.std_dev.std_error,
                row.summary.kurtosis.mean, row.summary.kurtosis.std_error,
                row.summary.c1.mean, row.summary.c1.std_error);
    }
    csv.close();
}

void cmd_theory(const RunConfig& config, std::ostream& out) {
    const ModelParams& p = config.params;
    p.validate();
    const bool ergodic = is_ergodic(p);

    out << "params: N=" << p.num_prices << " n=" << p.window
        << " lambda_a=" << format_double(p.lambda_a)
        << " lambda_b=" << format_double(p.lambda_b)
        << " mu_a=" << format_double(p.mu_a) << " mu_b=" << format_double(p.mu_b)
        << " p0=" << p.initial_price << "\n";
    out << "ask queue load lambda_a/mu_b: " << format_double(p.lambda_a / p.mu_b) << "\n";
    out << "bid queue load lambda_b/mu_a: " << format_double(p.lambda_b / p.mu_a) << "\n";
    out << "ergodic: " << (ergodic ? "yes" : "no") << "\n";
    out << "regime: " << to_string(classify_regime(p)) << "\n";

    const QueueRates ask_rates = coupled_best_queue_rates(p, Side::Ask);
    const QueueRates bid_rates = coupled_best_queue_rates(p, Side::Bid);
    out << "coupled best-ask queue: arrival=" << format_double(ask_rates.arrival)
        << " service=" << format_double(ask_rates.service) << "\n";
    out << "coupled best-bid queue: arrival=" << format_double(bid_rates.arrival)
        << " service=" << format_double(bid_rates.service) << "\n";

    if (!ergodic) {
        out << "empty_book_prob: no equilibrium\n";
        out << "equilibrium pmf: no equilibrium\n";
        return;
    }

    out << "empty_book_prob: " << format_double(empty_book_prob(p)) << "\n";
    // Table to where both tails drop below 1e-9 (tail mass of a geometric
    // law after k is r^(k+1)).
    const double ra = p.lambda_a / p.mu_b;
    const double rb = p.lambda_b / p.mu_a;
    const double r_max = std::max(ra, rb);
    std::int64_t cutoff = static_cast<std::int64_t>(
        std::ceil(std::log(1e-9) / std::log(r_max)));
    cutoff = std::clamp<std::int64_t>(cutoff, 5, 2000);
    out << "equilibrium pmf (k P(A=k) P(B=k)), k up to " << cutoff << ":\n";
    for (std::int64_t k = 0; k <= cutoff; ++k) {
        out << k << " " << format_double(equilibrium_pmf(p.lambda_a, p.mu_b, k)) << " "
            << format_double(equilibrium_pmf(p.lambda_b, p.mu_a, k)) << "\n";
    }
}

}  // namespace cdasim
