#include "chartpat/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <ostream>
#include <set>
#include <system_error>
#include <thread>

#include <fmt/format.h>

#include "chartpat/backtest.hpp"
#include "chartpat/fixtures.hpp"
#include "chartpat/patterns.hpp"
#include "chartpat/report.hpp"

namespace chartpat {

namespace {

// Runs f(0..n-1) on up to `jobs` threads; rethrows the lowest-index failure.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F f) {
    const auto workers = std::min<std::size_t>(std::max(1u, jobs), n);
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        f(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct Loaded {
    std::vector<Series> series;
    int status = kExitOk;
};

// Loads every input, sorted by security id. Reports the first failure.
Loaded load_inputs(const RunConfig& cfg, std::ostream& err) {
    Loaded l;
    std::set<std::string> seen;
    for (const auto& path : cfg.inputs) {
        try {
            auto s = load_csv_file(path, security_id_for(cfg, path));
            if (!seen.insert(s.security_id).second) {
                err << fmt::format("{}: duplicate security id '{}'\n", path, s.security_id);
                l.status = kExitData;
                return l;
            }
            l.series.push_back(std::move(s));
        } catch (const std::system_error& e) {
            err << path << ": " << e.what() << '\n';
            l.status = kExitIo;
            return l;
        } catch (const ParseError& e) {
            err << path << ": " << e.what() << '\n';
            l.status = kExitData;
            return l;
        }
    }
    std::sort(l.series.begin(), l.series.end(),
              [](const Series& a, const Series& b) { return a.security_id < b.security_id; });
    return l;
}

std::vector<PatternInstance> scan_in_window(const Series& s, const RunConfig& cfg) {
    auto found = scan(s, cfg.pattern);
    std::erase_if(found, [&](const PatternInstance& p) {
        const auto& d = s[p.confirm_index].date;
        return (cfg.from && d < *cfg.from) || (cfg.to && *cfg.to < d);
    });
    return found;
}

bool open_output(std::ofstream& file, const std::string& path, std::ostream& err) {
    file.open(path);
    if (!file) {
        err << path << ": cannot open for writing\n";
        return false;
    }
    return true;
}

}  // namespace

int cmd_validate(std::span<const std::string> paths, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            err << path << ": cannot open\n";
            return kExitIo;
        }
        try {
            const auto series = read_csv_unchecked(in, path);
            const auto report = validate(series);
            for (const auto& a : report.anomalies) {
                out << fmt::format("{}:{}: {} {}: {}\n", path, a.index + 2,
                                   a.severity == Severity::Error ? "error" : "warning", to_string(a.kind), a.message);
            }
            if (report.has_errors()) status = kExitData;
        } catch (const ParseError& e) {
            out << fmt::format("{}:{}: error Syntax: {}\n", path, e.line(), e.what());
            status = kExitData;
        }
    }
    return status;
}

int cmd_scan(const RunConfig& cfg, const ScanOptions& opts, std::ostream& out, std::ostream& err) {
    auto loaded = load_inputs(cfg, err);
    if (loaded.status != kExitOk) return loaded.status;

    std::vector<ScanListing> listings(loaded.series.size());
    parallel_for(listings.size(), opts.jobs, [&](std::size_t i) {
        listings[i].series = &loaded.series[i];
        listings[i].instances = scan_in_window(loaded.series[i], cfg);
    });
    write_scan_listing(out, cfg, listings);

    if (opts.plot_data) {
        std::ofstream plot;
        if (!open_output(plot, *opts.plot_data, err)) return kExitIo;
        plot << kPlotCsvHeader << '\n';
        for (const auto& l : listings) write_plot_data(plot, *l.series, l.instances, cfg);
    }
    return kExitOk;
}

int cmd_backtest(const RunConfig& cfg, const BacktestOptions& opts, std::ostream& out, std::ostream& err) {
    auto loaded = load_inputs(cfg, err);
    if (loaded.status != kExitOk) return loaded.status;

    std::vector<BacktestResult> results(loaded.series.size());
    parallel_for(results.size(), opts.jobs, [&](std::size_t i) {
        const auto& s = loaded.series[i];
        results[i] = run_backtest(s, scan_in_window(s, cfg), cfg.backtest);
    });

    std::vector<Trade> trades;
    Count dropped = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto& d : results[i].dropped) {
            err << fmt::format("{}: {} at {} not traded: {}\n", loaded.series[i].security_id,
                               to_string(d.pattern.kind), d.pattern.confirm_index, d.reason);
        }
        dropped += static_cast<Count>(results[i].dropped.size());
        std::move(results[i].trades.begin(), results[i].trades.end(), std::back_inserter(trades));
    }
    write_backtest_report(out, cfg, summarize(trades, dropped, cfg));

    if (opts.trades_csv) {
        std::ofstream file;
        if (!open_output(file, *opts.trades_csv, err)) return kExitIo;
        write_trades_csv(file, trades);
    }
    return kExitOk;
}

int cmd_gen_fixtures(const std::string& dir, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    try {
        const auto showcase = showcase_bundle();
        const auto corpus = synthetic_corpus(seed);
        write_series_files(dir + "/showcase", showcase);
        write_series_files(dir + "/corpus", corpus);
        out << fmt::format("wrote {} showcase and {} corpus series under {}\n", showcase.size(), corpus.size(), dir);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace chartpat
