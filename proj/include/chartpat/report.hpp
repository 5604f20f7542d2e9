#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chartpat/backtest.hpp"
#include "chartpat/config.hpp"
#include "chartpat/patterns.hpp"
#include "chartpat/stats.hpp"

namespace chartpat {

struct ScanListing {
    const Series* series = nullptr;
    std::vector<PatternInstance> instances;
};

struct RowTest {
    std::string key;
    ChiSquareResult test;
};

struct BacktestSummary {
    std::vector<CountRow> by_pattern;
    std::vector<CountRow> top_four;
    std::vector<CountRow> by_security;
    ChiSquareResult total_test;
    ChiSquareResult top_four_test;
    std::vector<RowTest> per_pattern;  ///< one per nonzero pattern row
    Count instances = 0;
    Count trades = 0;
    Count end_of_data = 0;
    Count excluded_end_of_data = 0;
    Count dropped = 0;
};

/// Magic line, command line, then the effective config as `#! key = value`.
void write_report_header(std::ostream& out, std::string_view command, const RunConfig& cfg);

void write_scan_listing(std::ostream& out, const RunConfig& cfg, std::span<const ScanListing> listings);

[[nodiscard]] BacktestSummary summarize(std::span<const Trade> trades, Count dropped, const RunConfig& cfg);

void write_backtest_report(std::ostream& out, const RunConfig& cfg, const BacktestSummary& summary);

inline constexpr std::string_view kTradesCsvHeader =
    "security_id,kind,bias,side,span_start,confirm_index,entry_index,entry_date,entry_price,exit_index,exit_date,"
    "exit_price,closed_by,verdict";

void write_trades_csv(std::ostream& out, std::span<const Trade> trades);

inline constexpr std::string_view kPlotCsvHeader =
    "security_id,index,date,open,high,low,close,ma_short,ma_long,swing,patterns";

/// Per-bar rows for external plotting; `patterns` lists the kinds confirmed on that bar, `;`-separated.
void write_plot_data(std::ostream& out, const Series& series, std::span<const PatternInstance> instances,
                     const RunConfig& cfg);

}  // namespace chartpat
