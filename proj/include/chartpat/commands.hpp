#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "chartpat/config.hpp"

namespace chartpat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitIo = 2;

/// Prints one line per anomaly; exits 0 when no file has an error-level anomaly.
int cmd_validate(std::span<const std::string> paths, std::ostream& out, std::ostream& err);

struct ScanOptions {
    unsigned jobs = 1;
    std::optional<std::string> plot_data;  ///< per-bar CSV path
};

int cmd_scan(const RunConfig& cfg, const ScanOptions& opts, std::ostream& out, std::ostream& err);

struct BacktestOptions {
    unsigned jobs = 1;
    std::optional<std::string> trades_csv;
};

int cmd_backtest(const RunConfig& cfg, const BacktestOptions& opts, std::ostream& out, std::ostream& err);

/// Writes the showcase bundle and a seeded corpus under `dir`.
int cmd_gen_fixtures(const std::string& dir, std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace chartpat
