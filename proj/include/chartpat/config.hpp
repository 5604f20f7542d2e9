#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartpat/backtest.hpp"
#include "chartpat/market_data.hpp"
#include "chartpat/patterns.hpp"

namespace chartpat {

enum class OutputFormat { Text, Csv, Jsonl };
[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;

/// Everything that determines a run's output. Worker count is deliberately
/// absent: it never changes results.
struct RunConfig {
    std::vector<std::string> inputs;
    std::vector<std::pair<std::string, std::string>> security_ids;  ///< path -> id overrides
    PatternConfig pattern;
    BacktestConfig backtest;
    bool include_end_of_data = true;
    double alpha = 0.005;
    int ma_short = 21;
    int ma_long = 233;
    OutputFormat format = OutputFormat::Text;
    std::optional<Date> from;
    std::optional<Date> to;
    std::uint64_t seed = 42;

    bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// First line of every report; a config file starting with it is read from its `#!` lines only.
inline constexpr std::string_view kReportMagic = "# chartpat report v1";

/// Keys in serialization order.
[[nodiscard]] const std::vector<std::string_view>& config_keys();

/// Sets one key. `input` and `security_id` append. Throws ConfigError.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// (key, value) pairs in config_keys() order; repeated keys appear once per value.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

/// Applies `key = value` lines onto `cfg`. Blank lines and `#` comments are skipped.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// One `<prefix>key = value` line per entry.
void write_config(std::ostream& out, const RunConfig& cfg, std::string_view prefix = "");

/// Id for an input path: an override if present, else the file stem.
[[nodiscard]] std::string security_id_for(const RunConfig& cfg, const std::string& path);

}  // namespace chartpat
