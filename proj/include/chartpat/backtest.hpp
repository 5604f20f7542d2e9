#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chartpat/lines.hpp"
#include "chartpat/market_data.hpp"
#include "chartpat/patterns.hpp"

namespace chartpat {

enum class Side { Long, Short };
enum class ClosedBy { Invalidation, EndOfData };
enum class PriceField { Open, Close };
enum class PositionMode {
    Independent,  ///< every instance is its own hypothetical trade
    Sequential,   ///< one position per security at a time
};

[[nodiscard]] std::string_view to_string(Side s) noexcept;
[[nodiscard]] std::string_view to_string(ClosedBy c) noexcept;
[[nodiscard]] std::string_view to_string(PriceField f) noexcept;
[[nodiscard]] std::string_view to_string(PositionMode m) noexcept;

struct BacktestConfig {
    PriceField fill = PriceField::Open;  ///< next-bar price used for entry and exit
    PositionMode mode = PositionMode::Independent;
    BreakoutParams breakout;

    bool operator==(const BacktestConfig&) const = default;
};

struct Trade {
    std::string security_id;
    PatternInstance pattern;
    Side side = Side::Long;
    BarIndex entry_index = 0;
    Date entry_date;
    double entry_price = 0.0;
    BarIndex exit_index = 0;
    Date exit_date;
    double exit_price = 0.0;
    ClosedBy closed_by = ClosedBy::Invalidation;
    bool verdict = false;  ///< true when the trade made money
};

struct DroppedInstance {
    PatternInstance pattern;
    std::string reason;
};

struct BacktestResult {
    std::vector<Trade> trades;
    std::vector<DroppedInstance> dropped;
};

/// Long wins on exit > entry, short on exit < entry; ties lose.
[[nodiscard]] bool trade_verdict(Side side, double entry_price, double exit_price) noexcept;

/**
 * @brief Buys (bullish) or sells short (bearish) the bar after confirmation and
 * closes the bar after the invalidation boundary is confirmed broken.
 *
 * Instances confirmed on the last bar cannot be entered and are dropped with a
 * reason, as are instances skipped in sequential mode. Throws
 * std::invalid_argument when an instance does not fit the series.
 */
[[nodiscard]] BacktestResult run_backtest(const Series& series, std::span<const PatternInstance> instances,
                                          const BacktestConfig& cfg = {});

}  // namespace chartpat
