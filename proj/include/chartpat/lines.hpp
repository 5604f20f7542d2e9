#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "chartpat/market_data.hpp"
#include "chartpat/swings.hpp"

namespace chartpat {

/// Direction of a trendline or of a boundary crossing.
enum class Direction { Up, Down };

[[nodiscard]] constexpr Direction reverse(Direction d) noexcept {
    return d == Direction::Up ? Direction::Down : Direction::Up;
}
[[nodiscard]] std::string_view to_string(Direction d) noexcept;

struct Anchor {
    BarIndex index = 0;
    double price = 0.0;

    bool operator==(const Anchor&) const = default;
};

/// Straight price line, defined from `origin` onwards.
struct Line {
    BarIndex origin = 0;
    double origin_price = 0.0;
    double slope = 0.0;  ///< price per bar

    [[nodiscard]] static Line through(Anchor a, Anchor b);
    [[nodiscard]] std::optional<double> value_at(BarIndex index) const noexcept;

    bool operator==(const Line&) const = default;
};

struct HorizontalLevel {
    double price = 0.0;

    bool operator==(const HorizontalLevel&) const = default;
};

/// Per-bar boundary such as a moving average; undefined before `first`.
struct Curve {
    BarIndex first = 0;
    std::vector<double> values;

    [[nodiscard]] std::optional<double> value_at(BarIndex index) const noexcept;

    bool operator==(const Curve&) const = default;
};

using Boundary = std::variant<Line, HorizontalLevel, Curve>;

[[nodiscard]] std::optional<double> boundary_value(const Boundary& boundary, BarIndex index) noexcept;

struct Trendline {
    Direction direction = Direction::Up;
    Anchor anchor1;
    Anchor anchor2;
    double slope = 0.0;
    BarIndex confirm_index = 0;

    [[nodiscard]] Line line() const noexcept { return {anchor1.index, anchor1.price, slope}; }

    bool operator==(const Trendline&) const = default;
};

/// anchor1.price + slope * (index - anchor1.index); throws std::out_of_range before anchor1.
[[nodiscard]] double line_value_at(const Trendline& line, BarIndex index);

enum class LevelKind { Support, Resistance };
[[nodiscard]] std::string_view to_string(LevelKind kind) noexcept;

struct Level {
    LevelKind kind = LevelKind::Resistance;
    double price = 0.0;
    std::vector<BarIndex> formed_by;
    BarIndex from_index = 0;

    bool operator==(const Level&) const = default;
};

enum class BreakoutRule { SingleDayPct, CumulativePct, ThreeBar };
[[nodiscard]] std::string_view to_string(BreakoutRule rule) noexcept;

/// How strictly the bar-count rule is read.
enum class ThreeBarMode {
    Receding,  ///< closes beyond the boundary and moving away from it every bar
    Beyond,    ///< closes merely beyond the boundary
};

struct BreakoutParams {
    double pct = 0.03;
    int window = 3;  ///< bars for the bar-count rule; the percentage may accumulate over window - 1 extra bars
    ThreeBarMode three_bar = ThreeBarMode::Receding;
};

struct Breakout {
    Direction direction = Direction::Up;
    BarIndex cross_index = 0;
    BarIndex confirm_index = 0;
    BreakoutRule rule = BreakoutRule::SingleDayPct;

    bool operator==(const Breakout&) const = default;
};

inline constexpr BarIndex kNoLimit = std::numeric_limits<BarIndex>::max();

/**
 * @brief First confirmed close-based breakout of `boundary` in `direction`.
 *
 * Scans bars in [watch_from, stop_before). A crossing is a close strictly
 * beyond the boundary value at that bar. It confirms at the crossing bar when
 * the close is at least `pct` beyond (relative to the boundary value,
 * inclusive within 1e-9), at one of the next `window - 1` bars when that close
 * is `pct` beyond with every close since the crossing still beyond, or after
 * `window` closes beyond that keep receding from the boundary. A close back on
 * the origin side voids the attempt.
 *
 * Throws std::out_of_range when watch_from is not a bar of `series`.
 */
[[nodiscard]] std::optional<Breakout> detect_breakout(const Series& series, const Boundary& boundary,
                                                      BarIndex watch_from, Direction direction,
                                                      const BreakoutParams& params = {},
                                                      BarIndex stop_before = kNoLimit);

/// Up lines through rising consecutive bottoms, down lines through falling
/// consecutive tops, anchors at least 4 bars apart; sorted by confirm_index.
[[nodiscard]] std::vector<Trendline> fit_trendlines(const Series& series, std::span<const SwingPoint> swings);

/// Same rule applied to every pair that existed in the as-of swing list,
/// including pairs whose second swing was later superseded.
[[nodiscard]] std::vector<Trendline> fit_trendlines(const Series& series, std::span<const SwingEvent> history);

/**
 * @brief Greedy left-to-right grouping of consecutive same-kind swing prices.
 *
 * A price joins the open group when every member (itself included) stays
 * within `tolerance` of the group's new mean; otherwise it starts a new group.
 */
class TouchGroup {
public:
    TouchGroup(SwingKind kind, double tolerance) : kind_(kind), tolerance_(tolerance) {}

    /// Returns true when the swing joined the open group.
    bool add(const SwingPoint& swing);
    /// Undoes the last add and adds `swing` instead.
    bool replace_last(const SwingPoint& swing);

    [[nodiscard]] std::span<const SwingPoint> members() const noexcept { return members_; }
    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] Level level() const;

private:
    SwingKind kind_;
    double tolerance_;
    std::vector<SwingPoint> members_;
    std::vector<SwingPoint> before_last_;
};

/// Supports from bottoms and resistances from tops; sorted by from_index.
[[nodiscard]] std::vector<Level> detect_levels(const Series& series, std::span<const SwingPoint> swings,
                                               double flatness_tol = 0.01);

struct MaPoint {
    BarIndex index = 0;
    double value = 0.0;

    bool operator==(const MaPoint&) const = default;
};

/// Arithmetic mean of the last n closes, defined from index n - 1. Empty when n exceeds the series.
[[nodiscard]] std::vector<MaPoint> moving_average(const Series& series, int n);

[[nodiscard]] Curve as_curve(std::span<const MaPoint> ma);

enum class Signal { Buy, Sell };
[[nodiscard]] std::string_view to_string(Signal s) noexcept;

struct MaSignal {
    BarIndex index = 0;
    Signal signal = Signal::Buy;

    bool operator==(const MaSignal&) const = default;
};

/// Confirmed crossings of closes over a moving average, one per run of closes on the new side.
[[nodiscard]] std::vector<MaSignal> ma_cross_signal(const Series& series, std::span<const MaPoint> ma,
                                                    const BreakoutParams& params = {});

}  // namespace chartpat
