#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chartpat/lines.hpp"
#include "chartpat/market_data.hpp"
#include "chartpat/swings.hpp"

namespace chartpat {

// Declaration order is the row order of the published pattern table and is
// the tie-break order everywhere.
enum class PatternKind {
    UpTrendline,
    BreakingDownTrendline,
    BreakingUpTrendline,
    DownTrendline,
    BreakingHorizontalResistance,
    DoubleBottom,
    BreakingHorizontalSupport,
    DoubleTop,
    UpFlag,
    DownFanPrinciple,
    Channel,
    DownHeadShoulders,
    HighFanPrinciple,
    UpSymmetricalTriangle,
    Rectangle,
    UpHeadShoulders,
    DownFlag,
    UpPennant,
    DownPennant,
    DownSymmetricalTriangle,
};

inline constexpr std::size_t kPatternKindCount = 20;

inline constexpr std::array<PatternKind, kPatternKindCount> kAllPatternKinds = {
    PatternKind::UpTrendline,
    PatternKind::BreakingDownTrendline,
    PatternKind::BreakingUpTrendline,
    PatternKind::DownTrendline,
    PatternKind::BreakingHorizontalResistance,
    PatternKind::DoubleBottom,
    PatternKind::BreakingHorizontalSupport,
    PatternKind::DoubleTop,
    PatternKind::UpFlag,
    PatternKind::DownFanPrinciple,
    PatternKind::Channel,
    PatternKind::DownHeadShoulders,
    PatternKind::HighFanPrinciple,
    PatternKind::UpSymmetricalTriangle,
    PatternKind::Rectangle,
    PatternKind::UpHeadShoulders,
    PatternKind::DownFlag,
    PatternKind::UpPennant,
    PatternKind::DownPennant,
    PatternKind::DownSymmetricalTriangle,
};

[[nodiscard]] constexpr int kind_order(PatternKind k) noexcept { return static_cast<int>(k); }

/// Identifier form, e.g. "UpTrendline".
[[nodiscard]] std::string_view to_string(PatternKind k) noexcept;
/// Table label, e.g. "Up Trendline".
[[nodiscard]] std::string_view display_name(PatternKind k) noexcept;
[[nodiscard]] std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept;

enum class Bias { Bullish, Bearish };
[[nodiscard]] std::string_view to_string(Bias b) noexcept;
[[nodiscard]] Bias bias_of(PatternKind k) noexcept;

struct PatternInstance {
    PatternKind kind = PatternKind::UpTrendline;
    Bias bias = Bias::Bullish;
    BarIndex span_start = 0;  ///< first formation bar
    BarIndex confirm_index = 0;
    std::string entry_trigger;
    Boundary invalidation = HorizontalLevel{};
    Direction adverse = Direction::Down;  ///< breach direction that ends the pattern

    bool operator==(const PatternInstance&) const = default;
};

struct PatternConfig {
    int swing_k = 3;
    BreakoutParams breakout;
    double level_tolerance = 0.01;
    double double_tolerance = 0.02;
    double channel_slope_tolerance = 0.10;
    double hs_head_margin = 0.03;
    double hs_shoulder_tolerance = 0.05;
    int flag_max_bars = 15;
    double flag_min_move = 0.10;
    int flag_move_bars = 15;
    double duplicate_overlap = 0.80;

    bool operator==(const PatternConfig&) const = default;
};

// The recognizers read the causal swing history, so each decision only uses
// swings confirmed by then. Output order is unspecified; scan() sorts.

[[nodiscard]] std::vector<PatternInstance> recognize_trendline_patterns(const Series& series,
                                                                        std::span<const SwingEvent> history,
                                                                        const PatternConfig& cfg = {});

/// Horizontal breaks and rectangles.
[[nodiscard]] std::vector<PatternInstance> recognize_level_patterns(const Series& series,
                                                                    std::span<const SwingEvent> history,
                                                                    const PatternConfig& cfg = {});

[[nodiscard]] std::vector<PatternInstance> recognize_double_patterns(const Series& series,
                                                                     std::span<const SwingEvent> history,
                                                                     const PatternConfig& cfg = {});

[[nodiscard]] std::vector<PatternInstance> recognize_head_shoulders(const Series& series,
                                                                    std::span<const SwingEvent> history,
                                                                    const PatternConfig& cfg = {});

/// Triangles, pennants, flags and channels from the last four swings.
[[nodiscard]] std::vector<PatternInstance> recognize_consolidations(const Series& series,
                                                                    std::span<const SwingEvent> history,
                                                                    const PatternConfig& cfg = {});

[[nodiscard]] std::vector<PatternInstance> recognize_fan_principle(const Series& series,
                                                                   std::span<const SwingEvent> history,
                                                                   const PatternConfig& cfg = {});

/// |intersection| / |shorter span| of the inclusive spans [span_start, confirm_index].
[[nodiscard]] double span_overlap(const PatternInstance& a, const PatternInstance& b) noexcept;

/**
 * @brief All recognizers, merged and deduplicated.
 *
 * Sorted by (confirm_index, kind order, span_start). When several breakout
 * patterns of one bias confirm on the same bar only the most specific
 * formation survives; then, per kind, an instance overlapping an earlier kept
 * one by more than cfg.duplicate_overlap is dropped.
 */
[[nodiscard]] std::vector<PatternInstance> scan(const Series& series, const PatternConfig& cfg = {});

}  // namespace chartpat
