#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "chartpat/market_data.hpp"

namespace chartpat {

enum class SwingKind { Top, Bottom };

[[nodiscard]] constexpr SwingKind opposite(SwingKind k) noexcept {
    return k == SwingKind::Top ? SwingKind::Bottom : SwingKind::Top;
}
[[nodiscard]] std::string_view to_string(SwingKind kind) noexcept;

/// Confirmed local top (price = bar high) or bottom (price = bar low).
struct SwingPoint {
    BarIndex index = 0;
    SwingKind kind = SwingKind::Top;
    double price = 0.0;
    BarIndex confirm_index = 0;  ///< index + k

    bool operator==(const SwingPoint&) const = default;
};

/// True when `candidate` is strictly more extreme than `incumbent` of the same kind.
[[nodiscard]] bool more_extreme(const SwingPoint& candidate, const SwingPoint& incumbent) noexcept;

/**
 * @brief Raw k-bar candidates, before alternation.
 *
 * Index i is a top candidate iff high[i] is strictly greater than each of
 * high[i+1..i+k]; bottoms mirror on lows. Sorted by index. When one bar is
 * both, the kind opposite to the previous candidate comes first; for a first
 * candidate, the top comes first unless the bar closed above its open.
 */
[[nodiscard]] std::vector<SwingPoint> swing_candidates(const Series& series, int k = 3);

/// One change to the as-of swing list: either a push, or a replacement of the
/// current tail by a more extreme swing of the same kind. The event becomes
/// known at `point.confirm_index`.
struct SwingEvent {
    SwingPoint point;
    bool replaces_tail = false;

    bool operator==(const SwingEvent&) const = default;
};

/// Every change the alternation reduction makes, in confirmation order.
[[nodiscard]] std::vector<SwingEvent> swing_history(const Series& series, int k = 3);

/// Applies one event to an as-of list.
void apply(std::vector<SwingPoint>& as_of, const SwingEvent& event);

/**
 * @brief Alternating list of confirmed tops and bottoms.
 *
 * Same-kind candidates with no opposite candidate between them are reduced
 * to the more extreme one (the earlier on ties). A series shorter than k + 1
 * bars yields an empty list.
 */
[[nodiscard]] std::vector<SwingPoint> detect_swings(const Series& series, int k = 3);

/// Final list obtained by replaying a history.
[[nodiscard]] std::vector<SwingPoint> replay(std::span<const SwingEvent> history);

}  // namespace chartpat
