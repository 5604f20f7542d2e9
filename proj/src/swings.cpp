#include "chartpat/swings.hpp"

#include <deque>
#include <stdexcept>

namespace chartpat {

std::string_view to_string(SwingKind kind) noexcept { return kind == SwingKind::Top ? "top" : "bottom"; }

bool more_extreme(const SwingPoint& candidate, const SwingPoint& incumbent) noexcept {
    return candidate.kind == SwingKind::Top ? candidate.price > incumbent.price : candidate.price < incumbent.price;
}

namespace {

// For each i with i + k < n, whether value[i] beats every value in (i, i+k]
// under `beats`. Sliding-window extreme over the k following bars.
template <typename Get, typename Beats>
std::vector<bool> beats_next_window(std::size_t n, std::size_t k, Get get, Beats beats) {
    std::vector<bool> out(n, false);
    if (n <= k) return out;
    // Monotone deque of indices whose values are the window extreme candidates.
    std::deque<std::size_t> window;
    // Process i from right to left; window holds (i, i+k].
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t i = n - 1 - step;
        if (i + k < n) out[i] = beats(get(i), get(window.front()));
        // Insert i into the window, evict i + k.
        while (!window.empty() && !beats(get(window.back()), get(i))) window.pop_back();
        window.push_back(i);
        while (!window.empty() && window.front() >= i + k) window.pop_front();
    }
    return out;
}

}  // namespace

std::vector<SwingPoint> swing_candidates(const Series& series, int k) {
    if (k < 1) throw std::invalid_argument("swing confirmation window must be >= 1");
    const auto n = series.bars.size();
    const auto kk = static_cast<std::size_t>(k);
    const auto& bars = series.bars;
    const auto tops = beats_next_window(
        n, kk, [&](std::size_t i) { return bars[i].high; }, [](double a, double b) { return a > b; });
    const auto bottoms = beats_next_window(
        n, kk, [&](std::size_t i) { return bars[i].low; }, [](double a, double b) { return a < b; });

    std::vector<SwingPoint> out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<BarIndex>(i);
        const SwingPoint top{idx, SwingKind::Top, bars[i].high, idx + k};
        const SwingPoint bottom{idx, SwingKind::Bottom, bars[i].low, idx + k};
        if (tops[i] && bottoms[i]) {
            // Outside bar: continue the alternation; with nothing before it,
            // a down bar made its high first.
            const bool top_first = out.empty() ? !(bars[i].close > bars[i].open) : out.back().kind == SwingKind::Bottom;
            out.push_back(top_first ? top : bottom);
            out.push_back(top_first ? bottom : top);
        } else if (tops[i]) {
            out.push_back(top);
        } else if (bottoms[i]) {
            out.push_back(bottom);
        }
    }
    return out;
}

std::vector<SwingEvent> swing_history(const Series& series, int k) {
    std::vector<SwingEvent> events;
    bool have_tail = false;
    SwingPoint tail;
    for (const auto& c : swing_candidates(series, k)) {
        if (!have_tail || c.kind != tail.kind) {
            events.push_back({c, false});
        } else if (more_extreme(c, tail)) {
            events.push_back({c, true});
        } else {
            continue;
        }
        tail = c;
        have_tail = true;
    }
    return events;
}

void apply(std::vector<SwingPoint>& as_of, const SwingEvent& event) {
    if (event.replaces_tail) {
        as_of.back() = event.point;
    } else {
        as_of.push_back(event.point);
    }
}

std::vector<SwingPoint> replay(std::span<const SwingEvent> history) {
    std::vector<SwingPoint> out;
    for (const auto& e : history) apply(out, e);
    return out;
}

std::vector<SwingPoint> detect_swings(const Series& series, int k) {
    const auto history = swing_history(series, k);
    return replay(history);
}

}  // namespace chartpat
