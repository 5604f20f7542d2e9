#pragma once

// Exhaustive breakout oracle for a constant level. For each bar t in order it
// asks whether some crossing s <= t confirms at t, trying s from the earliest.

#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

struct Confirmed {
    std::size_t cross;
    std::size_t confirm;
    int rule;  // 0 single day, 1 cumulative, 2 three bars
};

inline std::optional<Confirmed> breakout(const std::vector<double>& closes, double level, bool up,
                                         std::size_t watch_from, double pct = 0.03, bool receding = true) {
    auto dist = [&](std::size_t i) { return up ? closes[i] - level : level - closes[i]; };
    auto beyond = [&](std::size_t i) { return dist(i) > 0.0; };
    auto big = [&](std::size_t i) { return dist(i) >= pct * level - 1e-9; };

    for (std::size_t t = watch_from; t < closes.size(); ++t) {
        const std::size_t lo = t >= watch_from + 2 ? t - 2 : watch_from;
        for (std::size_t s = lo; s <= t; ++s) {
            bool all_beyond = true;
            for (std::size_t i = s; i <= t; ++i) all_beyond = all_beyond && beyond(i);
            if (!all_beyond) continue;
            if (big(t)) return Confirmed{s, t, s == t ? 0 : 1};
            if (t == s + 2) {
                const bool ok = !receding || (dist(s) < dist(s + 1) && dist(s + 1) < dist(s + 2));
                if (ok) return Confirmed{s, t, 2};
            }
        }
    }
    return std::nullopt;
}

}  // namespace oracle
