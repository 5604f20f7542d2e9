#pragma once

// Moving-average crossing signals from first principles: the average is
// recomputed from scratch at every bar and the breakout rule applied pointwise.

#include <cstddef>
#include <vector>

namespace oracle {

struct MaSignal {
    std::size_t index;
    bool buy;
};

inline std::vector<double> sma(const std::vector<double>& closes, std::size_t n) {
    std::vector<double> out(closes.size(), 0.0);
    for (std::size_t i = n - 1; i < closes.size(); ++i) {
        long double sum = 0;
        for (std::size_t j = i + 1 - n; j <= i; ++j) sum += closes[j];
        out[i] = static_cast<double>(sum / static_cast<long double>(n));
    }
    return out;
}

inline std::vector<MaSignal> ma_signals(const std::vector<double>& closes, std::size_t n, double pct = 0.03) {
    std::vector<MaSignal> out;
    if (n == 0 || n > closes.size()) return out;
    const auto ma = sma(closes, n);
    const std::size_t first = n - 1;
    for (const bool up : {true, false}) {
        auto dist = [&](std::size_t i) { return up ? closes[i] - ma[i] : ma[i] - closes[i]; };
        // `armed` is false while closes stay beyond after a signal, and at the
        // start until the closes have been on the other side once.
        bool armed = false;
        std::size_t run_start = first;
        bool in_run = false;
        for (std::size_t t = first; t < closes.size(); ++t) {
            const bool beyond = dist(t) > 0.0;
            if (!beyond) {
                in_run = false;
                armed = true;
                continue;
            }
            if (!in_run) {
                in_run = true;
                run_start = t;
            }
            if (!armed) continue;
            bool fired = dist(t) >= pct * ma[t] - 1e-9;
            if (!fired && t >= run_start + 2) fired = dist(t - 2) < dist(t - 1) && dist(t - 1) < dist(t);
            if (fired) {
                out.push_back({t, up});
                armed = false;
            }
        }
    }
    std::vector<MaSignal> sorted;
    for (std::size_t t = 0; t < closes.size(); ++t) {
        for (const auto& s : out) {
            if (s.index == t) sorted.push_back(s);
        }
    }
    return sorted;
}

}  // namespace oracle
