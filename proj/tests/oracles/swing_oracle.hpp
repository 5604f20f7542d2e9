#pragma once

// Brute-force swing detection over plain vectors. Shares no code with the library.

#include <cstddef>
#include <vector>

namespace oracle {

struct Swing {
    std::ptrdiff_t index;
    bool top;
    double price;
};

inline bool window_top(const std::vector<double>& highs, std::size_t i, int k) {
    if (i + static_cast<std::size_t>(k) >= highs.size()) return false;
    for (int j = 1; j <= k; ++j) {
        if (!(highs[i + j] < highs[i])) return false;
    }
    return true;
}

inline bool window_bottom(const std::vector<double>& lows, std::size_t i, int k) {
    if (i + static_cast<std::size_t>(k) >= lows.size()) return false;
    for (int j = 1; j <= k; ++j) {
        if (!(lows[i + j] > lows[i])) return false;
    }
    return true;
}

// Every window candidate, then each maximal run of same-kind candidates
// collapsed to its most extreme member (first one on ties). A bar that is
// both continues the alternation; as the very first candidate its top leads
// unless the bar closed up.
inline std::vector<Swing> swings(const std::vector<double>& highs, const std::vector<double>& lows,
                                 const std::vector<bool>& up_bar, int k) {
    std::vector<Swing> cands;
    for (std::size_t i = 0; i < highs.size(); ++i) {
        const auto idx = static_cast<std::ptrdiff_t>(i);
        const bool t = window_top(highs, i, k);
        const bool b = window_bottom(lows, i, k);
        if (t && b) {
            bool top_first = cands.empty() ? !up_bar[i] : !cands.back().top;
            cands.push_back({idx, top_first, top_first ? highs[i] : lows[i]});
            cands.push_back({idx, !top_first, top_first ? lows[i] : highs[i]});
        } else if (t) {
            cands.push_back({idx, true, highs[i]});
        } else if (b) {
            cands.push_back({idx, false, lows[i]});
        }
    }
    std::vector<Swing> out;
    std::size_t a = 0;
    while (a < cands.size()) {
        std::size_t b = a;
        while (b < cands.size() && cands[b].top == cands[a].top) ++b;
        Swing best = cands[a];
        for (std::size_t j = a + 1; j < b; ++j) {
            const bool better = best.top ? cands[j].price > best.price : cands[j].price < best.price;
            if (better) best = cands[j];
        }
        out.push_back(best);
        a = b;
    }
    return out;
}

}  // namespace oracle
