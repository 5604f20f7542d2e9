#include <cmath>

#include <gtest/gtest.h>

#include "chartpat/fixtures.hpp"
#include "chartpat/swings.hpp"
#include "oracles/swing_oracle.hpp"
#include "support.hpp"

using namespace chartpat;
using testing_support::hl_bars;
using testing_support::tie_heavy_series;

namespace {

void expect_matches_oracle(const Series& s, int k) {
    const auto got = detect_swings(s, k);
    const auto want = oracle::swings(testing_support::highs_of(s), testing_support::lows_of(s), testing_support::up_bars(s), k);
    ASSERT_EQ(got.size(), want.size()) << "k=" << k;
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].index, want[i].index);
        EXPECT_EQ(got[i].kind == SwingKind::Top, want[i].top);
        EXPECT_EQ(got[i].price, want[i].price);
        EXPECT_EQ(got[i].confirm_index, got[i].index + k);
    }
}

}  // namespace

TEST(DetectSwings, MonotoneRiseHasNoTops) {
    std::vector<double> highs, lows;
    for (int i = 1; i <= 10; ++i) {
        highs.push_back(i);
        lows.push_back(i - 0.5);
    }
    for (const auto& p : detect_swings(hl_bars(highs, lows))) EXPECT_NE(p.kind, SwingKind::Top);
}

TEST(DetectSwings, SingleTop) {
    const auto s = hl_bars({1, 2, 5, 4, 3, 2}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
    const auto swings = detect_swings(s, 3);
    ASSERT_EQ(swings.size(), 1u);
    EXPECT_EQ(swings[0], (SwingPoint{2, SwingKind::Top, 5.0, 5}));
}

TEST(DetectSwings, TiesDefeatConfirmation) {
    const auto s = hl_bars({1, 5, 4, 5, 3, 2, 1}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
    const auto swings = detect_swings(s, 3);
    ASSERT_EQ(swings.size(), 1u);
    EXPECT_EQ(swings[0].index, 3);
}

TEST(DetectSwings, NoLookBack) {
    // Bar 2 equals bar 1; only the following bars matter.
    const auto s = hl_bars({1, 5, 5, 4, 3, 2}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
    const auto swings = detect_swings(s, 3);
    ASSERT_EQ(swings.size(), 1u);
    EXPECT_EQ(swings[0].index, 2);
}

TEST(DetectSwings, ShortSeriesIsEmpty) {
    EXPECT_TRUE(detect_swings(hl_bars({3, 2, 1}, {2, 1, 0.5}), 3).empty());
    EXPECT_TRUE(detect_swings(Series{}, 1).empty());
    EXPECT_THROW((void)detect_swings(hl_bars({3, 2}, {2, 1}), 0), std::invalid_argument);
}

TEST(DetectSwings, KeepsMoreExtremeOfSameKindRun) {
    // Two top candidates (1 and 5) with no bottom candidate between.
    const auto s = hl_bars({5, 6, 5, 4, 3, 7, 6, 5, 4}, {4, 4, 4, 3, 2.5, 2.5, 2.5, 2.5, 2.5});
    const auto swings = detect_swings(s, 3);
    ASSERT_EQ(swings.size(), 1u);
    EXPECT_EQ(swings[0].index, 5);
    const auto history = swing_history(s, 3);
    ASSERT_EQ(history.size(), 2u);
    EXPECT_FALSE(history[0].replaces_tail);
    EXPECT_TRUE(history[1].replaces_tail);
}

TEST(DetectSwings, SeededSeriesMatchesOracle) {
    expect_matches_oracle(random_series(42, 200, "R"), 3);
}

TEST(DetectSwings, OracleEquivalenceSweep) {
    for (std::uint64_t seed = 1; seed <= 250; ++seed) {
        const auto n = 1 + static_cast<std::size_t>(seed % 200);
        const auto s = seed % 2 ? random_series(seed, n, "R") : tie_heavy_series(seed, n);
        for (const int k : {1, 2, 3, 5}) expect_matches_oracle(s, k);
    }
}

TEST(SwingProperties, Alternation) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto swings = detect_swings(tie_heavy_series(seed, 150), 2);
        for (std::size_t i = 1; i < swings.size(); ++i) EXPECT_NE(swings[i].kind, swings[i - 1].kind);
    }
}

TEST(SwingProperties, MirrorSymmetry) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto s = seed % 2 ? random_series(seed, 150, "R") : tie_heavy_series(seed, 150);
        Series m = s;
        for (auto& b : m.bars) {
            b = {b.date, -b.open, -b.low, -b.high, -b.close, b.volume};
        }
        const auto a = detect_swings(s, 3);
        const auto b = detect_swings(m, 3);
        // The only asymmetric case is a first-candidate outside doji.
        if (!a.empty() && !b.empty() && a[0].index == b[0].index && a[0].kind == b[0].kind) continue;
        ASSERT_EQ(a.size(), b.size()) << "seed " << seed;
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].index, b[i].index);
            EXPECT_NE(a[i].kind, b[i].kind);
            EXPECT_EQ(a[i].price, -b[i].price);
        }
    }
}

TEST(SwingProperties, HistoryReplaysToDetection) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto s = tie_heavy_series(seed, 200);
        const auto h = swing_history(s, 3);
        EXPECT_EQ(replay(h), detect_swings(s, 3));
        for (std::size_t i = 1; i < h.size(); ++i) {
            EXPECT_LE(h[i - 1].point.confirm_index, h[i].point.confirm_index);
        }
    }
}

// Every decision about bar i is fixed once bar i + k exists: the history of a
// prefix is exactly the full history's events confirmed inside the prefix, and
// the prefix's swing list can differ from the full one only in its last swing.
TEST(SwingProperties, PrefixStability) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto s = seed % 2 ? random_series(seed, 160, "R") : tie_heavy_series(seed, 160);
        const auto full_history = swing_history(s, 3);
        const auto full = detect_swings(s, 3);
        for (std::size_t len = 0; len <= s.size(); len += 7) {
            const auto p = testing_support::prefix(s, len);
            std::vector<SwingEvent> expected;
            for (const auto& e : full_history) {
                if (e.point.confirm_index < static_cast<BarIndex>(len)) expected.push_back(e);
            }
            EXPECT_EQ(swing_history(p, 3), expected) << "seed " << seed << " len " << len;

            const auto part = detect_swings(p, 3);
            for (std::size_t i = 0; i + 1 < part.size(); ++i) {
                ASSERT_LT(i, full.size());
                EXPECT_EQ(part[i], full[i]);
            }
        }
    }
}

TEST(SwingProperties, OutsideBarContinuesAlternation) {
    // Bar 4 is both a top and a bottom candidate after a top at 0, so its
    // bottom comes first and the earlier top survives.
    const auto s = hl_bars({10, 9, 8, 7, 12, 9, 10, 11, 13}, {9, 8, 7, 6, 0.5, 5, 6, 7, 8});
    const auto swings = detect_swings(s, 3);
    ASSERT_GE(swings.size(), 3u);
    EXPECT_EQ(swings[0], (SwingPoint{0, SwingKind::Top, 10.0, 3}));
    EXPECT_EQ(swings[1], (SwingPoint{4, SwingKind::Bottom, 0.5, 7}));
    EXPECT_EQ(swings[2], (SwingPoint{4, SwingKind::Top, 12.0, 7}));
}
