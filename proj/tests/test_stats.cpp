#include <algorithm>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "chartpat/stats.hpp"
#include "published_tables.hpp"

using namespace chartpat;

namespace {

Trade trade(PatternKind kind, bool verdict, std::string security = "S") {
    Trade t;
    t.security_id = std::move(security);
    t.pattern.kind = kind;
    t.pattern.bias = bias_of(kind);
    t.verdict = verdict;
    return t;
}

std::vector<Trade> table1_trades() {
    std::vector<Trade> out;
    for (const auto& r : published::kTable1) {
        for (int i = 0; i < r.true_count; ++i) out.push_back(trade(r.kind, true));
        for (int i = 0; i < r.false_count; ++i) out.push_back(trade(r.kind, false));
    }
    return out;
}

std::vector<Trade> table3_trades() {
    std::vector<Trade> out;
    // Interleaved so the aggregation cannot lean on input order.
    for (int i = 0; i < 120; ++i) {
        for (const auto& r : published::kTable3) {
            if (i < r.true_count) out.push_back(trade(PatternKind::UpTrendline, true, std::string(r.name)));
            if (i < r.false_count) out.push_back(trade(PatternKind::DownTrendline, false, std::string(r.name)));
        }
    }
    return out;
}

double boost_critical(int df, double alpha) {
    const boost::math::chi_squared dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

}  // namespace

TEST(Percent, RoundsHalfAwayFromZero) {
    EXPECT_EQ(Percent::of(1, 8).str(), "12.5");
    EXPECT_EQ(Percent::of(1, 16).tenths(), 63);   // 6.25
    EXPECT_EQ(Percent::of(1, 3).tenths(), 333);   // 33.33
    EXPECT_EQ(Percent::of(2, 3).tenths(), 667);   // 66.67
    EXPECT_EQ(Percent::of(59, 72).str(), "81.9");
    EXPECT_EQ(Percent::of(0, 0).str(), "0.0");
    EXPECT_EQ(Percent::of(5, 5).str(), "100.0");
}

TEST(AggregateByPattern, ReproducesTableOne) {
    const auto rows = aggregate_by_pattern(table1_trades());
    ASSERT_EQ(rows.size(), published::kTable1.size() + 1);
    for (std::size_t i = 0; i < published::kTable1.size(); ++i) {
        const auto& want = published::kTable1[i];
        const auto& got = rows[i];
        EXPECT_EQ(got.kind, want.kind) << "row " << i;
        EXPECT_EQ(got.total, want.total);
        EXPECT_EQ(got.true_count, want.true_count);
        EXPECT_EQ(got.false_count, want.false_count);
        EXPECT_NEAR(got.pct_of_total.value(), want.pct, 0.05) << got.key;
        ASSERT_TRUE(got.cum_pct.has_value());
        EXPECT_NEAR(got.cum_pct->value(), want.cum_pct, 0.05) << got.key;
    }
    const auto& total = rows.back();
    EXPECT_TRUE(total.is_total);
    EXPECT_EQ(total.key, "TOTAL");
    EXPECT_EQ(total.total, published::kTable1Total);
    EXPECT_EQ(total.true_count, published::kTable1True);
    EXPECT_EQ(total.false_count, published::kTable1False);
    EXPECT_NEAR(total.true_pct.value(), published::kTable1TruePct, 0.05);
    EXPECT_NEAR(total.false_pct.value(), published::kTable1FalsePct, 0.05);
    EXPECT_EQ(total.pct_of_total.str(), "100.0");
    EXPECT_FALSE(total.cum_pct.has_value());
}

TEST(AggregateByPattern, EmptyGivesZeroTotal) {
    const auto rows = aggregate_by_pattern({});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].total, 0);
    EXPECT_EQ(rows[0].true_pct.str(), "0.0");
    EXPECT_EQ(rows[0].false_pct.str(), "0.0");
    EXPECT_EQ(rows[0].pct_of_total.str(), "0.0");
}

TEST(AggregateTopFour, ReproducesTableTwo) {
    const auto rows = aggregate_top_four(table1_trades());
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& want = published::kTable2[i];
        EXPECT_EQ(rows[i].kind, want.kind);
        EXPECT_EQ(rows[i].total, want.total);
        EXPECT_EQ(rows[i].true_count, want.true_count);
        EXPECT_NEAR(rows[i].true_pct.value(), want.true_pct, 0.05) << rows[i].key;
        EXPECT_NEAR(rows[i].false_pct.value(), want.false_pct, 0.05) << rows[i].key;
    }
    EXPECT_EQ(rows.back().total, 721);
    EXPECT_EQ(rows.back().true_count, 534);
    // Nearly 86% of all patterns.
    EXPECT_EQ(Percent::of(rows.back().total, published::kTable1Total).str(), "85.8");
}

TEST(AggregateBySecurity, ReproducesTableThreeArithmetic) {
    const auto rows = aggregate_by_security(table3_trades());
    ASSERT_EQ(rows.size(), published::kTable3.size() + 1);
    for (std::size_t i = 0; i < published::kTable3.size(); ++i) {
        const auto& want = published::kTable3[i];
        EXPECT_EQ(rows[i].key, want.name) << "row " << i;
        EXPECT_EQ(rows[i].total, want.total);
        EXPECT_EQ(rows[i].true_pct, Percent::of(want.true_count, want.total));
        if (want.name == "VALE PNA") {
            // The printed 81.7 / 18.3 does not follow from 59 of 72.
            EXPECT_EQ(rows[i].true_pct.str(), "81.9");
            EXPECT_EQ(rows[i].false_pct.str(), "18.1");
        } else {
            EXPECT_NEAR(rows[i].true_pct.value(), want.true_pct, 0.05) << want.name;
            EXPECT_NEAR(rows[i].false_pct.value(), want.false_pct, 0.05) << want.name;
        }
    }
    EXPECT_EQ(rows.back().total, 840);
    EXPECT_EQ(rows.back().true_pct.str(), "75.2");
}

TEST(AggregateBySecurity, SmallCases) {
    const std::vector<Trade> one = {trade(PatternKind::UpTrendline, true, "A")};
    const auto rows = aggregate_by_security(one);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].true_pct.str(), "100.0");
    EXPECT_EQ(rows[0].false_pct.str(), "0.0");

    std::vector<Trade> bradesco;
    for (int i = 0; i < 83; ++i) bradesco.push_back(trade(PatternKind::UpTrendline, true, "B"));
    for (int i = 0; i < 11; ++i) bradesco.push_back(trade(PatternKind::UpTrendline, false, "B"));
    const auto b = aggregate_by_security(bradesco);
    EXPECT_EQ(b[0].true_pct.str(), "88.3");
    EXPECT_EQ(b[0].false_pct.str(), "11.7");
}

TEST(CountTables, PercentColumnsSumToHundred) {
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
        std::vector<Trade> trades;
        const int n = 1 + static_cast<int>(rng() % 400);
        for (int i = 0; i < n; ++i) {
            const auto kind = kAllPatternKinds[rng() % kPatternKindCount];
            trades.push_back(trade(kind, rng() % 3 != 0, "S" + std::to_string(rng() % 7)));
        }
        for (const auto& rows : {aggregate_by_pattern(trades), aggregate_by_security(trades)}) {
            std::int64_t share = 0;
            Count true_total = 0;
            for (const auto& r : rows) {
                EXPECT_EQ(r.total, r.true_count + r.false_count);
                if (r.total > 0) {
                    EXPECT_NEAR(r.true_pct.tenths() + r.false_pct.tenths(), 1000, 1);
                }
                if (!r.is_total) {
                    share += r.pct_of_total.tenths();
                    true_total += r.true_count;
                }
            }
            EXPECT_NEAR(static_cast<double>(share) / 10.0, 100.0, 0.1 * static_cast<double>(rows.size()) / 2.0);
            EXPECT_EQ(true_total, rows.back().true_count);
        }
        const auto by_kind = aggregate_by_pattern(trades);
        EXPECT_EQ(by_kind[by_kind.size() - 2].cum_pct->str(), "100.0");
    }
}

TEST(ChiSquare, PublishedTotals) {
    const std::array<double, 2> obs = {632, 208};
    const std::array<double, 2> exp = {420, 420};
    const auto r = chi_square_gof(obs, exp, 0.005);
    EXPECT_NEAR(r.statistic, 214.0190476, 1e-6);
    EXPECT_EQ(r.degrees_of_freedom, 1);
    EXPECT_NEAR(r.critical_value, 7.879, 0.001);
    EXPECT_NEAR(r.critical_value, boost_critical(1, 0.005), 1e-8);
    EXPECT_TRUE(r.significant);
    EXPECT_EQ(chi_square_true_false(632, 208).statistic, r.statistic);
}

TEST(ChiSquare, TopFourSubsetIsSignificant) {
    const auto r = chi_square_true_false(534, 187, 0.005);
    EXPECT_TRUE(r.significant);
    EXPECT_NEAR(r.statistic, (534.0 - 360.5) * (534.0 - 360.5) * 2.0 / 360.5, 1e-9);
}

TEST(ChiSquare, SmallExamples) {
    const std::array<double, 2> obs = {55, 45};
    const std::array<double, 2> exp = {50, 50};
    EXPECT_EQ(chi_square_gof(obs, exp).statistic, 1.0);
    EXPECT_FALSE(chi_square_gof(obs, exp).significant);
    const std::array<double, 3> same = {10, 20, 30};
    const auto r = chi_square_gof(same, same);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_FALSE(r.significant);
    EXPECT_EQ(r.degrees_of_freedom, 2);
}

TEST(ChiSquare, RejectsBadInput) {
    const std::array<double, 2> two = {1, 2};
    const std::array<double, 3> three = {1, 2, 3};
    const std::array<double, 1> one = {1};
    const std::array<double, 2> zero = {1, 0};
    EXPECT_THROW((void)chi_square_gof(two, three), std::invalid_argument);
    EXPECT_THROW((void)chi_square_gof(one, one), std::invalid_argument);
    EXPECT_THROW((void)chi_square_gof(two, zero), std::invalid_argument);
    EXPECT_THROW((void)chi_square_gof(two, two, 0.0), std::invalid_argument);
    EXPECT_THROW((void)chi_square_gof(two, two, 1.0), std::invalid_argument);
}

TEST(ChiSquare, PermutationInvariantAndNonNegative) {
    std::mt19937 rng(3);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> obs, exp;
        const int cells = 2 + static_cast<int>(rng() % 8);
        for (int i = 0; i < cells; ++i) {
            obs.push_back(static_cast<double>(rng() % 100));
            exp.push_back(1.0 + static_cast<double>(rng() % 100));
        }
        const double stat = chi_square_gof(obs, exp).statistic;
        EXPECT_GE(stat, 0.0);
        std::vector<std::size_t> order(obs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<double> po, pe;
        for (const auto i : order) {
            po.push_back(obs[i]);
            pe.push_back(exp[i]);
        }
        EXPECT_NEAR(chi_square_gof(po, pe).statistic, stat, 1e-9 * std::max(1.0, stat));
    }
}

TEST(ChiSquare, CriticalValuesAgainstBoost) {
    for (const int df : {1, 2, 3, 5, 10, 19, 30, 100}) {
        double previous = 0.0;
        for (const double alpha : {0.1, 0.05, 0.01, 0.005, 0.001}) {
            const double c = chi_square_critical(df, alpha);
            EXPECT_NEAR(c, boost_critical(df, alpha), 1e-8 * std::max(1.0, c)) << df << " " << alpha;
            EXPECT_GT(c, previous);
            previous = c;
        }
    }
}

TEST(IncompleteGamma, AgainstBoost) {
    for (const double a : {0.5, 1.0, 2.5, 10.0, 50.0}) {
        for (const double x : {0.0, 0.1, 1.0, 3.0, 9.5, 40.0, 120.0}) {
            EXPECT_NEAR(gamma_p(a, x), boost::math::gamma_p(a, x), 1e-12) << a << " " << x;
            EXPECT_NEAR(gamma_q(a, x), boost::math::gamma_q(a, x), 1e-12) << a << " " << x;
        }
    }
    EXPECT_THROW((void)gamma_p(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW((void)gamma_q(1.0, -1.0), std::invalid_argument);
}
