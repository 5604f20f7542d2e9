#include <filesystem>
#include <sstream>
#include <system_error>

#include <gtest/gtest.h>

#include "chartpat/fixtures.hpp"
#include "chartpat/market_data.hpp"
#include "support.hpp"

using namespace chartpat;

namespace {

Series parse_text(const std::string& body) {
    std::istringstream in(std::string(kCsvHeader) + "\n" + body);
    return parse_csv(in, "X");
}

std::size_t parse_error_line(const std::string& body) {
    try {
        (void)parse_text(body);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(ParseCsv, MapsFieldsDirectly) {
    const auto s = parse_text("1995-01-02,43.0,45.0,42.5,44.1,1000\n");
    ASSERT_EQ(s.size(), 1u);
    const auto& b = s.bars[0];
    EXPECT_EQ(b.date.str(), "1995-01-02");
    EXPECT_DOUBLE_EQ(b.open, 43.0);
    EXPECT_DOUBLE_EQ(b.high, 45.0);
    EXPECT_DOUBLE_EQ(b.low, 42.5);
    EXPECT_DOUBLE_EQ(b.close, 44.1);
    EXPECT_EQ(b.volume, 1000);
}

TEST(ParseCsv, EmptyVolumeIsAbsent) {
    const auto s = parse_text("1995-01-02,43,45,42.5,44.1,\n");
    EXPECT_FALSE(s.bars[0].volume.has_value());
}

TEST(ParseCsv, OhlcViolationNamesTheRow) {
    EXPECT_EQ(parse_error_line("1995-01-02,48,45,50,47,1\n"), 2u);
    EXPECT_EQ(parse_error_line("1995-01-02,43,45,42,44,1\n1995-01-03,46,45,42,44,1\n"), 3u);
}

TEST(ParseCsv, RepeatedDateNamesBothRows) {
    try {
        (void)parse_text("1995-01-02,43,45,42,44,1\n1995-01-02,43,45,42,44,1\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        const std::string what = e.what();
        EXPECT_NE(what.find("line 3"), std::string::npos) << what;
        EXPECT_NE(what.find("line 2"), std::string::npos) << what;
    }
}

TEST(ParseCsv, SyntaxErrors) {
    EXPECT_EQ(parse_error_line("1995-01-02,43,45,42,44\n"), 2u);
    EXPECT_EQ(parse_error_line("1995-01-02,43,4x5,42,44,1\n"), 2u);
    EXPECT_EQ(parse_error_line("1995-02-30,43,45,42,44,1\n"), 2u);
    EXPECT_EQ(parse_error_line("02/01/1995,43,45,42,44,1\n"), 2u);
    EXPECT_EQ(parse_error_line("1995-01-02,43,45,42,44,-5\n"), 2u);
    EXPECT_EQ(parse_error_line("1995-01-02,0,45,0,44,1\n"), 2u);

    std::istringstream no_header("1995-01-02,43,45,42,44,1\n");
    EXPECT_THROW((void)parse_csv(no_header, "X"), ParseError);
    std::istringstream empty("");
    EXPECT_THROW((void)parse_csv(empty, "X"), ParseError);
}

TEST(Validate, CleanSeriesHasEmptyReport) {
    const auto s = random_series(7, 10, "X");
    EXPECT_TRUE(validate(s).clean());
}

TEST(Validate, ZeroVolumeIsOnlyAWarning) {
    auto s = random_series(7, 10, "X");
    s.bars[4].volume = 0;
    const auto r = validate(s);
    ASSERT_EQ(r.anomalies.size(), 1u);
    EXPECT_EQ(r.anomalies[0].index, 4);
    EXPECT_EQ(r.anomalies[0].kind, AnomalyKind::ZeroVolume);
    EXPECT_EQ(r.anomalies[0].severity, Severity::Warning);
    EXPECT_FALSE(r.has_errors());
}

TEST(Validate, CloseAboveHighIsReportedAtItsIndex) {
    auto s = random_series(7, 10, "X");
    s.bars[7].close = s.bars[7].high + 1.0;
    const auto before = s;
    const auto r = validate(s);
    ASSERT_EQ(r.anomalies.size(), 1u);
    EXPECT_EQ(r.anomalies[0].index, 7);
    EXPECT_EQ(r.anomalies[0].kind, AnomalyKind::Ohlc);
    EXPECT_EQ(s, before);
}

TEST(Validate, ReportsEveryAnomaly) {
    auto s = random_series(3, 12, "X");
    s.bars[2].low = s.bars[2].high + 1.0;
    s.bars[5].date = s.bars[4].date;
    s.bars[9].open = -1.0;
    const auto r = validate(s);
    ASSERT_EQ(r.anomalies.size(), 4u);  // negative open also breaks OHLC
    EXPECT_EQ(r.anomalies[0].index, 2);
    EXPECT_EQ(r.anomalies[1].kind, AnomalyKind::DateOrder);
    EXPECT_EQ(r.anomalies[2].kind, AnomalyKind::NonPositivePrice);
}

TEST(RoundTrip, RandomSeries) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto s = random_series(seed, 300, "RT", 10.0 + static_cast<double>(seed), 0.03);
        std::istringstream in(to_csv(s));
        EXPECT_EQ(parse_csv(in, "RT"), s) << "seed " << seed;
    }
}

TEST(RoundTrip, SixFractionalDigits) {
    const auto s = parse_text("1995-01-02,1.123456,2.000001,0.999999,1.5,\n");
    std::istringstream in(to_csv(s));
    EXPECT_EQ(parse_csv(in, "X"), s);
    EXPECT_EQ(format_price(2.000001), "2.000001");
    EXPECT_EQ(format_price(44.1), "44.1");
    EXPECT_EQ(format_price(43.0), "43.0");
}

TEST(LoadCsvFile, IdFromStemAndMissingFile) {
    const auto dir = std::filesystem::temp_directory_path() / "chartpat_md_test";
    std::filesystem::create_directories(dir);
    const auto s = random_series(5, 20, "ignored");
    write_series_files(dir.string(), std::vector<Series>{s});
    const auto loaded = load_csv_file((dir / "ignored.csv").string());
    EXPECT_EQ(loaded.security_id, "ignored");
    EXPECT_EQ(load_csv_file((dir / "ignored.csv").string(), "OTHER").security_id, "OTHER");
    EXPECT_THROW((void)load_csv_file((dir / "nope.csv").string()), std::system_error);
    std::filesystem::remove_all(dir);
}

TEST(Fixtures, BusinessDaysSkipWeekends) {
    EXPECT_EQ(business_day(0).str(), "1995-01-02");
    EXPECT_EQ(business_day(4).str(), "1995-01-06");
    EXPECT_EQ(business_day(5).str(), "1995-01-09");
    EXPECT_EQ(business_day(259).str(), "1995-12-29");
}

TEST(Fixtures, BarScriptErrorsNameTheLine) {
    EXPECT_THROW((void)parse_bar_script("~3 10\n"), std::invalid_argument);
    EXPECT_THROW((void)parse_bar_script("10\n11 q=3\n"), std::invalid_argument);
    const auto specs = parse_bar_script("10 # start\n~2 12\n11 h=13 l=10.5 o=12\n");
    ASSERT_EQ(specs.size(), 4u);
    EXPECT_DOUBLE_EQ(specs[1].close, 11.0);
    EXPECT_DOUBLE_EQ(*specs[3].high, 13.0);
}

TEST(Fixtures, GeneratedSeriesAreValid) {
    for (const auto& s : synthetic_corpus(42)) EXPECT_TRUE(validate(s).clean()) << s.security_id;
    for (const auto& s : showcase_bundle()) EXPECT_TRUE(validate(s).clean()) << s.security_id;
}
