#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "chartpat/fixtures.hpp"
#include "chartpat/market_data.hpp"

namespace testing_support {

using namespace chartpat;

// Bars whose open, high, low and close all equal the given close.
inline Series flat_bars(const std::vector<double>& closes, std::string id = "T") {
    Series s;
    s.security_id = std::move(id);
    for (std::size_t i = 0; i < closes.size(); ++i) {
        s.bars.push_back({business_day(i), closes[i], closes[i], closes[i], closes[i], 1000});
    }
    return s;
}

inline Series hl_bars(const std::vector<double>& highs, const std::vector<double>& lows, std::string id = "T") {
    Series s;
    s.security_id = std::move(id);
    for (std::size_t i = 0; i < highs.size(); ++i) {
        const double mid = (highs[i] + lows[i]) / 2.0;
        s.bars.push_back({business_day(i), mid, highs[i], lows[i], mid, 1000});
    }
    return s;
}

inline Series script(const std::string& text, std::string id = "T") {
    const auto specs = parse_bar_script(text);
    return series_from_specs(std::move(id), specs);
}

inline std::vector<double> highs_of(const Series& s) {
    std::vector<double> v;
    for (const auto& b : s.bars) v.push_back(b.high);
    return v;
}

inline std::vector<double> lows_of(const Series& s) {
    std::vector<double> v;
    for (const auto& b : s.bars) v.push_back(b.low);
    return v;
}

inline std::vector<double> closes_of(const Series& s) {
    std::vector<double> v;
    for (const auto& b : s.bars) v.push_back(b.close);
    return v;
}

inline std::vector<bool> up_bars(const Series& s) {
    std::vector<bool> v;
    for (const auto& b : s.bars) v.push_back(b.close > b.open);
    return v;
}

inline Series prefix(const Series& s, std::size_t n) {
    Series p;
    p.security_id = s.security_id;
    p.bars.assign(s.bars.begin(), s.bars.begin() + static_cast<std::ptrdiff_t>(n));
    return p;
}

// Random bars on a coarse price grid so that equal highs and lows are common.
inline Series tie_heavy_series(std::uint64_t seed, std::size_t n) {
    FixtureRng rng(seed);
    Series s;
    s.security_id = "R";
    double level = 20.0;
    for (std::size_t i = 0; i < n; ++i) {
        level = std::max(5.0, level + static_cast<double>(rng.below(5)) - 2.0);
        const double lo = level - static_cast<double>(rng.below(3));
        const double hi = level + static_cast<double>(rng.below(3));
        const double open = lo + static_cast<double>(rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
        const double close = lo + static_cast<double>(rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
        s.bars.push_back({business_day(i), open, hi, lo, close, 1});
    }
    return s;
}

// Reflects prices through pivot / 2, so tops become bottoms.
inline Series mirrored(const Series& s, double pivot = 200.0) {
    Series m = s;
    for (auto& b : m.bars) b = {b.date, pivot - b.open, pivot - b.low, pivot - b.high, pivot - b.close, b.volume};
    return m;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// (security_id, kind, confirm_index) rows of a golden instance file.
using GoldenRow = std::tuple<std::string, std::string, long>;

inline std::vector<GoldenRow> read_golden_instances(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<GoldenRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto a = line.find(',');
        const auto b = line.find(',', a + 1);
        rows.emplace_back(line.substr(0, a), line.substr(a + 1, b - a - 1), std::stol(line.substr(b + 1)));
    }
    return rows;
}

}  // namespace testing_support
