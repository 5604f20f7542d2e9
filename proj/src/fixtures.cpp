#include "chartpat/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace chartpat {

namespace {

// Rounds to `decimals` places so that the result is exactly the double a
// parser would produce for the printed decimal.
double round_to(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

}  // namespace

Date business_day(std::size_t i) {
    using namespace std::chrono;
    const sys_days start = year{1995} / January / 2;
    const auto weeks = static_cast<int>(i / 5);
    const auto rest = static_cast<int>(i % 5);
    const year_month_day ymd{start + days{weeks * 7 + rest}};
    return Date::from_ymd(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                          static_cast<unsigned>(ymd.day()));
}

double FixtureRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double FixtureRng::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t FixtureRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
}

Series random_series(std::uint64_t seed, std::size_t length, std::string security_id, double start_price,
                     double daily_vol) {
    FixtureRng rng(seed);
    Series s;
    s.security_id = std::move(security_id);
    s.bars.reserve(length);
    double prev = start_price;
    for (std::size_t i = 0; i < length; ++i) {
        const double open = std::max(0.01, round_to(prev * std::exp(0.3 * daily_vol * rng.normal()), 2));
        const double close = std::max(0.01, round_to(prev * std::exp(daily_vol * rng.normal()), 2));
        const double high = round_to(std::max(open, close) * (1.0 + std::abs(0.5 * daily_vol * rng.normal())), 2);
        double low = round_to(std::min(open, close) * (1.0 - std::abs(0.5 * daily_vol * rng.normal())), 2);
        low = std::max(0.01, std::min(low, std::min(open, close)));
        Bar b;
        b.date = business_day(i);
        b.open = open;
        b.high = std::max(high, std::max(open, close));
        b.low = low;
        b.close = close;
        b.volume = 100000 + static_cast<std::int64_t>(rng.below(900000));
        s.bars.push_back(std::move(b));
        prev = close;
    }
    return s;
}

Series series_from_specs(std::string security_id, std::span<const BarSpec> specs) {
    Series s;
    s.security_id = std::move(security_id);
    s.bars.reserve(specs.size());
    double prev_close = specs.empty() ? 0.0 : specs.front().close;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        Bar b;
        b.date = business_day(i);
        b.close = round_to(spec.close, 4);
        b.open = round_to(spec.open.value_or((prev_close + spec.close) / 2.0), 4);
        b.high = round_to(spec.high.value_or(std::max(b.open, b.close) * 1.002), 4);
        b.low = round_to(spec.low.value_or(std::min(b.open, b.close) * 0.998), 4);
        b.volume = 500000;
        s.bars.push_back(std::move(b));
        prev_close = spec.close;
    }
    return s;
}

std::vector<BarSpec> parse_bar_script(std::string_view script) {
    std::vector<BarSpec> out;
    std::istringstream in{std::string(script)};
    std::string raw;
    std::size_t line_no = 0;
    auto number = [&](std::string_view text) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
            throw std::invalid_argument(fmt::format("bar script line {}: bad number '{}'", line_no, text));
        }
        return v;
    };
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;) words.push_back(w);
        if (words.empty()) continue;

        if (words[0].front() == '~') {
            if (words.size() != 2 || out.empty()) {
                throw std::invalid_argument(fmt::format("bar script line {}: expected '~N close' after a bar", line_no));
            }
            const double steps = number(std::string_view(words[0]).substr(1));
            const double target = number(words[1]);
            const double from = out.back().close;
            for (int i = 1; i <= static_cast<int>(steps); ++i) {
                out.push_back({from + (target - from) * i / steps, {}, {}, {}});
            }
            continue;
        }
        BarSpec bar{number(words[0]), {}, {}, {}};
        for (std::size_t w = 1; w < words.size(); ++w) {
            const std::string_view word = words[w];
            if (word.size() < 3 || word[1] != '=') {
                throw std::invalid_argument(fmt::format("bar script line {}: bad field '{}'", line_no, word));
            }
            const double v = number(word.substr(2));
            switch (word[0]) {
                case 'h': bar.high = v; break;
                case 'l': bar.low = v; break;
                case 'o': bar.open = v; break;
                default:
                    throw std::invalid_argument(fmt::format("bar script line {}: unknown field '{}'", line_no, word));
            }
        }
        out.push_back(bar);
    }
    return out;
}

std::vector<Series> synthetic_corpus(std::uint64_t seed) {
    static constexpr std::size_t kSecurities = 6;
    static constexpr std::size_t kBars = 2000;
    FixtureRng master(seed);
    std::vector<Series> out;
    for (std::size_t i = 0; i < kSecurities; ++i) {
        const auto sub_seed = static_cast<std::uint64_t>(master.uniform() * 0x1.0p53);
        const double start = 20.0 + 60.0 * master.uniform();
        const double vol = 0.015 + 0.015 * master.uniform();
        out.push_back(random_series(sub_seed, kBars, fmt::format("SYN{:02d}", i + 1), round_to(start, 2), vol));
    }
    return out;
}

void write_series_files(const std::string& dir, std::span<const Series> series) {
    std::filesystem::create_directories(dir);
    for (const auto& s : series) {
        const auto path = std::filesystem::path(dir) / (s.security_id + ".csv");
        std::ofstream out(path);
        if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
        write_csv(out, s);
    }
}

}  // namespace chartpat
