#include "chartpat/market_data.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <filesystem>
#include <system_error>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

namespace chartpat {

namespace {

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

unsigned days_in_month(int year, unsigned month) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return kDays[month - 1];
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Decimal with optional sign, at most 6 fractional digits, no exponent.
std::optional<double> parse_price(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') body.remove_prefix(1);
    const auto dot = body.find('.');
    const auto int_part = body.substr(0, dot);
    if (!all_digits(int_part)) return std::nullopt;
    if (dot != std::string_view::npos) {
        const auto frac = body.substr(dot + 1);
        if (!all_digits(frac) || frac.size() > 6) return std::nullopt;
    }
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::int64_t> parse_volume(std::string_view text) {
    if (!all_digits(text)) return std::nullopt;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string anomaly_message(const Bar& bar, AnomalyKind kind) {
    switch (kind) {
        case AnomalyKind::Ohlc:
            return fmt::format("OHLC violation: open={} high={} low={} close={}", format_price(bar.open),
                               format_price(bar.high), format_price(bar.low), format_price(bar.close));
        case AnomalyKind::NonPositivePrice:
            return "prices must be strictly positive";
        case AnomalyKind::ZeroVolume:
            return "zero volume";
        case AnomalyKind::DateOrder:
            break;
    }
    return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Date

std::optional<Date> Date::try_parse(std::string_view text) noexcept {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    const auto y = text.substr(0, 4);
    const auto m = text.substr(5, 2);
    const auto d = text.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
    const int year = std::stoi(std::string(y));
    const unsigned month = static_cast<unsigned>(std::stoi(std::string(m)));
    const unsigned day = static_cast<unsigned>(std::stoi(std::string(d)));
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return std::nullopt;
    return Date(std::string(text));
}

Date Date::parse(std::string_view text) {
    if (auto d = try_parse(text)) return *d;
    throw std::invalid_argument(fmt::format("invalid date '{}' (expected YYYY-MM-DD)", text));
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    return parse(fmt::format("{:04d}-{:02d}-{:02d}", year, month, day));
}

// ---------------------------------------------------------------------------

bool ValidationReport::has_errors() const noexcept {
    return std::any_of(anomalies.begin(), anomalies.end(),
                       [](const Anomaly& a) { return a.severity == Severity::Error; });
}

std::string_view to_string(AnomalyKind kind) noexcept {
    switch (kind) {
        case AnomalyKind::Ohlc: return "OHLC";
        case AnomalyKind::NonPositivePrice: return "NonPositivePrice";
        case AnomalyKind::DateOrder: return "DateOrder";
        case AnomalyKind::ZeroVolume: return "ZeroVolume";
    }
    return "?";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

Series read_csv_unchecked(std::istream& in, std::string security_id) {
    Series series;
    series.security_id = std::move(security_id);

    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw ParseError(line_no, fmt::format("expected header '{}'", kCsvHeader));
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw ParseError(line_no, fmt::format("expected 6 fields, found {}", fields.size()));
        }
        Bar bar;
        const auto date = Date::try_parse(trim(fields[0]));
        if (!date) throw ParseError(line_no, fmt::format("unparsable date '{}'", trim(fields[0])));
        bar.date = *date;

        double* targets[] = {&bar.open, &bar.high, &bar.low, &bar.close};
        static constexpr const char* kNames[] = {"open", "high", "low", "close"};
        for (int f = 0; f < 4; ++f) {
            const auto text = trim(fields[static_cast<std::size_t>(f) + 1]);
            const auto value = parse_price(text);
            if (!value) throw ParseError(line_no, fmt::format("unparsable {} '{}'", kNames[f], text));
            *targets[f] = *value;
        }
        const auto vol_text = trim(fields[5]);
        if (!vol_text.empty()) {
            const auto vol = parse_volume(vol_text);
            if (!vol) throw ParseError(line_no, fmt::format("unparsable volume '{}'", vol_text));
            bar.volume = *vol;
        }
        series.bars.push_back(std::move(bar));
    }
    if (!header_seen) throw ParseError(1, "empty input (missing header)");
    return series;
}

Series parse_csv(std::istream& in, std::string security_id) {
    Series series = read_csv_unchecked(in, std::move(security_id));
    const auto report = validate(series);
    for (const auto& a : report.anomalies) {
        if (a.severity != Severity::Error) continue;
        throw ParseError(static_cast<std::size_t>(a.index) + 2, a.message);
    }
    return series;
}

Series load_csv_file(const std::string& path, std::optional<std::string> security_id) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    auto id = security_id ? *security_id : std::filesystem::path(path).stem().string();
    return parse_csv(in, std::move(id));
}

std::string format_price(double value) {
    auto text = fmt::format("{:.6f}", value);
    while (text.size() > 1 && text.back() == '0' && text[text.size() - 2] != '.') text.pop_back();
    if (text == "-0.0") text = "0.0";
    return text;
}

void write_csv(std::ostream& out, const Series& series) {
    out << kCsvHeader << '\n';
    for (const auto& b : series.bars) {
        out << b.date.str() << ',' << format_price(b.open) << ',' << format_price(b.high) << ','
            << format_price(b.low) << ',' << format_price(b.close) << ',';
        if (b.volume) out << *b.volume;
        out << '\n';
    }
}

std::string to_csv(const Series& series) {
    std::ostringstream out;
    write_csv(out, series);
    return out.str();
}

ValidationReport validate(const Series& series) {
    ValidationReport report;
    for (std::size_t i = 0; i < series.bars.size(); ++i) {
        const auto& b = series.bars[i];
        const auto idx = static_cast<BarIndex>(i);
        if (i > 0 && !(series.bars[i - 1].date < b.date)) {
            report.anomalies.push_back(
                {idx, AnomalyKind::DateOrder, Severity::Error,
                 fmt::format("non-monotonic dates: {} (line {}) is not after {} (line {})", b.date.str(), i + 2,
                             series.bars[i - 1].date.str(), i + 1)});
        }
        if (b.open <= 0.0 || b.high <= 0.0 || b.low <= 0.0 || b.close <= 0.0) {
            report.anomalies.push_back(
                {idx, AnomalyKind::NonPositivePrice, Severity::Error, anomaly_message(b, AnomalyKind::NonPositivePrice)});
        }
        if (b.low > std::min(b.open, b.close) || b.high < std::max(b.open, b.close) || b.low > b.high) {
            report.anomalies.push_back({idx, AnomalyKind::Ohlc, Severity::Error, anomaly_message(b, AnomalyKind::Ohlc)});
        }
        if (b.volume && *b.volume == 0) {
            report.anomalies.push_back(
                {idx, AnomalyKind::ZeroVolume, Severity::Warning, anomaly_message(b, AnomalyKind::ZeroVolume)});
        }
    }
    return report;
}

}  // namespace chartpat
