#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chartpat {

/// Bar position inside a Series (0-based). Every module addresses bars by index.
using BarIndex = std::ptrdiff_t;

/**
 * @brief Calendar date label in `YYYY-MM-DD` form.
 *
 * Dates are opaque ordered labels: there is no calendar arithmetic anywhere in
 * the detection pipeline ("3 days" always means 3 bars). The textual form is
 * kept so that ordering is plain lexicographic comparison.
 */
class Date {
public:
    Date() = default;

    /// Throws std::invalid_argument unless `text` is a valid YYYY-MM-DD date.
    static Date parse(std::string_view text);
    static std::optional<Date> try_parse(std::string_view text) noexcept;

    /// Builds a date from its fields; fields must describe a real calendar day.
    static Date from_ymd(int year, unsigned month, unsigned day);

    [[nodiscard]] const std::string& str() const noexcept { return text_; }
    [[nodiscard]] bool empty() const noexcept { return text_.empty(); }

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

/// One trading period.
struct Bar {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::optional<std::int64_t> volume;

    bool operator==(const Bar&) const = default;
};

struct Series {
    std::string security_id;
    std::vector<Bar> bars;

    [[nodiscard]] std::size_t size() const noexcept { return bars.size(); }
    [[nodiscard]] bool empty() const noexcept { return bars.empty(); }
    [[nodiscard]] const Bar& operator[](BarIndex i) const { return bars[static_cast<std::size_t>(i)]; }
    [[nodiscard]] BarIndex last_index() const noexcept { return static_cast<BarIndex>(bars.size()) - 1; }

    bool operator==(const Series&) const = default;
};

enum class AnomalyKind {
    Ohlc,              ///< low > min(open, close) or high < max(open, close)
    NonPositivePrice,  ///< some price <= 0
    DateOrder,         ///< date not strictly after the previous bar's
    ZeroVolume,        ///< warning only; volume is optional and unused
};

enum class Severity { Error, Warning };

struct Anomaly {
    BarIndex index = 0;
    AnomalyKind kind = AnomalyKind::Ohlc;
    Severity severity = Severity::Error;
    std::string message;
};

struct ValidationReport {
    std::vector<Anomaly> anomalies;

    [[nodiscard]] bool clean() const noexcept { return anomalies.empty(); }
    [[nodiscard]] bool has_errors() const noexcept;
};

[[nodiscard]] std::string_view to_string(AnomalyKind kind) noexcept;

/// Raised by the CSV reader. `line` is the 1-based line number in the input
/// (the header is line 1, the first bar line 2).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Header every bar file must start with.
inline constexpr std::string_view kCsvHeader = "date,open,high,low,close,volume";

/**
 * @brief Reads bars without checking OHLC/date invariants.
 *
 * Only syntax is enforced (field count, numbers, dates). Used by `validate`
 * style tooling that wants to report every anomaly instead of the first one.
 */
[[nodiscard]] Series read_csv_unchecked(std::istream& in, std::string security_id);

/**
 * @brief Parses a bar file into a Series satisfying every Bar/Series invariant.
 *
 * Throws ParseError on malformed rows, OHLC violations (naming the row) and
 * non-increasing dates (naming both rows of the offending pair).
 */
[[nodiscard]] Series parse_csv(std::istream& in, std::string security_id);

/// Loads `path`; the security id defaults to the file stem.
[[nodiscard]] Series load_csv_file(const std::string& path, std::optional<std::string> security_id = {});

void write_csv(std::ostream& out, const Series& series);
[[nodiscard]] std::string to_csv(const Series& series);

/// Checks every invariant; never throws and never mutates its input.
[[nodiscard]] ValidationReport validate(const Series& series);

/// Formats a price with up to 6 fractional digits, trailing zeros trimmed.
[[nodiscard]] std::string format_price(double value);

}  // namespace chartpat
