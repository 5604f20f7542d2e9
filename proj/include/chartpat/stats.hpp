#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chartpat/backtest.hpp"
#include "chartpat/patterns.hpp"

namespace chartpat {

using Count = std::int64_t;

/// Percentage held as integer tenths, rounded half away from zero.
class Percent {
public:
    constexpr Percent() = default;
    static constexpr Percent from_tenths(std::int64_t tenths) noexcept { return Percent(tenths); }
    /// 100 * part / whole; 0.0 when whole is 0.
    static constexpr Percent of(Count part, Count whole) noexcept {
        if (whole <= 0) return Percent(0);
        return Percent((2000 * part + whole) / (2 * whole));
    }

    [[nodiscard]] constexpr std::int64_t tenths() const noexcept { return tenths_; }
    [[nodiscard]] constexpr double value() const noexcept { return static_cast<double>(tenths_) / 10.0; }
    [[nodiscard]] std::string str() const;

    constexpr auto operator<=>(const Percent&) const = default;

private:
    constexpr explicit Percent(std::int64_t tenths) : tenths_(tenths) {}
    std::int64_t tenths_ = 0;
};

struct CountRow {
    std::string key;                  ///< display name or security id; "TOTAL" for the total row
    std::optional<PatternKind> kind;  ///< set on pattern rows
    Count total = 0;
    Count true_count = 0;
    Count false_count = 0;
    Percent pct_of_total;
    std::optional<Percent> cum_pct;  ///< empty on total rows
    Percent true_pct;
    Percent false_pct;
    bool is_total = false;
};

struct PatternTally {
    PatternKind kind = PatternKind::UpTrendline;
    Count true_count = 0;
    Count false_count = 0;
};

struct SecurityTally {
    std::string security_id;
    Count true_count = 0;
    Count false_count = 0;
};

/// Rows with nonzero totals sorted by total descending then kind order, then TOTAL.
[[nodiscard]] std::vector<CountRow> pattern_table(std::span<const PatternTally> tallies);
[[nodiscard]] std::vector<CountRow> aggregate_by_pattern(std::span<const Trade> trades);

/// The four trendline kinds (zero rows included) plus their subtotal.
[[nodiscard]] std::vector<CountRow> top_four_table(std::span<const PatternTally> tallies);
[[nodiscard]] std::vector<CountRow> aggregate_top_four(std::span<const Trade> trades);

/// Rows sorted by true percentage descending (ties: total descending, then id), then TOTAL.
[[nodiscard]] std::vector<CountRow> security_table(std::span<const SecurityTally> tallies);
[[nodiscard]] std::vector<CountRow> aggregate_by_security(std::span<const Trade> trades);

[[nodiscard]] std::vector<PatternTally> tally_by_pattern(std::span<const Trade> trades);

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 1;
    double alpha = 0.005;
    double critical_value = 0.0;
    bool significant = false;
};

/// Regularized lower incomplete gamma P(a, x).
[[nodiscard]] double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail chi-square quantile: the x with P(X > x) = alpha.
[[nodiscard]] double chi_square_critical(int df, double alpha);

/**
 * Pearson goodness of fit with df = cells - 1. Throws std::invalid_argument
 * on mismatched or short inputs, non-positive expectations, or alpha outside (0, 1).
 */
[[nodiscard]] ChiSquareResult chi_square_gof(std::span<const double> observed, std::span<const double> expected,
                                             double alpha = 0.005);

/// True versus false against an even split.
[[nodiscard]] ChiSquareResult chi_square_true_false(Count true_count, Count false_count, double alpha = 0.005);

}  // namespace chartpat
