#include "chartpat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace chartpat {

namespace {

constexpr std::array<PatternKind, 4> kTopFour = {PatternKind::UpTrendline, PatternKind::BreakingDownTrendline,
                                                 PatternKind::BreakingUpTrendline, PatternKind::DownTrendline};

constexpr double kGammaEps = 1e-15;
constexpr int kGammaMaxIter = 10000;
constexpr double kQuantileTol = 1e-10;

CountRow make_row(std::string key, Count t, Count f, Count grand_total) {
    CountRow r;
    r.key = std::move(key);
    r.true_count = t;
    r.false_count = f;
    r.total = t + f;
    r.pct_of_total = Percent::of(r.total, grand_total);
    r.true_pct = Percent::of(t, r.total);
    r.false_pct = Percent::of(f, r.total);
    return r;
}

CountRow total_row(Count t, Count f) {
    auto r = make_row("TOTAL", t, f, t + f);
    r.pct_of_total = Percent::of(r.total, r.total);
    r.is_total = true;
    return r;
}

double gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kGammaMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_continued_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::invalid_argument(fmt::format("incomplete gamma needs a > 0 and x >= 0 (a={}, x={})", a, x));
    }
}

}  // namespace

std::string Percent::str() const {
    const auto mag = tenths_ < 0 ? -tenths_ : tenths_;
    return fmt::format("{}{}.{}", tenths_ < 0 ? "-" : "", mag / 10, mag % 10);
}

std::vector<CountRow> pattern_table(std::span<const PatternTally> tallies) {
    std::array<std::pair<Count, Count>, kPatternKindCount> counts{};
    for (const auto& t : tallies) {
        auto& c = counts[static_cast<std::size_t>(t.kind)];
        c.first += t.true_count;
        c.second += t.false_count;
    }
    Count grand_t = 0;
    Count grand_f = 0;
    for (const auto& c : counts) {
        grand_t += c.first;
        grand_f += c.second;
    }
    const Count grand = grand_t + grand_f;

    std::vector<CountRow> rows;
    for (const auto k : kAllPatternKinds) {
        const auto& c = counts[static_cast<std::size_t>(k)];
        if (c.first + c.second == 0) continue;
        auto r = make_row(std::string(display_name(k)), c.first, c.second, grand);
        r.kind = k;
        rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CountRow& a, const CountRow& b) { return a.total > b.total; });
    Count cum = 0;
    for (auto& r : rows) {
        cum += r.total;
        r.cum_pct = Percent::of(cum, grand);
    }
    rows.push_back(total_row(grand_t, grand_f));
    return rows;
}

std::vector<PatternTally> tally_by_pattern(std::span<const Trade> trades) {
    std::vector<PatternTally> out;
    for (const auto k : kAllPatternKinds) out.push_back({k, 0, 0});
    for (const auto& t : trades) {
        auto& row = out[static_cast<std::size_t>(t.pattern.kind)];
        (t.verdict ? row.true_count : row.false_count) += 1;
    }
    return out;
}

std::vector<CountRow> aggregate_by_pattern(std::span<const Trade> trades) {
    return pattern_table(tally_by_pattern(trades));
}

std::vector<CountRow> top_four_table(std::span<const PatternTally> tallies) {
    std::array<std::pair<Count, Count>, 4> counts{};
    for (const auto& t : tallies) {
        const auto it = std::find(kTopFour.begin(), kTopFour.end(), t.kind);
        if (it == kTopFour.end()) continue;
        auto& c = counts[static_cast<std::size_t>(it - kTopFour.begin())];
        c.first += t.true_count;
        c.second += t.false_count;
    }
    Count sub_t = 0;
    Count sub_f = 0;
    std::vector<CountRow> rows;
    for (std::size_t i = 0; i < kTopFour.size(); ++i) {
        sub_t += counts[i].first;
        sub_f += counts[i].second;
    }
    for (std::size_t i = 0; i < kTopFour.size(); ++i) {
        auto r = make_row(std::string(display_name(kTopFour[i])), counts[i].first, counts[i].second, sub_t + sub_f);
        r.kind = kTopFour[i];
        rows.push_back(std::move(r));
    }
    rows.push_back(total_row(sub_t, sub_f));
    return rows;
}

std::vector<CountRow> aggregate_top_four(std::span<const Trade> trades) {
    return top_four_table(tally_by_pattern(trades));
}

std::vector<CountRow> security_table(std::span<const SecurityTally> tallies) {
    std::map<std::string, std::pair<Count, Count>> counts;
    for (const auto& t : tallies) {
        auto& c = counts[t.security_id];
        c.first += t.true_count;
        c.second += t.false_count;
    }
    Count grand_t = 0;
    Count grand_f = 0;
    for (const auto& [id, c] : counts) {
        grand_t += c.first;
        grand_f += c.second;
    }
    std::vector<CountRow> rows;
    for (const auto& [id, c] : counts) rows.push_back(make_row(id, c.first, c.second, grand_t + grand_f));
    std::stable_sort(rows.begin(), rows.end(), [](const CountRow& a, const CountRow& b) {
        if (a.true_pct != b.true_pct) return a.true_pct > b.true_pct;
        return a.total > b.total;
    });
    rows.push_back(total_row(grand_t, grand_f));
    return rows;
}

std::vector<CountRow> aggregate_by_security(std::span<const Trade> trades) {
    std::vector<SecurityTally> tallies;
    tallies.reserve(trades.size());
    for (const auto& t : trades) tallies.push_back({t.security_id, t.verdict ? 1 : 0, t.verdict ? 0 : 1});
    return security_table(tallies);
}

// ---------------------------------------------------------------------------

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_continued_fraction(a, x);
}

double chi_square_critical(int df, double alpha) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const double a = df / 2.0;
    auto tail = [a](double x) { return gamma_q(a, x / 2.0); };
    double lo = 0.0;
    double hi = std::max(1.0, static_cast<double>(df));
    while (tail(hi) > alpha) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > kQuantileTol) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid == lo || mid == hi) break;
        (tail(mid) > alpha ? lo : hi) = mid;
    }
    return lo + (hi - lo) / 2.0;
}

ChiSquareResult chi_square_gof(std::span<const double> observed, std::span<const double> expected, double alpha) {
    if (observed.size() != expected.size()) throw std::invalid_argument("observed and expected differ in length");
    if (observed.size() < 2) throw std::invalid_argument("chi-square needs at least two cells");
    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) {
            throw std::invalid_argument(fmt::format("degenerate expectation {} in cell {}", expected[i], i));
        }
        const double d = observed[i] - expected[i];
        r.statistic += d * d / expected[i];
    }
    r.degrees_of_freedom = static_cast<int>(observed.size()) - 1;
    r.alpha = alpha;
    r.critical_value = chi_square_critical(r.degrees_of_freedom, alpha);
    r.significant = r.statistic > r.critical_value;
    return r;
}

ChiSquareResult chi_square_true_false(Count true_count, Count false_count, double alpha) {
    const double half = static_cast<double>(true_count + false_count) / 2.0;
    const std::array<double, 2> obs = {static_cast<double>(true_count), static_cast<double>(false_count)};
    const std::array<double, 2> exp = {half, half};
    return chi_square_gof(obs, exp, alpha);
}

}  // namespace chartpat
