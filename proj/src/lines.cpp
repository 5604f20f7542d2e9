#include "chartpat/lines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace chartpat {

namespace {

constexpr double kPctTolerance = 1e-9;
constexpr BarIndex kTrendlineMinSeparation = 4;  // at least 3 bars strictly between anchors
constexpr BarIndex kTrendlineConfirmBars = 3;

std::optional<Trendline> make_trendline(const SwingPoint& a, const SwingPoint& b, BarIndex series_len) {
    if (a.kind != b.kind || b.index - a.index < kTrendlineMinSeparation) return std::nullopt;
    const bool up = a.kind == SwingKind::Bottom;
    if (up ? !(b.price > a.price) : !(b.price < a.price)) return std::nullopt;

    Trendline t;
    t.direction = up ? Direction::Up : Direction::Down;
    t.anchor1 = {a.index, a.price};
    t.anchor2 = {b.index, b.price};
    t.slope = (b.price - a.price) / static_cast<double>(b.index - a.index);
    t.confirm_index = std::max(b.index + kTrendlineConfirmBars, b.confirm_index);
    if (t.confirm_index >= series_len) return std::nullopt;
    return t;
}

}  // namespace

std::string_view to_string(Direction d) noexcept { return d == Direction::Up ? "up" : "down"; }

std::string_view to_string(LevelKind kind) noexcept {
    return kind == LevelKind::Support ? "support" : "resistance";
}

std::string_view to_string(BreakoutRule rule) noexcept {
    switch (rule) {
        case BreakoutRule::SingleDayPct: return "single_day_pct";
        case BreakoutRule::CumulativePct: return "cumulative_pct";
        case BreakoutRule::ThreeBar: return "three_bar";
    }
    return "?";
}

std::string_view to_string(Signal s) noexcept { return s == Signal::Buy ? "buy" : "sell"; }

Line Line::through(Anchor a, Anchor b) {
    if (a.index == b.index) throw std::invalid_argument("line anchors share an index");
    if (b.index < a.index) std::swap(a, b);
    return {a.index, a.price, (b.price - a.price) / static_cast<double>(b.index - a.index)};
}

std::optional<double> Line::value_at(BarIndex index) const noexcept {
    if (index < origin) return std::nullopt;
    return origin_price + slope * static_cast<double>(index - origin);
}

std::optional<double> Curve::value_at(BarIndex index) const noexcept {
    if (index < first || index - first >= static_cast<BarIndex>(values.size())) return std::nullopt;
    return values[static_cast<std::size_t>(index - first)];
}

std::optional<double> boundary_value(const Boundary& boundary, BarIndex index) noexcept {
    return std::visit(
        [index](const auto& b) -> std::optional<double> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, HorizontalLevel>) {
                return b.price;
            } else {
                return b.value_at(index);
            }
        },
        boundary);
}

double line_value_at(const Trendline& line, BarIndex index) {
    if (index < line.anchor1.index) {
        throw std::out_of_range(fmt::format("index {} precedes trendline anchor {}", index, line.anchor1.index));
    }
    return line.anchor1.price + line.slope * static_cast<double>(index - line.anchor1.index);
}

std::optional<Breakout> detect_breakout(const Series& series, const Boundary& boundary, BarIndex watch_from,
                                        Direction direction, const BreakoutParams& params, BarIndex stop_before) {
    const BarIndex n = static_cast<BarIndex>(series.size());
    if (watch_from < 0 || watch_from >= n) {
        throw std::out_of_range(fmt::format("watch_from {} outside series of {} bars", watch_from, n));
    }
    if (params.window < 1) throw std::invalid_argument("breakout window must be >= 1");
    const BarIndex end = std::min(n, stop_before);
    const BarIndex window = params.window;

    // Distance of each close past the boundary; nullopt when on the origin side
    // or the boundary is undefined there.
    auto beyond = [&](BarIndex i) -> std::optional<std::pair<double, double>> {
        const auto b = boundary_value(boundary, i);
        if (!b || *b <= 0.0) return std::nullopt;
        const double close = series[i].close;
        const double dist = direction == Direction::Up ? close - *b : *b - close;
        if (!(dist > 0.0)) return std::nullopt;
        return std::pair{dist, *b};
    };
    auto far_enough = [&](const std::pair<double, double>& d) {
        return d.first >= params.pct * d.second - kPctTolerance;
    };

    // Distances of the current run of closes beyond the boundary, ending at c.
    std::vector<std::pair<double, double>> run;
    for (BarIndex c = watch_from; c < end; ++c) {
        const auto d = beyond(c);
        if (!d) {
            run.clear();
            continue;
        }
        run.push_back(*d);
        const auto run_len = static_cast<BarIndex>(run.size());

        // Earliest crossing x in [c - window + 1, c] still inside the run.
        const BarIndex x = std::max(c - window + 1, c - run_len + 1);
        if (far_enough(run.back())) {
            return Breakout{direction, x, c, x == c ? BreakoutRule::SingleDayPct : BreakoutRule::CumulativePct};
        }
        if (run_len >= window) {
            bool ok = true;
            if (params.three_bar == ThreeBarMode::Receding) {
                for (std::size_t j = run.size() - static_cast<std::size_t>(window) + 1; j < run.size() && ok; ++j) {
                    ok = run[j].first > run[j - 1].first;
                }
            }
            if (ok) return Breakout{direction, x, c, BreakoutRule::ThreeBar};
        }
    }
    return std::nullopt;
}

std::vector<Trendline> fit_trendlines(const Series& series, std::span<const SwingPoint> swings) {
    std::vector<Trendline> out;
    const auto n = static_cast<BarIndex>(series.size());
    std::optional<SwingPoint> last_top;
    std::optional<SwingPoint> last_bottom;
    for (const auto& s : swings) {
        auto& prev = s.kind == SwingKind::Top ? last_top : last_bottom;
        if (prev) {
            if (auto t = make_trendline(*prev, s, n)) out.push_back(*t);
        }
        prev = s;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Trendline& a, const Trendline& b) { return a.confirm_index < b.confirm_index; });
    return out;
}

std::vector<Trendline> fit_trendlines(const Series& series, std::span<const SwingEvent> history) {
    std::vector<Trendline> out;
    const auto n = static_cast<BarIndex>(series.size());
    std::vector<SwingPoint> as_of;
    for (const auto& e : history) {
        apply(as_of, e);
        const auto& tail = as_of.back();
        for (auto it = as_of.rbegin() + 1; it != as_of.rend(); ++it) {
            if (it->kind != tail.kind) continue;
            if (auto t = make_trendline(*it, tail, n)) out.push_back(*t);
            break;
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Trendline& a, const Trendline& b) { return a.confirm_index < b.confirm_index; });
    return out;
}

// ---------------------------------------------------------------------------

double TouchGroup::mean() const noexcept {
    if (members_.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& m : members_) sum += m.price;
    return sum / static_cast<double>(members_.size());
}

bool TouchGroup::add(const SwingPoint& swing) {
    before_last_ = members_;
    if (swing.kind != kind_) throw std::invalid_argument("touch of the wrong swing kind");
    if (members_.empty()) {
        members_.push_back(swing);
        return true;
    }
    double sum = swing.price;
    for (const auto& m : members_) sum += m.price;
    const double mean = sum / static_cast<double>(members_.size() + 1);
    const double limit = tolerance_ * mean;
    const bool fits = std::abs(swing.price - mean) <= limit &&
                      std::all_of(members_.begin(), members_.end(),
                                  [&](const SwingPoint& m) { return std::abs(m.price - mean) <= limit; });
    if (fits) {
        members_.push_back(swing);
        return true;
    }
    members_.assign(1, swing);
    return false;
}

bool TouchGroup::replace_last(const SwingPoint& swing) {
    members_ = before_last_;
    auto saved = before_last_;
    const bool joined = add(swing);
    before_last_ = std::move(saved);
    return joined;
}

Level TouchGroup::level() const {
    Level l;
    l.kind = kind_ == SwingKind::Top ? LevelKind::Resistance : LevelKind::Support;
    l.price = mean();
    for (const auto& m : members_) l.formed_by.push_back(m.index);
    l.from_index = members_.empty() ? 0 : members_.front().index;
    return l;
}

std::vector<Level> detect_levels(const Series& /*series*/, std::span<const SwingPoint> swings, double flatness_tol) {
    std::vector<Level> out;
    TouchGroup tops(SwingKind::Top, flatness_tol);
    TouchGroup bottoms(SwingKind::Bottom, flatness_tol);
    auto flush = [&](const TouchGroup& g) {
        if (g.members().size() >= 2) out.push_back(g.level());
    };
    for (const auto& s : swings) {
        auto& group = s.kind == SwingKind::Top ? tops : bottoms;
        const auto before = group.members().size() >= 2 ? std::optional<Level>(group.level()) : std::nullopt;
        if (!group.add(s) && before) out.push_back(*before);
    }
    flush(tops);
    flush(bottoms);
    std::stable_sort(out.begin(), out.end(), [](const Level& a, const Level& b) {
        if (a.from_index != b.from_index) return a.from_index < b.from_index;
        return a.kind < b.kind;
    });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<MaPoint> moving_average(const Series& series, int n) {
    if (n < 1) throw std::invalid_argument("moving average window must be >= 1");
    std::vector<MaPoint> out;
    const auto len = static_cast<BarIndex>(series.size());
    if (n > len) return out;
    out.reserve(static_cast<std::size_t>(len - n + 1));
    for (BarIndex i = n - 1; i < len; ++i) {
        double sum = 0.0;
        for (BarIndex j = i - n + 1; j <= i; ++j) sum += series[j].close;
        out.push_back({i, sum / n});
    }
    return out;
}

Curve as_curve(std::span<const MaPoint> ma) {
    Curve c;
    if (ma.empty()) return c;
    c.first = ma.front().index;
    c.values.reserve(ma.size());
    for (const auto& p : ma) c.values.push_back(p.value);
    return c;
}

std::vector<MaSignal> ma_cross_signal(const Series& series, std::span<const MaPoint> ma, const BreakoutParams& params) {
    std::vector<MaSignal> out;
    if (ma.empty()) return out;
    const Boundary curve = as_curve(ma);
    const BarIndex n = static_cast<BarIndex>(series.size());
    for (const auto dir : {Direction::Up, Direction::Down}) {
        // A signal needs a fresh crossing: skip closes already on the signal side.
        auto skip_beyond = [&](BarIndex from) {
            while (from < n) {
                const auto b = boundary_value(curve, from);
                const double c = series[from].close;
                if (!b || (dir == Direction::Up ? !(c > *b) : !(c < *b))) break;
                ++from;
            }
            return from;
        };
        BarIndex from = skip_beyond(ma.front().index);
        while (from < n) {
            const auto br = detect_breakout(series, curve, from, dir, params);
            if (!br) break;
            out.push_back({br->confirm_index, dir == Direction::Up ? Signal::Buy : Signal::Sell});
            from = skip_beyond(br->confirm_index + 1);
        }
    }
    std::sort(out.begin(), out.end(), [](const MaSignal& a, const MaSignal& b) { return a.index < b.index; });
    return out;
}

}  // namespace chartpat
