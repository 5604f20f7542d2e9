#include "chartpat/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace chartpat {

namespace {

constexpr BarIndex kFanMinSeparation = 4;

struct KindInfo {
    std::string_view id;
    std::string_view label;
    Bias bias;
};

constexpr std::array<KindInfo, kPatternKindCount> kKindInfo = {{
    {"UpTrendline", "Up Trendline", Bias::Bullish},
    {"BreakingDownTrendline", "Breaking of a Downtrendline", Bias::Bullish},
    {"BreakingUpTrendline", "Breaking of an Up Trendline", Bias::Bearish},
    {"DownTrendline", "Down Trendline", Bias::Bearish},
    {"BreakingHorizontalResistance", "Breaking of a Horizontal Resistance", Bias::Bullish},
    {"DoubleBottom", "Double Bottom", Bias::Bullish},
    {"BreakingHorizontalSupport", "Breaking of a Horizontal Support", Bias::Bearish},
    {"DoubleTop", "Double Top", Bias::Bearish},
    {"UpFlag", "Up Flag", Bias::Bullish},
    {"DownFanPrinciple", "Down Fan Principle", Bias::Bearish},
    {"Channel", "Channel", Bias::Bullish},
    {"DownHeadShoulders", "Down Head & Shoulder", Bias::Bearish},
    {"HighFanPrinciple", "High Fan Principle", Bias::Bullish},
    {"UpSymmetricalTriangle", "Up Symmetrical Triangle", Bias::Bullish},
    {"Rectangle", "Rectangle", Bias::Bullish},
    {"UpHeadShoulders", "Up Head & Shoulders", Bias::Bullish},
    {"DownFlag", "Down Flag", Bias::Bearish},
    {"UpPennant", "Up Pennant", Bias::Bullish},
    {"DownPennant", "Down Pennant", Bias::Bearish},
    {"DownSymmetricalTriangle", "Down Symmetrical Triangle", Bias::Bearish},
}};

// Confirm time of the event after j, i.e. when the as-of list next changes.
std::vector<BarIndex> next_event_times(std::span<const SwingEvent> history) {
    std::vector<BarIndex> out(history.size(), kNoLimit);
    for (std::size_t j = 0; j + 1 < history.size(); ++j) out[j] = history[j + 1].point.confirm_index;
    return out;
}

std::optional<Breakout> watch(const Series& series, const Boundary& boundary, BarIndex from, BarIndex stop,
                              Direction dir, const PatternConfig& cfg) {
    if (from < 0 || from >= static_cast<BarIndex>(series.size()) || from >= stop) return std::nullopt;
    return detect_breakout(series, boundary, from, dir, cfg.breakout, stop);
}

std::string describe(const Breakout& b) {
    return fmt::format("{} breakout ({}, cross {}, confirm {})", to_string(b.direction), to_string(b.rule),
                       b.cross_index, b.confirm_index);
}

PatternInstance make(PatternKind kind, BarIndex span_start, BarIndex confirm, std::string trigger, Boundary inval,
                     Direction adverse) {
    return {kind, bias_of(kind), span_start, confirm, std::move(trigger), std::move(inval), adverse};
}

Anchor anchor_of(const SwingPoint& s) { return {s.index, s.price}; }

// Breakout specificity for same-bar dominance; 0 = not breakout-confirmed.
int tier(PatternKind k) {
    switch (k) {
        case PatternKind::UpTrendline:
        case PatternKind::DownTrendline: return 0;
        case PatternKind::BreakingDownTrendline:
        case PatternKind::BreakingUpTrendline: return 1;
        case PatternKind::BreakingHorizontalResistance:
        case PatternKind::BreakingHorizontalSupport: return 2;
        case PatternKind::DoubleBottom:
        case PatternKind::DoubleTop: return 3;
        case PatternKind::Rectangle:
        case PatternKind::Channel: return 4;
        case PatternKind::UpFlag:
        case PatternKind::DownFlag:
        case PatternKind::UpPennant:
        case PatternKind::DownPennant:
        case PatternKind::UpSymmetricalTriangle:
        case PatternKind::DownSymmetricalTriangle: return 5;
        case PatternKind::HighFanPrinciple:
        case PatternKind::DownFanPrinciple:
        case PatternKind::DownHeadShoulders:
        case PatternKind::UpHeadShoulders: return 6;
    }
    return 0;
}

struct LevelVersion {
    BarIndex from = 0;
    BarIndex until = kNoLimit;
    std::optional<Level> level;
};

std::pair<BarIndex, BarIndex> touch_range(const Level& l) {
    const auto [lo, hi] = std::minmax_element(l.formed_by.begin(), l.formed_by.end());
    return {*lo, *hi};
}

}  // namespace

std::string_view to_string(PatternKind k) noexcept { return kKindInfo[static_cast<std::size_t>(k)].id; }

std::string_view display_name(PatternKind k) noexcept { return kKindInfo[static_cast<std::size_t>(k)].label; }

std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept {
    for (const auto k : kAllPatternKinds) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Bias b) noexcept { return b == Bias::Bullish ? "bullish" : "bearish"; }

Bias bias_of(PatternKind k) noexcept { return kKindInfo[static_cast<std::size_t>(k)].bias; }

std::vector<PatternInstance> recognize_trendline_patterns(const Series& series, std::span<const SwingEvent> history,
                                                          const PatternConfig& cfg) {
    std::vector<PatternInstance> out;
    for (const auto& t : fit_trendlines(series, history)) {
        const bool up = t.direction == Direction::Up;
        const auto line = t.line();
        out.push_back(make(up ? PatternKind::UpTrendline : PatternKind::DownTrendline, t.anchor1.index,
                           t.confirm_index,
                           fmt::format("{} trendline through {} and {} established", to_string(t.direction),
                                       t.anchor1.index, t.anchor2.index),
                           line, reverse(t.direction)));
        if (auto b = watch(series, line, t.confirm_index, kNoLimit, reverse(t.direction), cfg)) {
            out.push_back(make(up ? PatternKind::BreakingUpTrendline : PatternKind::BreakingDownTrendline,
                               t.anchor1.index, b->confirm_index,
                               fmt::format("{} of {} trendline", describe(*b), to_string(t.direction)), line,
                               t.direction));
        }
    }
    return out;
}

std::vector<PatternInstance> recognize_level_patterns(const Series& series, std::span<const SwingEvent> history,
                                                      const PatternConfig& cfg) {
    TouchGroup tops(SwingKind::Top, cfg.level_tolerance);
    TouchGroup bottoms(SwingKind::Bottom, cfg.level_tolerance);
    std::vector<LevelVersion> resistances;
    std::vector<LevelVersion> supports;

    for (const auto& e : history) {
        const bool top = e.point.kind == SwingKind::Top;
        auto& group = top ? tops : bottoms;
        auto& versions = top ? resistances : supports;
        if (e.replaces_tail) {
            group.replace_last(e.point);
        } else {
            group.add(e.point);
        }
        if (!versions.empty()) versions.back().until = e.point.confirm_index;
        LevelVersion v;
        v.from = e.point.confirm_index;
        if (group.members().size() >= 2) v.level = group.level();
        versions.push_back(std::move(v));
    }

    auto active_at = [](const std::vector<LevelVersion>& versions, BarIndex bar) -> const Level* {
        for (auto it = versions.rbegin(); it != versions.rend(); ++it) {
            if (it->from > bar) continue;
            return bar < it->until && it->level ? &*it->level : nullptr;
        }
        return nullptr;
    };

    std::vector<PatternInstance> out;
    for (const auto& v : resistances) {
        if (!v.level) continue;
        const auto& res = *v.level;
        const auto b = watch(series, HorizontalLevel{res.price}, v.from, v.until, Direction::Up, cfg);
        if (!b) continue;
        const Level* sup = active_at(supports, b->confirm_index);
        bool rectangle = false;
        if (sup && sup->price < res.price) {
            const auto [rlo, rhi] = touch_range(res);
            const auto [slo, shi] = touch_range(*sup);
            rectangle = rlo <= shi && slo <= rhi;
        }
        if (rectangle) {
            out.push_back(make(PatternKind::Rectangle, std::min(res.from_index, sup->from_index), b->confirm_index,
                               fmt::format("{} of resistance {} over support {}", describe(*b),
                                           format_price(res.price), format_price(sup->price)),
                               HorizontalLevel{res.price}, Direction::Down));
        } else {
            out.push_back(make(PatternKind::BreakingHorizontalResistance, res.from_index, b->confirm_index,
                               fmt::format("{} of resistance {}", describe(*b), format_price(res.price)),
                               HorizontalLevel{res.price}, Direction::Down));
        }
    }
    for (const auto& v : supports) {
        if (!v.level) continue;
        const auto& sup = *v.level;
        const auto b = watch(series, HorizontalLevel{sup.price}, v.from, v.until, Direction::Down, cfg);
        if (!b) continue;
        out.push_back(make(PatternKind::BreakingHorizontalSupport, sup.from_index, b->confirm_index,
                           fmt::format("{} of support {}", describe(*b), format_price(sup.price)),
                           HorizontalLevel{sup.price}, Direction::Up));
    }
    return out;
}

std::vector<PatternInstance> recognize_double_patterns(const Series& series, std::span<const SwingEvent> history,
                                                       const PatternConfig& cfg) {
    std::vector<PatternInstance> out;
    const auto next = next_event_times(history);
    std::vector<SwingPoint> as_of;
    for (std::size_t j = 0; j < history.size(); ++j) {
        apply(as_of, history[j]);
        if (as_of.size() < 3) continue;
        const auto& first = as_of[as_of.size() - 3];
        const auto& neck = as_of[as_of.size() - 2];
        const auto& second = as_of.back();
        if (std::abs(first.price - second.price) / std::min(first.price, second.price) > cfg.double_tolerance) {
            continue;
        }
        const bool bottom = second.kind == SwingKind::Bottom;
        const Direction dir = bottom ? Direction::Up : Direction::Down;
        const auto b = watch(series, HorizontalLevel{neck.price}, second.confirm_index, next[j], dir, cfg);
        if (!b) continue;
        out.push_back(make(bottom ? PatternKind::DoubleBottom : PatternKind::DoubleTop, first.index,
                           b->confirm_index,
                           fmt::format("{} of neckline {} after {}s at {} and {}", describe(*b),
                                       format_price(neck.price), to_string(second.kind), first.index, second.index),
                           HorizontalLevel{neck.price}, reverse(dir)));
    }
    return out;
}

std::vector<PatternInstance> recognize_head_shoulders(const Series& series, std::span<const SwingEvent> history,
                                                      const PatternConfig& cfg) {
    std::vector<PatternInstance> out;
    const auto next = next_event_times(history);
    std::vector<SwingPoint> as_of;
    for (std::size_t j = 0; j < history.size(); ++j) {
        apply(as_of, history[j]);
        if (as_of.size() < 5) continue;
        const auto w = std::span(as_of).last(5);
        const auto& left = w[0];
        const auto& head = w[2];
        const auto& right = w[4];
        const bool tops = right.kind == SwingKind::Top;

        const double hi = std::max(left.price, right.price);
        const double lo = std::min(left.price, right.price);
        if ((hi - lo) / hi > cfg.hs_shoulder_tolerance) continue;
        if (tops ? head.price < (1.0 + cfg.hs_head_margin) * hi : head.price > (1.0 - cfg.hs_head_margin) * lo) {
            continue;
        }
        const Line neckline = Line::through(anchor_of(w[1]), anchor_of(w[3]));
        const Direction dir = tops ? Direction::Down : Direction::Up;
        const auto b = watch(series, neckline, right.confirm_index, next[j], dir, cfg);
        if (!b) continue;
        out.push_back(make(tops ? PatternKind::DownHeadShoulders : PatternKind::UpHeadShoulders, left.index,
                           b->confirm_index,
                           fmt::format("{} of neckline through {} and {}", describe(*b), w[1].index, w[3].index),
                           neckline, reverse(dir)));
    }
    return out;
}

std::vector<PatternInstance> recognize_consolidations(const Series& series, std::span<const SwingEvent> history,
                                                      const PatternConfig& cfg) {
    std::vector<PatternInstance> out;
    const auto next = next_event_times(history);
    std::vector<SwingPoint> as_of;
    for (std::size_t j = 0; j < history.size(); ++j) {
        apply(as_of, history[j]);
        if (as_of.size() < 4) continue;
        const auto w = std::span(as_of).last(4);
        const bool top_first = w[0].kind == SwingKind::Top;
        const auto& t1 = top_first ? w[0] : w[1];
        const auto& t2 = top_first ? w[2] : w[3];
        const auto& b1 = top_first ? w[1] : w[0];
        const auto& b2 = top_first ? w[3] : w[2];
        const Line upper = Line::through(anchor_of(t1), anchor_of(t2));
        const Line lower = Line::through(anchor_of(b1), anchor_of(b2));
        const double su = upper.slope;
        const double sl = lower.slope;

        const BarIndex last = w[3].index;
        if (!(*upper.value_at(last) > *lower.value_at(last))) continue;

        const bool converging = su < 0.0 && sl > 0.0;
        const bool parallel = su * sl > 0.0 &&
                              std::abs(su - sl) <= cfg.channel_slope_tolerance * std::max(std::abs(su), std::abs(sl));
        if (!converging && !parallel) continue;

        BarIndex stop = next[j];
        if (converging) {
            const double apex = (upper.origin_price - su * static_cast<double>(upper.origin) - lower.origin_price +
                                 sl * static_cast<double>(lower.origin)) /
                                (sl - su);
            stop = std::min(stop, static_cast<BarIndex>(std::ceil(apex)));
        }
        const BarIndex from = w[3].confirm_index;
        const auto up = watch(series, upper, from, stop, Direction::Up, cfg);
        const auto down = watch(series, lower, from, stop, Direction::Down, cfg);
        if (!up && !down) continue;
        const bool upward = up && (!down || up->confirm_index <= down->confirm_index);
        const Breakout& b = upward ? *up : *down;

        const BarIndex w0 = w[0].index;
        const bool short_form = last - w0 <= cfg.flag_max_bars;
        const BarIndex pre = std::max<BarIndex>(0, w0 - cfg.flag_move_bars);
        double pre_low = std::numeric_limits<double>::infinity();
        double pre_high = 0.0;
        for (BarIndex i = pre; i <= w0; ++i) {
            pre_low = std::min(pre_low, series[i].low);
            pre_high = std::max(pre_high, series[i].high);
        }
        const bool rise_before = std::max(t1.price, t2.price) / pre_low - 1.0 >= cfg.flag_min_move;
        const bool fall_before = 1.0 - std::min(b1.price, b2.price) / pre_high >= cfg.flag_min_move;

        std::optional<PatternKind> kind;
        if (converging) {
            if (upward) {
                kind = short_form && rise_before ? PatternKind::UpPennant : PatternKind::UpSymmetricalTriangle;
            } else {
                kind = short_form && fall_before ? PatternKind::DownPennant : PatternKind::DownSymmetricalTriangle;
            }
        } else if (upward) {
            kind = su < 0.0 && short_form && rise_before ? PatternKind::UpFlag : PatternKind::Channel;
        } else if (su > 0.0 && short_form && fall_before) {
            kind = PatternKind::DownFlag;
        }
        if (!kind) continue;

        const Line& broken = upward ? upper : lower;
        out.push_back(make(*kind, w0, b.confirm_index,
                           fmt::format("{} of {} boundary ({} formation {}..{})", describe(b),
                                       upward ? "upper" : "lower", converging ? "converging" : "parallel", w0, last),
                           broken, reverse(b.direction)));
    }
    return out;
}

std::vector<PatternInstance> recognize_fan_principle(const Series& series, std::span<const SwingEvent> history,
                                                     const PatternConfig& cfg) {
    std::vector<PatternInstance> out;
    for (std::size_t j0 = 0; j0 < history.size(); ++j0) {
        const SwingPoint origin = history[j0].point;
        const bool top = origin.kind == SwingKind::Top;
        // Tops fan down lines broken upward; bottoms fan up lines broken downward.
        const Direction breach = top ? Direction::Up : Direction::Down;
        auto inside = [&](double price) { return top ? price < origin.price : price > origin.price; };
        auto flatter = [&](double slope, double prev) { return top ? slope > prev : slope < prev; };

        // The fan dies once the origin is superseded or exceeded.
        BarIndex abort = kNoLimit;
        for (std::size_t j = j0 + 1; j < history.size(); ++j) {
            const auto& p = history[j].point;
            if (p.kind == origin.kind && !inside(p.price)) {
                abort = p.confirm_index;
                break;
            }
        }

        std::vector<BarIndex> fan_indices;
        std::optional<Line> line;
        std::optional<Breakout> last_break;
        double prev_slope = top ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
        BarIndex min_index = origin.index + kFanMinSeparation;
        for (std::size_t j = j0 + 1; j < history.size() && fan_indices.size() < 3; ++j) {
            const auto& p = history[j].point;
            if (p.confirm_index >= abort) break;
            if (p.kind != origin.kind || p.index < min_index || !inside(p.price)) continue;
            const Line candidate = Line::through(anchor_of(origin), anchor_of(p));
            if (!flatter(candidate.slope, prev_slope)) continue;

            BarIndex from = p.confirm_index;
            if (last_break) from = std::max(from, last_break->confirm_index + 1);
            const auto b = watch(series, candidate, from, abort, breach, cfg);
            if (!b) break;
            fan_indices.push_back(p.index);
            line = candidate;
            last_break = b;
            prev_slope = candidate.slope;
            min_index = std::max(min_index, b->cross_index);
        }
        if (fan_indices.size() < 3) continue;
        out.push_back(make(top ? PatternKind::HighFanPrinciple : PatternKind::DownFanPrinciple, origin.index,
                           last_break->confirm_index,
                           fmt::format("{} of third fan line from {} {} through {}, {}, {}", describe(*last_break),
                                       to_string(origin.kind), origin.index, fan_indices[0], fan_indices[1],
                                       fan_indices[2]),
                           *line, reverse(breach)));
    }
    return out;
}

double span_overlap(const PatternInstance& a, const PatternInstance& b) noexcept {
    const BarIndex inter = std::min(a.confirm_index, b.confirm_index) - std::max(a.span_start, b.span_start) + 1;
    if (inter <= 0) return 0.0;
    const BarIndex shorter =
        std::min(a.confirm_index - a.span_start + 1, b.confirm_index - b.span_start + 1);
    return static_cast<double>(inter) / static_cast<double>(shorter);
}

std::vector<PatternInstance> scan(const Series& series, const PatternConfig& cfg) {
    const auto history = swing_history(series, cfg.swing_k);

    std::vector<PatternInstance> all;
    for (auto* recognizer : {&recognize_trendline_patterns, &recognize_level_patterns, &recognize_double_patterns,
                             &recognize_head_shoulders, &recognize_consolidations, &recognize_fan_principle}) {
        auto found = recognizer(series, history, cfg);
        std::move(found.begin(), found.end(), std::back_inserter(all));
    }
    std::stable_sort(all.begin(), all.end(), [](const PatternInstance& a, const PatternInstance& b) {
        if (a.confirm_index != b.confirm_index) return a.confirm_index < b.confirm_index;
        if (a.kind != b.kind) return kind_order(a.kind) < kind_order(b.kind);
        return a.span_start < b.span_start;
    });

    // Same-bar dominance: spans sharing a confirm bar always overlap.
    std::vector<PatternInstance> dominant;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t end = i;
        while (end < all.size() && all[end].confirm_index == all[i].confirm_index) ++end;
        int best[2] = {0, 0};
        for (std::size_t m = i; m < end; ++m) {
            auto& b = best[static_cast<int>(all[m].bias)];
            b = std::max(b, tier(all[m].kind));
        }
        for (std::size_t m = i; m < end; ++m) {
            const int t = tier(all[m].kind);
            if (t == 0 || t == best[static_cast<int>(all[m].bias)]) dominant.push_back(std::move(all[m]));
        }
        i = end;
    }

    std::vector<PatternInstance> kept;
    for (auto& inst : dominant) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const PatternInstance& k) {
            return k.kind == inst.kind && span_overlap(k, inst) > cfg.duplicate_overlap;
        });
        if (!duplicate) kept.push_back(std::move(inst));
    }
    return kept;
}

}  // namespace chartpat
