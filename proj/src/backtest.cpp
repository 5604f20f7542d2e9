#include "chartpat/backtest.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace chartpat {

std::string_view to_string(Side s) noexcept { return s == Side::Long ? "long" : "short"; }

std::string_view to_string(ClosedBy c) noexcept {
    return c == ClosedBy::Invalidation ? "invalidation" : "end_of_data";
}

std::string_view to_string(PriceField f) noexcept { return f == PriceField::Open ? "open" : "close"; }

std::string_view to_string(PositionMode m) noexcept {
    return m == PositionMode::Independent ? "independent" : "sequential";
}

bool trade_verdict(Side side, double entry_price, double exit_price) noexcept {
    return side == Side::Long ? exit_price > entry_price : exit_price < entry_price;
}

BacktestResult run_backtest(const Series& series, std::span<const PatternInstance> instances,
                            const BacktestConfig& cfg) {
    const auto n = static_cast<BarIndex>(series.size());
    auto fill_price = [&](BarIndex i) { return cfg.fill == PriceField::Open ? series[i].open : series[i].close; };

    BacktestResult result;
    BarIndex busy_until = -1;  // exit bar of the open position in sequential mode
    for (const auto& inst : instances) {
        if (inst.confirm_index < 0 || inst.confirm_index >= n || inst.span_start > inst.confirm_index) {
            throw std::invalid_argument(fmt::format("inconsistent inputs: {} confirmed at {} on a series of {} bars",
                                                    to_string(inst.kind), inst.confirm_index, n));
        }
        if (inst.confirm_index == n - 1) {
            result.dropped.push_back({inst, "confirmed on the last bar; no bar to enter"});
            continue;
        }
        const BarIndex entry = inst.confirm_index + 1;
        if (cfg.mode == PositionMode::Sequential && entry < busy_until) {
            result.dropped.push_back({inst, fmt::format("position open until bar {}", busy_until)});
            continue;
        }

        Trade t;
        t.security_id = series.security_id;
        t.pattern = inst;
        t.side = inst.bias == Bias::Bullish ? Side::Long : Side::Short;
        t.entry_index = entry;
        t.entry_price = fill_price(entry);

        const auto exit_signal = detect_breakout(series, inst.invalidation, entry, inst.adverse, cfg.breakout);
        if (exit_signal && exit_signal->confirm_index + 1 < n) {
            t.exit_index = exit_signal->confirm_index + 1;
            t.exit_price = fill_price(t.exit_index);
            t.closed_by = ClosedBy::Invalidation;
        } else {
            t.exit_index = n - 1;
            t.exit_price = series[n - 1].close;
            t.closed_by = ClosedBy::EndOfData;
        }
        t.entry_date = series[t.entry_index].date;
        t.exit_date = series[t.exit_index].date;
        t.verdict = trade_verdict(t.side, t.entry_price, t.exit_price);
        busy_until = t.exit_index;
        result.trades.push_back(std::move(t));
    }
    return result;
}

}  // namespace chartpat
