#include "chartpat/report.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "chartpat/swings.hpp"

namespace chartpat {

namespace {

using nlohmann::json;

// Quotes a CSV field when it contains a separator or a quote.
std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt_stat(double x) { return fmt::format("{:.6f}", x); }

std::string_view yes_no(bool b) { return b ? "yes" : "no"; }

void write_text_table(std::ostream& out, std::string_view title, const std::vector<CountRow>& rows, bool with_share) {
    out << "\n== " << title << " ==\n";
    if (with_share) {
        out << fmt::format("{:<38}{:>7}{:>8}{:>10}{:>7}{:>8}{:>7}{:>8}\n", "PATTERN", "TOTAL", "%", "% accum.", "TRUE",
                           "%", "FALSE", "%");
    } else {
        out << fmt::format("{:<38}{:>7}{:>7}{:>8}{:>7}{:>8}\n", "KEY", "TOTAL", "TRUE", "%", "FALSE", "%");
    }
    for (const auto& r : rows) {
        if (with_share) {
            out << fmt::format("{:<38}{:>7}{:>8}{:>10}{:>7}{:>8}{:>7}{:>8}\n", r.key, r.total, r.pct_of_total.str(),
                               r.cum_pct ? r.cum_pct->str() : "", r.true_count, r.true_pct.str(), r.false_count,
                               r.false_pct.str());
        } else {
            out << fmt::format("{:<38}{:>7}{:>7}{:>8}{:>7}{:>8}\n", r.key, r.total, r.true_count, r.true_pct.str(),
                               r.false_count, r.false_pct.str());
        }
    }
}

void write_text_test(std::ostream& out, std::string_view label, const ChiSquareResult& t) {
    out << fmt::format("{:<38} statistic={} df={} alpha={} critical={} significant={}\n", label, fmt_stat(t.statistic),
                       t.degrees_of_freedom, t.alpha, fmt_stat(t.critical_value), yes_no(t.significant));
}

json test_json(const ChiSquareResult& t) {
    return {{"statistic", t.statistic},
            {"df", t.degrees_of_freedom},
            {"alpha", t.alpha},
            {"critical_value", t.critical_value},
            {"significant", t.significant}};
}

std::optional<ChiSquareResult> row_test(const CountRow& r, double alpha) {
    if (r.total == 0) return std::nullopt;
    return chi_square_true_false(r.true_count, r.false_count, alpha);
}

}  // namespace

void write_report_header(std::ostream& out, std::string_view command, const RunConfig& cfg) {
    out << kReportMagic << '\n';
    out << "# command: " << command << '\n';
    write_config(out, cfg, "#! ");
}

void write_scan_listing(std::ostream& out, const RunConfig& cfg, std::span<const ScanListing> listings) {
    write_report_header(out, "scan", cfg);
    switch (cfg.format) {
        case OutputFormat::Text:
            out << fmt::format("{:<16}{:<12}{:>7}  {:<30}{:<9}{:>7}  {}\n", "SECURITY", "CONFIRMED", "INDEX",
                               "PATTERN", "BIAS", "START", "TRIGGER");
            for (const auto& l : listings) {
                for (const auto& p : l.instances) {
                    out << fmt::format("{:<16}{:<12}{:>7}  {:<30}{:<9}{:>7}  {}\n", l.series->security_id,
                                       (*l.series)[p.confirm_index].date.str(), p.confirm_index, to_string(p.kind),
                                       to_string(p.bias), p.span_start, p.entry_trigger);
                }
            }
            break;
        case OutputFormat::Csv:
            out << "security_id,confirm_date,confirm_index,kind,bias,span_start,entry_trigger\n";
            for (const auto& l : listings) {
                for (const auto& p : l.instances) {
                    out << csv_field(l.series->security_id) << ',' << (*l.series)[p.confirm_index].date.str() << ','
                        << p.confirm_index << ',' << to_string(p.kind) << ',' << to_string(p.bias) << ','
                        << p.span_start << ',' << csv_field(p.entry_trigger) << '\n';
                }
            }
            break;
        case OutputFormat::Jsonl:
            for (const auto& l : listings) {
                for (const auto& p : l.instances) {
                    const json j = {{"security_id", l.series->security_id},
                                    {"confirm_date", (*l.series)[p.confirm_index].date.str()},
                                    {"confirm_index", p.confirm_index},
                                    {"kind", to_string(p.kind)},
                                    {"bias", to_string(p.bias)},
                                    {"span_start", p.span_start},
                                    {"entry_trigger", p.entry_trigger}};
                    out << j.dump() << '\n';
                }
            }
            break;
    }
}

BacktestSummary summarize(std::span<const Trade> trades, Count dropped, const RunConfig& cfg) {
    BacktestSummary s;
    s.dropped = dropped;
    s.instances = static_cast<Count>(trades.size()) + dropped;
    std::vector<Trade> counted;
    for (const auto& t : trades) {
        if (t.closed_by == ClosedBy::EndOfData) {
            ++s.end_of_data;
            if (!cfg.include_end_of_data) {
                ++s.excluded_end_of_data;
                continue;
            }
        }
        counted.push_back(t);
    }
    s.trades = static_cast<Count>(counted.size());
    s.by_pattern = aggregate_by_pattern(counted);
    s.top_four = aggregate_top_four(counted);
    s.by_security = aggregate_by_security(counted);

    const auto& total = s.by_pattern.back();
    const auto& four = s.top_four.back();
    // An empty table still gets a well-defined (non-significant) test.
    s.total_test = total.total > 0 ? chi_square_true_false(total.true_count, total.false_count, cfg.alpha)
                                   : ChiSquareResult{0.0, 1, cfg.alpha, chi_square_critical(1, cfg.alpha), false};
    s.top_four_test = four.total > 0 ? chi_square_true_false(four.true_count, four.false_count, cfg.alpha)
                                     : ChiSquareResult{0.0, 1, cfg.alpha, chi_square_critical(1, cfg.alpha), false};
    for (const auto& r : s.by_pattern) {
        if (r.is_total) continue;
        if (auto t = row_test(r, cfg.alpha)) s.per_pattern.push_back({r.key, *t});
    }
    return s;
}

void write_backtest_report(std::ostream& out, const RunConfig& cfg, const BacktestSummary& s) {
    write_report_header(out, "backtest", cfg);
    out << "# chi-square null: true and false equally likely (expected = total / 2 per cell), df = 1\n";
    out << "# instances: " << s.instances << ", traded: " << (s.instances - s.dropped) << ", dropped: " << s.dropped
        << ", end_of_data: " << s.end_of_data << ", excluded end_of_data: " << s.excluded_end_of_data
        << ", counted: " << s.trades << '\n';

    switch (cfg.format) {
        case OutputFormat::Text: {
            write_text_table(out, "Patterns", s.by_pattern, true);
            write_text_table(out, "Trendline patterns", s.top_four, false);
            write_text_table(out, "Securities", s.by_security, false);
            out << "\n== Chi-square ==\n";
            write_text_test(out, "TOTAL", s.total_test);
            write_text_test(out, "Trendline patterns", s.top_four_test);
            for (const auto& r : s.per_pattern) write_text_test(out, r.key, r.test);
            break;
        }
        case OutputFormat::Csv: {
            out << "section,key,total,pct_of_total,cum_pct,true_count,true_pct,false_count,false_pct,statistic,"
                   "critical_value,significant\n";
            auto rows = [&](std::string_view section, const std::vector<CountRow>& table) {
                for (const auto& r : table) {
                    out << section << ',' << csv_field(r.key) << ',' << r.total << ',' << r.pct_of_total.str() << ','
                        << (r.cum_pct ? r.cum_pct->str() : "") << ',' << r.true_count << ',' << r.true_pct.str()
                        << ',' << r.false_count << ',' << r.false_pct.str() << ',';
                    if (auto t = row_test(r, cfg.alpha)) {
                        out << fmt_stat(t->statistic) << ',' << fmt_stat(t->critical_value) << ','
                            << (t->significant ? "true" : "false");
                    } else {
                        out << ",,";
                    }
                    out << '\n';
                }
            };
            rows("by_pattern", s.by_pattern);
            rows("top_four", s.top_four);
            rows("by_security", s.by_security);
            break;
        }
        case OutputFormat::Jsonl: {
            auto rows = [&](std::string_view section, const std::vector<CountRow>& table) {
                for (const auto& r : table) {
                    json j = {{"section", section},
                              {"key", r.key},
                              {"total", r.total},
                              {"pct_of_total", r.pct_of_total.value()},
                              {"true_count", r.true_count},
                              {"true_pct", r.true_pct.value()},
                              {"false_count", r.false_count},
                              {"false_pct", r.false_pct.value()}};
                    j["cum_pct"] = r.cum_pct ? json(r.cum_pct->value()) : json(nullptr);
                    j["kind"] = r.kind ? json(to_string(*r.kind)) : json(nullptr);
                    const auto t = row_test(r, cfg.alpha);
                    j["chi_square"] = t ? test_json(*t) : json(nullptr);
                    out << j.dump() << '\n';
                }
            };
            rows("by_pattern", s.by_pattern);
            rows("top_four", s.top_four);
            rows("by_security", s.by_security);
            out << json{{"section", "chi_square"}, {"key", "TOTAL"}, {"chi_square", test_json(s.total_test)}}.dump()
                << '\n';
            out << json{{"section", "chi_square"},
                        {"key", "Trendline patterns"},
                        {"chi_square", test_json(s.top_four_test)}}
                       .dump()
                << '\n';
            break;
        }
    }
}

void write_trades_csv(std::ostream& out, std::span<const Trade> trades) {
    out << kTradesCsvHeader << '\n';
    for (const auto& t : trades) {
        out << csv_field(t.security_id) << ',' << to_string(t.pattern.kind) << ',' << to_string(t.pattern.bias) << ','
            << to_string(t.side) << ',' << t.pattern.span_start << ',' << t.pattern.confirm_index << ','
            << t.entry_index << ',' << t.entry_date.str() << ',' << format_price(t.entry_price) << ',' << t.exit_index
            << ',' << t.exit_date.str() << ',' << format_price(t.exit_price) << ',' << to_string(t.closed_by) << ','
            << (t.verdict ? "true" : "false") << '\n';
    }
}

void write_plot_data(std::ostream& out, const Series& series, std::span<const PatternInstance> instances,
                     const RunConfig& cfg) {
    const auto short_ma = moving_average(series, cfg.ma_short);
    const auto long_ma = moving_average(series, cfg.ma_long);
    const Curve short_curve = as_curve(short_ma);
    const Curve long_curve = as_curve(long_ma);

    std::map<BarIndex, std::string_view> swing_at;
    for (const auto& s : detect_swings(series, cfg.pattern.swing_k)) swing_at[s.index] = to_string(s.kind);
    std::map<BarIndex, std::string> kinds_at;
    for (const auto& p : instances) {
        auto& k = kinds_at[p.confirm_index];
        if (!k.empty()) k += ';';
        k += to_string(p.kind);
    }

    auto opt_price = [](std::optional<double> v) { return v ? format_price(*v) : std::string(); };
    for (BarIndex i = 0; i < static_cast<BarIndex>(series.size()); ++i) {
        const auto& b = series[i];
        const auto sw = swing_at.find(i);
        const auto ks = kinds_at.find(i);
        out << csv_field(series.security_id) << ',' << i << ',' << b.date.str() << ',' << format_price(b.open) << ','
            << format_price(b.high) << ',' << format_price(b.low) << ',' << format_price(b.close) << ','
            << opt_price(short_curve.value_at(i)) << ',' << opt_price(long_curve.value_at(i)) << ','
            << (sw != swing_at.end() ? sw->second : "") << ',' << (ks != kinds_at.end() ? ks->second : "") << '\n';
    }
}

}  // namespace chartpat
