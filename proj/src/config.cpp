#include "chartpat/config.hpp"

#include <cerrno>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

namespace chartpat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ConfigError(fmt::format("invalid value '{}' for {} (expected {})", value, key, expected));
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "a number");
    return out;
}

double to_fraction(std::string_view key, std::string_view v) {
    const double x = to_double(key, v);
    if (!(x >= 0.0 && x < 1.0)) bad_value(key, v, "a fraction in [0, 1)");
    return x;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v, Int min) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || out < min) {
        bad_value(key, v, fmt::format("an integer >= {}", min));
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    bad_value(key, v, "true or false");
}

std::optional<Date> to_date(std::string_view key, std::string_view v) {
    if (v.empty()) return std::nullopt;
    auto d = Date::try_parse(v);
    if (!d) bad_value(key, v, "YYYY-MM-DD");
    return d;
}

std::string fmt_double(double x) { return fmt::format("{}", x); }

struct KeySpec {
    std::string_view key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::vector<std::string>(const RunConfig&)> get;
};

std::vector<std::string> one(std::string s) { return {std::move(s)}; }

const std::vector<KeySpec>& specs() {
    static const std::vector<KeySpec> table = {
        {"swing_k", [](RunConfig& c, std::string_view v) { c.pattern.swing_k = to_int<int>("swing_k", v, 1); },
         [](const RunConfig& c) { return one(std::to_string(c.pattern.swing_k)); }},
        {"breakout_pct",
         [](RunConfig& c, std::string_view v) {
             c.pattern.breakout.pct = c.backtest.breakout.pct = to_fraction("breakout_pct", v);
         },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.breakout.pct)); }},
        {"breakout_window",
         [](RunConfig& c, std::string_view v) {
             c.pattern.breakout.window = c.backtest.breakout.window = to_int<int>("breakout_window", v, 1);
         },
         [](const RunConfig& c) { return one(std::to_string(c.pattern.breakout.window)); }},
        {"three_bar_rule",
         [](RunConfig& c, std::string_view v) {
             ThreeBarMode m;
             if (v == "receding") {
                 m = ThreeBarMode::Receding;
             } else if (v == "beyond") {
                 m = ThreeBarMode::Beyond;
             } else {
                 bad_value("three_bar_rule", v, "receding or beyond");
             }
             c.pattern.breakout.three_bar = c.backtest.breakout.three_bar = m;
         },
         [](const RunConfig& c) {
             return one(c.pattern.breakout.three_bar == ThreeBarMode::Receding ? "receding" : "beyond");
         }},
        {"level_tolerance",
         [](RunConfig& c, std::string_view v) { c.pattern.level_tolerance = to_fraction("level_tolerance", v); },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.level_tolerance)); }},
        {"double_tolerance",
         [](RunConfig& c, std::string_view v) { c.pattern.double_tolerance = to_fraction("double_tolerance", v); },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.double_tolerance)); }},
        {"channel_slope_tolerance",
         [](RunConfig& c, std::string_view v) {
             c.pattern.channel_slope_tolerance = to_fraction("channel_slope_tolerance", v);
         },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.channel_slope_tolerance)); }},
        {"hs_head_margin",
         [](RunConfig& c, std::string_view v) { c.pattern.hs_head_margin = to_fraction("hs_head_margin", v); },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.hs_head_margin)); }},
        {"hs_shoulder_tolerance",
         [](RunConfig& c, std::string_view v) {
             c.pattern.hs_shoulder_tolerance = to_fraction("hs_shoulder_tolerance", v);
         },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.hs_shoulder_tolerance)); }},
        {"flag_max_bars",
         [](RunConfig& c, std::string_view v) { c.pattern.flag_max_bars = to_int<int>("flag_max_bars", v, 1); },
         [](const RunConfig& c) { return one(std::to_string(c.pattern.flag_max_bars)); }},
        {"flag_min_move",
         [](RunConfig& c, std::string_view v) { c.pattern.flag_min_move = to_fraction("flag_min_move", v); },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.flag_min_move)); }},
        {"flag_move_bars",
         [](RunConfig& c, std::string_view v) { c.pattern.flag_move_bars = to_int<int>("flag_move_bars", v, 1); },
         [](const RunConfig& c) { return one(std::to_string(c.pattern.flag_move_bars)); }},
        {"duplicate_overlap",
         [](RunConfig& c, std::string_view v) {
             const double x = to_double("duplicate_overlap", v);
             if (!(x >= 0.0 && x <= 1.0)) bad_value("duplicate_overlap", v, "a fraction in [0, 1]");
             c.pattern.duplicate_overlap = x;
         },
         [](const RunConfig& c) { return one(fmt_double(c.pattern.duplicate_overlap)); }},
        {"entry_price",
         [](RunConfig& c, std::string_view v) {
             if (v == "open") {
                 c.backtest.fill = PriceField::Open;
             } else if (v == "close") {
                 c.backtest.fill = PriceField::Close;
             } else {
                 bad_value("entry_price", v, "open or close");
             }
         },
         [](const RunConfig& c) { return one(std::string(to_string(c.backtest.fill))); }},
        {"include_end_of_data",
         [](RunConfig& c, std::string_view v) { c.include_end_of_data = to_bool("include_end_of_data", v); },
         [](const RunConfig& c) { return one(c.include_end_of_data ? "true" : "false"); }},
        {"position_mode",
         [](RunConfig& c, std::string_view v) {
             if (v == "independent") {
                 c.backtest.mode = PositionMode::Independent;
             } else if (v == "sequential") {
                 c.backtest.mode = PositionMode::Sequential;
             } else {
                 bad_value("position_mode", v, "independent or sequential");
             }
         },
         [](const RunConfig& c) { return one(std::string(to_string(c.backtest.mode))); }},
        {"alpha",
         [](RunConfig& c, std::string_view v) {
             const double a = to_double("alpha", v);
             if (!(a > 0.0 && a < 1.0)) bad_value("alpha", v, "a fraction in (0, 1)");
             c.alpha = a;
         },
         [](const RunConfig& c) { return one(fmt_double(c.alpha)); }},
        {"ma_short", [](RunConfig& c, std::string_view v) { c.ma_short = to_int<int>("ma_short", v, 1); },
         [](const RunConfig& c) { return one(std::to_string(c.ma_short)); }},
        {"ma_long", [](RunConfig& c, std::string_view v) { c.ma_long = to_int<int>("ma_long", v, 1); },
         [](const RunConfig& c) { return one(std::to_string(c.ma_long)); }},
        {"format",
         [](RunConfig& c, std::string_view v) {
             if (v == "text") {
                 c.format = OutputFormat::Text;
             } else if (v == "csv") {
                 c.format = OutputFormat::Csv;
             } else if (v == "jsonl") {
                 c.format = OutputFormat::Jsonl;
             } else {
                 bad_value("format", v, "text, csv or jsonl");
             }
         },
         [](const RunConfig& c) { return one(std::string(to_string(c.format))); }},
        {"from", [](RunConfig& c, std::string_view v) { c.from = to_date("from", v); },
         [](const RunConfig& c) { return one(c.from ? c.from->str() : ""); }},
        {"to", [](RunConfig& c, std::string_view v) { c.to = to_date("to", v); },
         [](const RunConfig& c) { return one(c.to ? c.to->str() : ""); }},
        {"seed", [](RunConfig& c, std::string_view v) { c.seed = to_int<std::uint64_t>("seed", v, 0); },
         [](const RunConfig& c) { return one(std::to_string(c.seed)); }},
        {"input",
         [](RunConfig& c, std::string_view v) {
             if (v.empty()) bad_value("input", v, "a path");
             c.inputs.emplace_back(v);
         },
         [](const RunConfig& c) { return c.inputs; }},
        {"security_id",
         [](RunConfig& c, std::string_view v) {
             const auto eq = v.rfind('=');
             if (eq == std::string_view::npos || eq == 0 || eq + 1 == v.size()) bad_value("security_id", v, "PATH=ID");
             c.security_ids.emplace_back(std::string(v.substr(0, eq)), std::string(v.substr(eq + 1)));
         },
         [](const RunConfig& c) {
             std::vector<std::string> out;
             for (const auto& [path, id] : c.security_ids) out.push_back(path + "=" + id);
             return out;
         }},
    };
    return table;
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Jsonl: return "jsonl";
    }
    return "?";
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> out;
        for (const auto& s : specs()) out.push_back(s.key);
        return out;
    }();
    return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
    for (const auto& s : specs()) {
        if (s.key == key) {
            s.set(cfg, trim(value));
            return;
        }
    }
    throw ConfigError(fmt::format("unknown config key '{}'", key));
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : specs()) {
        for (auto& v : s.get(cfg)) out.emplace_back(std::string(s.key), std::move(v));
    }
    return out;
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool report = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line_no == 1 && line == kReportMagic) {
            report = true;
            continue;
        }
        if (report) {
            if (line.substr(0, 2) != "#!") continue;
            line = trim(line.substr(2));
        } else if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        try {
            set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("config line {}: {}", line_no, e.what()));
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
}

void write_config(std::ostream& out, const RunConfig& cfg, std::string_view prefix) {
    for (const auto& [k, v] : config_entries(cfg)) {
        out << prefix << k << " =";
        if (!v.empty()) out << ' ' << v;
        out << '\n';
    }
}

std::string security_id_for(const RunConfig& cfg, const std::string& path) {
    for (const auto& [p, id] : cfg.security_ids) {
        if (p == path) return id;
    }
    return std::filesystem::path(path).stem().string();
}

}  // namespace chartpat
