#include <iostream>
#include <map>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "chartpat/commands.hpp"
#include "chartpat/config.hpp"

namespace {

using namespace chartpat;

struct RunFlags {
    std::string config_file;
    std::vector<std::string> inputs;
    std::vector<std::string> security_ids;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
};

// One --flag per scalar config key, e.g. swing_k -> --swing-k.
void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--config", flags.config_file, "key = value config file, or a previous report");
    cmd->add_option("inputs", flags.inputs, "bar CSV files");
    cmd->add_option("--security-id", flags.security_ids, "PATH=ID override of a file's security id");
    for (const auto key : config_keys()) {
        if (key == "input" || key == "security_id") continue;
        std::string name(key);
        std::replace(name.begin(), name.end(), '_', '-');
        flags.options[std::string(key)] = cmd->add_option("--" + name, flags.values[std::string(key)]);
    }
}

RunConfig resolve(const RunFlags& flags) {
    RunConfig cfg;
    if (!flags.config_file.empty()) apply_config_file(cfg, flags.config_file);
    for (const auto& [key, opt] : flags.options) {
        if (opt->count() > 0) set_config_value(cfg, key, flags.values.at(key));
    }
    if (!flags.inputs.empty()) cfg.inputs = flags.inputs;
    for (const auto& s : flags.security_ids) set_config_value(cfg, "security_id", s);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chart pattern detection and backtesting"};
    app.require_subcommand(1);

    std::vector<std::string> validate_paths;
    auto* validate = app.add_subcommand("validate", "check bar files");
    validate->add_option("files", validate_paths)->required();

    RunFlags scan_flags;
    ScanOptions scan_opts;
    std::string plot_path;
    auto* scan = app.add_subcommand("scan", "list detected patterns");
    add_run_flags(scan, scan_flags);
    scan->add_option("--jobs", scan_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* plot_opt = scan->add_option("--plot-data", plot_path, "write per-bar CSV for plotting");

    RunFlags bt_flags;
    BacktestOptions bt_opts;
    std::string trades_path;
    auto* backtest = app.add_subcommand("backtest", "trade every pattern and report the tallies");
    add_run_flags(backtest, bt_flags);
    backtest->add_option("--jobs", bt_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* trades_opt = backtest->add_option("--trades-csv", trades_path, "write one row per trade");

    std::string fixture_dir = "fixtures";
    std::uint64_t seed = 42;
    auto* gen = app.add_subcommand("gen-fixtures", "write the showcase bundle and a synthetic corpus");
    gen->add_option("--out", fixture_dir, "output directory");
    gen->add_option("--seed", seed, "corpus seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(validate_paths, std::cout, std::cerr);
        if (*scan) {
            const auto cfg = resolve(scan_flags);
            if (*plot_opt) scan_opts.plot_data = plot_path;
            return cmd_scan(cfg, scan_opts, std::cout, std::cerr);
        }
        if (*backtest) {
            const auto cfg = resolve(bt_flags);
            if (*trades_opt) bt_opts.trades_csv = trades_path;
            return cmd_backtest(cfg, bt_opts, std::cout, std::cerr);
        }
        if (*gen) return cmd_gen_fixtures(fixture_dir, seed, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return kExitData;
    } catch (const std::system_error& e) {
        std::cerr << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
