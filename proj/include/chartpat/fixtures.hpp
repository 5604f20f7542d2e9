#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chartpat/market_data.hpp"

namespace chartpat {

/// The i-th weekday counting from 1995-01-02 (a Monday) as day 0.
[[nodiscard]] Date business_day(std::size_t i);

/// mt19937_64 with distributions written out here, so the same seed gives the
/// same numbers on every standard library.
class FixtureRng {
public:
    explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] double uniform();  ///< [0, 1)
    [[nodiscard]] double normal();   ///< standard normal, Box-Muller
    [[nodiscard]] std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// Geometric random walk with realistic OHLC bars and volumes.
[[nodiscard]] Series random_series(std::uint64_t seed, std::size_t length, std::string security_id,
                                   double start_price = 50.0, double daily_vol = 0.02);

/// One bar of a hand-built path. Unset fields follow the default bar model:
/// open halfway between the previous close and this close, high/low 0.2%
/// outside the body.
struct BarSpec {
    double close = 0.0;
    std::optional<double> open;
    std::optional<double> high;
    std::optional<double> low;
};

[[nodiscard]] Series series_from_specs(std::string security_id, std::span<const BarSpec> specs);

/**
 * @brief Parses a small bar script, one bar per line.
 *
 *   `102.5`                 close only
 *   `102.5 h=104 l=101`     with explicit high/low (`o=` sets the open)
 *   `~4 110`                four bars moving linearly to close 110
 *
 * `#` starts a comment. Throws std::invalid_argument with the line number.
 */
[[nodiscard]] std::vector<BarSpec> parse_bar_script(std::string_view script);

/// Hand-built scenarios that together show every pattern kind once.
[[nodiscard]] std::vector<Series> showcase_bundle();

/// Multi-security random corpus used for end-to-end determinism checks.
[[nodiscard]] std::vector<Series> synthetic_corpus(std::uint64_t seed);

/// Writes `<dir>/<security_id>.csv` for each series; creates `dir`.
void write_series_files(const std::string& dir, std::span<const Series> series);

}  // namespace chartpat
