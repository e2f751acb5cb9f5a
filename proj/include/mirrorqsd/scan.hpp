// Copyright 2026 The mirrorqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Parameter-space scans, equality-locus solving and figure-data emission.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mirrorqsd/strategies.hpp"

namespace mirrorqsd {

/// Inclusive linear grid. A single point is allowed only when min == max.
struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 2;

    [[nodiscard]] std::vector<double> values() const;
};

enum class OutputFormat { Csv, Json };

struct ScanConfig {
    Strategy strategy = Strategy::Med;
    GridAxis p_grid{0.01, 0.5, 50};
    GridAxis theta_grid{0.01, 1.56, 50};
    /// Only affects the POVM used for Monte Carlo columns.
    MuConvention mu_convention = MuConvention::Derived;
    /// Photons per run; 0 disables the Monte Carlo columns.
    std::uint64_t photons = 0;
    /// Monte Carlo runs per point; at least 2 when photons > 0.
    std::size_t runs = 30;
    std::uint64_t seed = 1;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct RegionRow {
    double p;
    double theta;
    double quantum_value;
    double noncontextual_value;
    double gap;
    bool advantage;
    std::optional<double> mc_mean;
    std::optional<double> mc_std;
};

/// One row per grid point, theta-major. Deterministic in config.seed.
std::vector<RegionRow> scan(const ScanConfig &config);

/// Fixed columns: p, theta, quantum, noncontextual, gap, advantage, mc_mean,
/// mc_std, n_photons, runs, seed. Monte Carlo fields are empty when absent.
void write_csv(std::ostream &out, const std::vector<RegionRow> &rows,
               const ScanConfig &config);
nlohmann::ordered_json rows_to_json(const std::vector<RegionRow> &rows,
                                    const ScanConfig &config);
/// Writes in config.format.
void write_rows(std::ostream &out, const std::vector<RegionRow> &rows,
                const ScanConfig &config);

/// Shortest decimal string that round-trips the double.
std::string format_double(double v);

struct LocusResult {
    /// Interior zero of the gap: a sign change (bisection) or a touching zero.
    std::optional<double> root;
    /// Set when the gap vanishes at a bracket endpoint.
    std::optional<double> boundary_root;
    /// "bisection", "tangent", "grid" (a sample landed on the zero) or "none".
    std::string method = "none";
    /// Gap evaluated at root, when found.
    std::optional<double> gap_at_root;
};

/// Default bracket for equality_locus.
inline constexpr double kLocusLow = 1e-3;
inline constexpr double kLocusHigh = 0.5;

/**
 * Zero of gap(p) = quantum - noncontextual on [p_lo, p_hi] at fixed theta.
 * Samples the bracket, bisects the first sign change to |gap| < 1e-10, and
 * otherwise looks for an interior touching zero (|gap| < 1e-10 at a local
 * minimum of |gap|). Throws DomainError for brackets outside (0, 1/2].
 */
LocusResult equality_locus(Strategy strategy, double theta, double p_lo = kLocusLow,
                           double p_hi = kLocusHigh);

/// (csc^2 t - 2 cos 2t) / (2 (3 + 4 cos 4t)), an alternative MCD locus formula kept for comparison.
double printed_mcd_locus(double theta);

enum class Figure { Fig3a, Fig3b, Fig4a, Fig4b };

std::optional<Figure> parse_figure(std::string_view name);
std::string_view to_string(Figure f) noexcept;

/**
 * Writes figure data into `directory` and returns the files written.
 * fig3a/fig4a: <fig>_curves.csv (theta slices x config p grid) and
 * <fig>_points.csv (p in {0.1, ..., 0.5} with Monte Carlo columns when
 * config.photons > 0; point k, slice-major, uses seed config.seed + k and
 * the seed column holds config.seed). fig3b/fig4b: <fig>_surface.csv over config grids,
 * analytic columns only.
 * Strategy is implied by the figure. Throws std::runtime_error with the path on I/O failure.
 */
std::vector<std::filesystem::path> figure_data(Figure figure, const ScanConfig &config,
                                               const std::filesystem::path &directory);

/// Theta slices used by fig3a (MED) and fig4a (MCD).
std::vector<double> figure_slices(Strategy strategy);

/**
 * Angle literal: "pi/12", "5pi/12", "5*pi/12", "-pi/24", "0.25pi", plain
 * radians ("0.2618") or degrees ("15deg"). Throws ConfigError.
 */
double parse_angle(std::string_view text);

} // namespace mirrorqsd
