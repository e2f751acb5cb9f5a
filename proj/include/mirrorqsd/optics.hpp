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
 * Half-wave-plate realization of coin operators and a shot-noise emulation of
 * the photon-counting experiment.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "mirrorqsd/model.hpp"
#include "mirrorqsd/strategies.hpp"
#include "mirrorqsd/walk.hpp"

namespace mirrorqsd {

/// H1 prepares the coin; H2..H5 sit in the walk.
enum class Waveplate { H1, H2, H3, H4, H5 };

std::string_view to_string(Waveplate w) noexcept;

struct WaveplateSetting {
    Waveplate element;
    /// Fast-axis angle in radians, normalized to (-pi/2, pi/2].
    double angle;
};

/// Maps any angle into (-pi/2, pi/2] (half-wave plates have period pi).
double normalize_plate_angle(double h);

/// [[cos 2h, sin 2h], [sin 2h, -cos 2h]].
Complex2x2 hwp_matrix(double h);

/// H1 angle that turns |0> into cos(t)|0> + sin(t)|1>: t / 2.
WaveplateSetting preparation_angle(double theta_state);

/// H1 settings for the three ensemble states, in state order.
std::vector<WaveplateSetting> preparation_angles(const Ensemble &ensemble);

struct PlateAssignment {
    std::size_t layer;
    int position;
    CoinRole role;
    /// Empty for identity coins (no plate needed).
    std::optional<WaveplateSetting> plate;
};

/**
 * Solves hwp_matrix(h) = C for every coin in the schedule. Roles map to
 * plates: first NOT -> H2, C_1^(2) -> H3, C_2^(1) -> H4, second NOT -> H5.
 * Throws NeedsQwpError for coins that are complex, non-symmetric or not
 * reflections, and for non-identity coins without a plate role.
 */
std::vector<PlateAssignment> angles_for_schedule(const CoinSchedule &schedule);

/// Joint (true state, outcome) counts of one run.
struct PhotonCountRecord {
    std::size_t run_id = 0;
    std::uint64_t seed = 0;
    std::uint64_t total = 0;
    /// Row-major 3 x outcome_labels.size().
    std::vector<std::uint64_t> counts;
    std::vector<int> outcome_labels;
    /// Walker position realizing each outcome, when an outcome map was given.
    std::vector<std::optional<int>> detector_positions;

    [[nodiscard]] std::size_t outcome_count() const noexcept { return outcome_labels.size(); }
    /// state is 1-based; outcome is a POVM element index.
    [[nodiscard]] std::uint64_t count(int state, std::size_t outcome) const;
    [[nodiscard]] std::uint64_t outcome_total(std::size_t outcome) const;
};

/**
 * Per run, each of `photons` photons draws a true state from the priors and an
 * outcome from the Born rule. Draws are keyed by (seed, grid_index, run,
 * photon), so output is independent of thread count.
 */
std::vector<PhotonCountRecord> simulate_counts(const Ensemble &ensemble, const Povm &povm,
                                               const OutcomeMap *outcome_map,
                                               std::uint64_t photons, std::size_t runs,
                                               std::uint64_t seed,
                                               std::uint64_t grid_index = 0);

struct ExperimentEstimate {
    double mean = 0.0;
    /// Sample standard deviation (n - 1); 0 for a single run.
    double std = 0.0;
    std::size_t runs = 0;
    std::vector<double> per_run_values;
    /// MCD runs dropped for having no guess-1 clicks.
    std::size_t excluded_runs = 0;
};

/**
 * MED: fraction of photons whose outcome names their true state.
 * MCD: count(true 1, guess 1) / count(guess 1).
 */
ExperimentEstimate estimate_figure_of_merit(const std::vector<PhotonCountRecord> &records,
                                            Strategy strategy);

/// One JSON object per (run, true_state, outcome) cell:
/// {"run", "seed", "N", "true_state", "outcome", "label", "detector", "count"}.
void write_records_jsonl(std::ostream &out, const std::vector<PhotonCountRecord> &records);

} // namespace mirrorqsd
