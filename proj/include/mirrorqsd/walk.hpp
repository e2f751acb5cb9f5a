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
 * One-dimensional discrete-time quantum walk with site-dependent coins, used
 * as a POVM realization: the coin carries the qubit to be measured and the
 * final walker position is the measurement outcome.
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mirrorqsd/linalg.hpp"
#include "mirrorqsd/model.hpp"
#include "mirrorqsd/strategies.hpp"

namespace mirrorqsd {

using CoinAmplitudes = std::array<complex_t, 2>;

/// Sparse walker-coin amplitudes; only occupied sites are stored.
class WalkState {
  public:
    WalkState() = default;
    explicit WalkState(std::map<int, CoinAmplitudes> sites) : sites_(std::move(sites)) {}

    /// Walker at x = 0 carrying `coin`.
    static WalkState at_origin(const QubitPureState &coin);

    [[nodiscard]] const std::map<int, CoinAmplitudes> &sites() const noexcept {
        return sites_;
    }
    [[nodiscard]] CoinAmplitudes at(int x) const;
    [[nodiscard]] double norm() const;
    /// P(x) = |alpha_x|^2 + |beta_x|^2.
    [[nodiscard]] std::map<int, double> position_distribution() const;

  private:
    std::map<int, CoinAmplitudes> sites_;
};

/// Which slot of the two-step procedure a coin fills. Drives plate assignment.
enum class CoinRole {
    Generic,
    FirstOrigin,  ///< C_1^(1) at x = 0
    FirstRight,   ///< C_1^(2) at x = 1
    Not,          ///< NOT at x = -1
    SecondOrigin, ///< C_2^(1)
    SecondRight,  ///< C_2^(2)
};

struct SiteCoin {
    Complex2x2 matrix;
    CoinRole role = CoinRole::Generic;
};

/// Coins for one layer; positions not listed receive `fallback`.
struct CoinLayer {
    std::map<int, SiteCoin> coins;
    Complex2x2 fallback = Complex2x2::identity();

    [[nodiscard]] const Complex2x2 &coin_at(int x) const;
};

/// Ordered layers; each layer is applied and followed by one shift.
struct CoinSchedule {
    std::vector<CoinLayer> layers;

    /// Throws ScheduleError naming the first non-unitary coin.
    void validate() const;
};

/// T: coin |0> moves x -> x + 1, coin |1> moves x -> x - 1.
WalkState apply_shift(const WalkState &state);

/// Multiplies every site's coin by its layer matrix. Throws ScheduleError.
WalkState apply_coin_layer(const WalkState &state, const CoinLayer &layer);

/// Hadamard-type coin sqrt(1/2) [[1, 1], [1, -1]].
Complex2x2 hadamard_coin();

/// Real reflection [[sqrt(1 - a^2), a], [a, -sqrt(1 - a^2)]], |a| <= 1.
Complex2x2 reflection_coin(double a);

/**
 * Two-step MED schedule. Layers: {0: C_1^(1)}, {1: C_1^(2), -1: NOT},
 * {0: C_2^(1)}, {1: C_2^(2), -1: NOT}. C_1^(2) is the reflection coin at the
 * convention's mu below p*(theta) and NOT at or above it.
 */
CoinSchedule schedule_med(double p, double theta,
                          MuConvention convention = MuConvention::Derived);

/// Same structure with the reflection coin at nu. Throws UnsupportedScheduleError if nu > 1.
CoinSchedule schedule_mcd(double p, double theta);

struct WalkResult {
    std::map<int, double> distribution;
    WalkState final_state;
};

/// Start at x = 0 with `coin`; each layer is applied then shifted.
WalkResult run_walk(const QubitPureState &coin, const CoinSchedule &schedule);

struct OutcomeMap {
    /// Final position -> POVM element index.
    std::map<int, std::size_t> position_to_outcome;
    /// Largest probe residual of the chosen assignment.
    double residual = 0.0;

    /// Sums a walk distribution into per-outcome probabilities.
    [[nodiscard]] std::vector<double>
    outcome_probabilities(const std::map<int, double> &distribution,
                          std::size_t outcome_count) const;
    /// Position that realizes outcome k, if any.
    [[nodiscard]] std::optional<int> position_of(std::size_t k) const;
};

/// The tomographically complete probe set {|0>, |1>, |+>, |->, |+i>, |-i>}.
std::vector<QubitPureState> probe_states();

/**
 * Matches final positions to POVM elements by simulating the probe states.
 * Each supported position takes the element minimizing
 * max_probe |P(x | probe) - <probe|Pi_k|probe>|.
 *
 * Throws CompilationMismatchError (with a residual table) when a position fits
 * no element within `max_residual`, two positions claim one element, or a
 * nonzero element has no position.
 */
OutcomeMap derive_outcome_map(const CoinSchedule &schedule, const Povm &povm,
                              double max_residual = 1e-9);

/// Haar-distributed pure qubit states, deterministic in `seed`.
std::vector<QubitPureState> haar_random_states(std::size_t count, std::uint64_t seed);

/**
 * Max over `sample_count` Haar-random coins and all outcomes of
 * |P_walk(k) - <psi|Pi_k|psi>|, using the best-fit outcome map (no residual
 * cap, so mismatched conventions report a deviation instead of failing).
 */
double verify_schedule(const CoinSchedule &schedule, const Povm &povm,
                       std::size_t sample_count, std::uint64_t seed = 0);

/// {"layers": [{"fallback": M, "coins": [{"position": x, "role": r, "matrix": M}]}]},
/// each matrix as [[[re, im], [re, im]], [[re, im], [re, im]]].
nlohmann::json schedule_to_json(const CoinSchedule &schedule);

std::string_view to_string(CoinRole role) noexcept;

} // namespace mirrorqsd
