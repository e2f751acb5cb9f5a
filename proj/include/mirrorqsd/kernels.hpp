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
 * Data-parallel kernels. Every OpenMP kernel has a `_serial` twin kept as the
 * reference implementation; both produce identical results for any thread
 * count (integer reductions, per-index outputs, counter-keyed randomness).
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mirrorqsd/strategies.hpp"

namespace mirrorqsd::kernels {

/// Cumulative tables for sampling a (true state, outcome) pair per photon.
class SamplingTable {
  public:
    /// born[i][k] = <psi_i|Pi_k|psi_i>; rows are clamped and renormalized.
    SamplingTable(const std::array<double, 3> &priors,
                  const std::vector<std::vector<double>> &born);

    [[nodiscard]] std::size_t outcomes() const noexcept { return outcomes_; }
    /// Maps two uniforms in [0, 1) to (state index, outcome index).
    [[nodiscard]] std::pair<std::size_t, std::size_t> sample(double u_state,
                                                             double u_outcome) const noexcept;

  private:
    std::array<double, 3> prior_cdf_{};
    std::vector<double> outcome_cdf_;
    std::size_t outcomes_ = 0;
};

struct PhotonKey {
    std::uint64_t seed = 0;
    std::uint64_t grid_index = 0;
    std::uint64_t run_index = 0;
};

/// Joint counts, row-major 3 x outcomes, for `photons` photons.
std::vector<std::uint64_t> count_photons(const SamplingTable &table, std::uint64_t photons,
                                         const PhotonKey &key);
std::vector<std::uint64_t> count_photons_serial(const SamplingTable &table,
                                                std::uint64_t photons, const PhotonKey &key);

/// One report per (theta, p), theta-major. All points are validated up front.
std::vector<BoundsReport> bounds_grid(std::span<const double> ps,
                                      std::span<const double> thetas, Strategy strategy);
std::vector<BoundsReport> bounds_grid_serial(std::span<const double> ps,
                                             std::span<const double> thetas,
                                             Strategy strategy);

struct EquivalenceSweep {
    double max_deviation = 0.0;
    std::size_t evaluated = 0;
    /// MCD points with nu > 1 (not walk-compiled).
    std::size_t skipped = 0;
};

/**
 * verify_schedule over a set of (p, theta) points for the derived MED
 * schedule or the three-outcome MCD schedule. Point j uses Haar seed
 * seed + j. A point whose outcome map cannot be derived counts as infinite
 * deviation.
 */
EquivalenceSweep walk_equivalence(std::span<const std::pair<double, double>> points,
                                  Strategy strategy, std::size_t samples,
                                  std::uint64_t seed);
EquivalenceSweep walk_equivalence_serial(std::span<const std::pair<double, double>> points,
                                         Strategy strategy, std::size_t samples,
                                         std::uint64_t seed);

} // namespace mirrorqsd::kernels
