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

#pragma once

#include <cstdint>

namespace mirrorqsd {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * @brief Stateless generator keyed by (seed, grid index, run index).
 *
 * Draw j on lane l is a pure function of the key and (j, l), so any
 * partition of the photon loop across threads yields the same draws.
 */
class CounterRng {
  public:
    constexpr CounterRng(std::uint64_t seed, std::uint64_t grid_index,
                         std::uint64_t run_index) noexcept
        : key_(mix64(mix64(mix64(seed) ^ grid_index) ^ run_index)) {}

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter,
                                               std::uint32_t lane) const noexcept {
        return mix64(mix64(key_ ^ mix64(counter)) + lane);
    }

    /// Uniform in [0, 1) with 53 random bits.
    [[nodiscard]] constexpr double uniform(std::uint64_t counter,
                                           std::uint32_t lane) const noexcept {
        return static_cast<double>(bits(counter, lane) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
};

} // namespace mirrorqsd
