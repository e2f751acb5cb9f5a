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

#include "mirrorqsd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mirrorqsd/counter_rng.hpp"
#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/walk.hpp"

namespace mirrorqsd::kernels {

SamplingTable::SamplingTable(const std::array<double, 3> &priors,
                             const std::vector<std::vector<double>> &born) {
    if (born.size() != 3 || born[0].empty()) {
        throw std::invalid_argument("sampling table needs 3 rows of outcome probabilities");
    }
    outcomes_ = born[0].size();
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        acc += std::clamp(priors[i], 0.0, 1.0);
        prior_cdf_[i] = acc;
    }
    for (auto &c : prior_cdf_) {
        c /= acc;
    }
    outcome_cdf_.resize(3 * outcomes_);
    for (std::size_t i = 0; i < 3; ++i) {
        if (born[i].size() != outcomes_) {
            throw std::invalid_argument("ragged outcome probability rows");
        }
        double row = 0.0;
        for (std::size_t k = 0; k < outcomes_; ++k) {
            row += std::clamp(born[i][k], 0.0, 1.0);
            outcome_cdf_[i * outcomes_ + k] = row;
        }
        for (std::size_t k = 0; k < outcomes_; ++k) {
            outcome_cdf_[i * outcomes_ + k] /= row;
        }
    }
}

std::pair<std::size_t, std::size_t> SamplingTable::sample(double u_state,
                                                          double u_outcome) const noexcept {
    std::size_t i = 0;
    while (i < 2 && u_state >= prior_cdf_[i]) {
        ++i;
    }
    const double *row = outcome_cdf_.data() + i * outcomes_;
    std::size_t k = 0;
    while (k + 1 < outcomes_ && u_outcome >= row[k]) {
        ++k;
    }
    return {i, k};
}

namespace {

inline void tally_photon(const SamplingTable &table, const CounterRng &rng, std::uint64_t j,
                         std::uint64_t *counts) {
    const auto [i, k] = table.sample(rng.uniform(j, 0), rng.uniform(j, 1));
    ++counts[i * table.outcomes() + k];
}

double equivalence_at(double p, double theta, Strategy strategy, std::size_t samples,
                      std::uint64_t seed) {
    if (strategy == Strategy::Med) {
        return verify_schedule(schedule_med(p, theta, MuConvention::Derived),
                               med_povm(p, theta).povm, samples, seed);
    }
    if (mcd_nu(p, theta) > 1.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return verify_schedule(schedule_mcd(p, theta), mcd_povm(p, theta).povm, samples, seed);
}

double guarded_equivalence(double p, double theta, Strategy strategy, std::size_t samples,
                           std::uint64_t seed) noexcept {
    try {
        return equivalence_at(p, theta, strategy, samples, seed);
    } catch (...) {
        return std::numeric_limits<double>::infinity();
    }
}

EquivalenceSweep reduce(const std::vector<double> &deviations) {
    EquivalenceSweep out;
    for (double d : deviations) {
        if (std::isnan(d)) {
            ++out.skipped;
        } else {
            ++out.evaluated;
            out.max_deviation = std::max(out.max_deviation, d);
        }
    }
    return out;
}

void validate_grid(std::span<const double> ps, std::span<const double> thetas) {
    for (double t : thetas) {
        for (double p : ps) {
            check_parameters(p, t);
        }
    }
}

} // namespace

std::vector<std::uint64_t> count_photons(const SamplingTable &table, std::uint64_t photons,
                                         const PhotonKey &key) {
    const std::size_t cells = 3 * table.outcomes();
    std::vector<std::uint64_t> total(cells, 0);
    const CounterRng rng(key.seed, key.grid_index, key.run_index);
    const auto n = static_cast<std::int64_t>(photons);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < n; ++j) {
            tally_photon(table, rng, static_cast<std::uint64_t>(j), local.data());
        }
#pragma omp critical
        for (std::size_t c = 0; c < cells; ++c) {
            total[c] += local[c];
        }
    }
    return total;
}

std::vector<std::uint64_t> count_photons_serial(const SamplingTable &table,
                                                std::uint64_t photons, const PhotonKey &key) {
    std::vector<std::uint64_t> total(3 * table.outcomes(), 0);
    const CounterRng rng(key.seed, key.grid_index, key.run_index);
    for (std::uint64_t j = 0; j < photons; ++j) {
        tally_photon(table, rng, j, total.data());
    }
    return total;
}

std::vector<BoundsReport> bounds_grid(std::span<const double> ps,
                                      std::span<const double> thetas, Strategy strategy) {
    validate_grid(ps, thetas);
    const auto np = static_cast<std::int64_t>(ps.size());
    const auto n = np * static_cast<std::int64_t>(thetas.size());
    std::vector<BoundsReport> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const auto t = static_cast<std::size_t>(idx / np);
        const auto j = static_cast<std::size_t>(idx % np);
        out[static_cast<std::size_t>(idx)] = bounds_report(ps[j], thetas[t], strategy);
    }
    return out;
}

std::vector<BoundsReport> bounds_grid_serial(std::span<const double> ps,
                                             std::span<const double> thetas,
                                             Strategy strategy) {
    validate_grid(ps, thetas);
    std::vector<BoundsReport> out;
    out.reserve(ps.size() * thetas.size());
    for (double t : thetas) {
        for (double p : ps) {
            out.push_back(bounds_report(p, t, strategy));
        }
    }
    return out;
}

EquivalenceSweep walk_equivalence(std::span<const std::pair<double, double>> points,
                                  Strategy strategy, std::size_t samples,
                                  std::uint64_t seed) {
    for (const auto &[p, t] : points) {
        check_parameters(p, t);
    }
    const auto n = static_cast<std::int64_t>(points.size());
    std::vector<double> deviations(points.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t j = 0; j < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        deviations[u] = guarded_equivalence(points[u].first, points[u].second, strategy,
                                            samples, seed + static_cast<std::uint64_t>(j));
    }
    return reduce(deviations);
}

EquivalenceSweep walk_equivalence_serial(std::span<const std::pair<double, double>> points,
                                         Strategy strategy, std::size_t samples,
                                         std::uint64_t seed) {
    for (const auto &[p, t] : points) {
        check_parameters(p, t);
    }
    std::vector<double> deviations;
    deviations.reserve(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        deviations.push_back(guarded_equivalence(points[j].first, points[j].second, strategy,
                                                 samples, seed + j));
    }
    return reduce(deviations);
}

} // namespace mirrorqsd::kernels
