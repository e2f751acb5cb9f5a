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

#include "mirrorqsd/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/kernels.hpp"

namespace mirrorqsd {

std::string_view to_string(Waveplate w) noexcept {
    switch (w) {
    case Waveplate::H1:
        return "H1";
    case Waveplate::H2:
        return "H2";
    case Waveplate::H3:
        return "H3";
    case Waveplate::H4:
        return "H4";
    case Waveplate::H5:
        return "H5";
    }
    return "?";
}

double normalize_plate_angle(double h) {
    constexpr double pi = std::numbers::pi;
    double r = std::fmod(h, pi);
    if (r <= -pi / 2) {
        r += pi;
    } else if (r > pi / 2) {
        r -= pi;
    }
    return r;
}

Complex2x2 hwp_matrix(double h) {
    const double c = std::cos(2.0 * h);
    const double s = std::sin(2.0 * h);
    return {c, s, s, -c};
}

WaveplateSetting preparation_angle(double theta_state) {
    if (!(theta_state >= -std::numbers::pi / 2 && theta_state <= std::numbers::pi / 2)) {
        throw DomainError("state angle must lie in [-pi/2, pi/2]");
    }
    return {Waveplate::H1, normalize_plate_angle(theta_state / 2.0)};
}

std::vector<WaveplateSetting> preparation_angles(const Ensemble &ensemble) {
    // Each state is cos(t)|0> + sin(t)|1> with real amplitudes.
    std::vector<WaveplateSetting> out;
    for (const auto &s : ensemble.states) {
        out.push_back(preparation_angle(std::atan2(s.a1().real(), s.a0().real())));
    }
    return out;
}

namespace {

double plate_angle_for(const Complex2x2 &c, std::size_t layer, int position) {
    const double imag = std::max({std::abs(c(0, 0).imag()), std::abs(c(0, 1).imag()),
                                  std::abs(c(1, 0).imag()), std::abs(c(1, 1).imag())});
    const bool reflection = imag <= kTolerance &&
                            std::abs(c(0, 1) - c(1, 0)) <= kTolerance &&
                            std::abs(c(0, 0) + c(1, 1)) <= kTolerance &&
                            std::abs(c.determinant() + 1.0) <= kTolerance;
    if (!reflection) {
        std::ostringstream msg;
        msg << "coin at layer " << layer << ", position " << position
            << " is not a real reflection; a quarter-wave plate would be required";
        throw NeedsQwpError(msg.str());
    }
    return normalize_plate_angle(0.5 * std::atan2(c(0, 1).real(), c(0, 0).real()));
}

} // namespace

std::vector<PlateAssignment> angles_for_schedule(const CoinSchedule &schedule) {
    schedule.validate();
    std::vector<PlateAssignment> out;
    int nots_seen = 0;
    for (std::size_t l = 0; l < schedule.layers.size(); ++l) {
        for (const auto &[x, coin] : schedule.layers[l].coins) {
            PlateAssignment a{l, x, coin.role, std::nullopt};
            if ((coin.matrix - Complex2x2::identity()).max_abs() > kTolerance) {
                std::optional<Waveplate> element;
                switch (coin.role) {
                case CoinRole::Not:
                    element = nots_seen++ == 0 ? Waveplate::H2 : Waveplate::H5;
                    break;
                case CoinRole::FirstRight:
                    element = Waveplate::H3;
                    break;
                case CoinRole::SecondOrigin:
                    element = Waveplate::H4;
                    break;
                default:
                    break;
                }
                const double h = plate_angle_for(coin.matrix, l, x);
                if (!element) {
                    throw ScheduleError("no waveplate slot for coin role " +
                                        std::string(to_string(coin.role)) + " at layer " +
                                        std::to_string(l));
                }
                a.plate = WaveplateSetting{*element, h};
            }
            out.push_back(a);
        }
    }
    return out;
}

std::uint64_t PhotonCountRecord::count(int state, std::size_t outcome) const {
    return counts.at(static_cast<std::size_t>(state - 1) * outcome_count() + outcome);
}

std::uint64_t PhotonCountRecord::outcome_total(std::size_t outcome) const {
    return count(1, outcome) + count(2, outcome) + count(3, outcome);
}

std::vector<PhotonCountRecord> simulate_counts(const Ensemble &ensemble, const Povm &povm,
                                               const OutcomeMap *outcome_map,
                                               std::uint64_t photons, std::size_t runs,
                                               std::uint64_t seed, std::uint64_t grid_index) {
    if (photons < 1 || runs < 1) {
        throw DomainError("photons and runs must both be at least 1");
    }
    auto diag = validate_povm(povm);
    if (!diag.passed) {
        throw PovmValidationError(std::move(diag));
    }
    std::vector<std::vector<double>> born;
    for (const auto &state : ensemble.states) {
        born.push_back(born_probabilities(state, povm));
    }
    const kernels::SamplingTable table(ensemble.priors, born);

    std::vector<std::optional<int>> detectors(povm.size());
    if (outcome_map != nullptr) {
        for (std::size_t k = 0; k < povm.size(); ++k) {
            detectors[k] = outcome_map->position_of(k);
        }
    }

    std::vector<PhotonCountRecord> records;
    records.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        PhotonCountRecord rec;
        rec.run_id = r;
        rec.seed = seed;
        rec.total = photons;
        rec.counts = kernels::count_photons(table, photons, {seed, grid_index, r});
        rec.outcome_labels = povm.labels;
        rec.detector_positions = detectors;
        records.push_back(std::move(rec));
    }
    return records;
}

ExperimentEstimate estimate_figure_of_merit(const std::vector<PhotonCountRecord> &records,
                                            Strategy strategy) {
    if (records.empty()) {
        throw DomainError("no count records to estimate from");
    }
    ExperimentEstimate est;
    for (const auto &rec : records) {
        const auto &labels = rec.outcome_labels;
        auto index_of = [&](int guess) {
            return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), guess) -
                                            labels.begin());
        };
        if (strategy == Strategy::Med) {
            std::uint64_t hits = 0;
            for (int guess = 1; guess <= 3; ++guess) {
                const auto k = index_of(guess);
                if (k < labels.size()) {
                    hits += rec.count(guess, k);
                }
            }
            est.per_run_values.push_back(static_cast<double>(hits) /
                                         static_cast<double>(rec.total));
        } else {
            const auto k = index_of(1);
            const std::uint64_t clicks = k < labels.size() ? rec.outcome_total(k) : 0;
            if (clicks == 0) {
                ++est.excluded_runs;
                continue;
            }
            est.per_run_values.push_back(static_cast<double>(rec.count(1, k)) /
                                         static_cast<double>(clicks));
        }
    }
    est.runs = est.per_run_values.size();
    if (est.runs == 0) {
        return est;
    }
    const double n = static_cast<double>(est.runs);
    est.mean = std::accumulate(est.per_run_values.begin(), est.per_run_values.end(), 0.0) / n;
    if (est.runs > 1) {
        double ss = 0.0;
        for (double v : est.per_run_values) {
            ss += (v - est.mean) * (v - est.mean);
        }
        est.std = std::sqrt(ss / (n - 1.0));
    }
    return est;
}

void write_records_jsonl(std::ostream &out, const std::vector<PhotonCountRecord> &records) {
    for (const auto &rec : records) {
        for (int i = 1; i <= 3; ++i) {
            for (std::size_t k = 0; k < rec.outcome_count(); ++k) {
                nlohmann::ordered_json row{{"run", rec.run_id},
                                           {"seed", rec.seed},
                                           {"N", rec.total},
                                           {"true_state", i},
                                           {"outcome", k},
                                           {"label", rec.outcome_labels[k]}};
                if (k < rec.detector_positions.size() && rec.detector_positions[k]) {
                    row["detector"] = *rec.detector_positions[k];
                } else {
                    row["detector"] = nullptr;
                }
                row["count"] = rec.count(i, k);
                out << row.dump() << '\n';
            }
        }
    }
}

} // namespace mirrorqsd
