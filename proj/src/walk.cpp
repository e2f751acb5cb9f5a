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

#include "mirrorqsd/walk.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "mirrorqsd/errors.hpp"

namespace mirrorqsd {

namespace {

constexpr double kSupportFloor = 1e-12;

nlohmann::json matrix_to_json(const Complex2x2 &m) {
    auto entry = [](complex_t z) { return nlohmann::json::array({z.real(), z.imag()}); };
    return nlohmann::json::array({nlohmann::json::array({entry(m(0, 0)), entry(m(0, 1))}),
                                  nlohmann::json::array({entry(m(1, 0)), entry(m(1, 1))})});
}

WalkState apply_layer_unchecked(const WalkState &state, const CoinLayer &layer) {
    std::map<int, CoinAmplitudes> out;
    for (const auto &[x, amp] : state.sites()) {
        out.emplace_hint(out.end(), x, layer.coin_at(x) * amp);
    }
    return WalkState(std::move(out));
}

} // namespace

WalkState WalkState::at_origin(const QubitPureState &coin) {
    return WalkState({{0, coin.amplitudes()}});
}

CoinAmplitudes WalkState::at(int x) const {
    const auto it = sites_.find(x);
    return it == sites_.end() ? CoinAmplitudes{} : it->second;
}

double WalkState::norm() const {
    double total = 0.0;
    for (const auto &[x, amp] : sites_) {
        total += std::norm(amp[0]) + std::norm(amp[1]);
    }
    return total;
}

std::map<int, double> WalkState::position_distribution() const {
    std::map<int, double> dist;
    for (const auto &[x, amp] : sites_) {
        dist.emplace_hint(dist.end(), x, std::norm(amp[0]) + std::norm(amp[1]));
    }
    return dist;
}

const Complex2x2 &CoinLayer::coin_at(int x) const {
    const auto it = coins.find(x);
    return it == coins.end() ? fallback : it->second.matrix;
}

void CoinSchedule::validate() const {
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto &layer = layers[l];
        if (!layer.fallback.is_finite() || !layer.fallback.is_unitary()) {
            throw ScheduleError("layer " + std::to_string(l) + ": fallback coin is not unitary");
        }
        for (const auto &[x, coin] : layer.coins) {
            if (!coin.matrix.is_finite() || !coin.matrix.is_unitary()) {
                std::ostringstream msg;
                msg << "layer " << l << ", position " << x
                    << ": coin is not unitary (defect " << coin.matrix.unitarity_defect()
                    << ")";
                throw ScheduleError(msg.str());
            }
        }
    }
}

WalkState apply_shift(const WalkState &state) {
    std::map<int, CoinAmplitudes> out;
    for (const auto &[x, amp] : state.sites()) {
        if (amp[0] != 0.0) {
            out[x + 1][0] += amp[0];
        }
        if (amp[1] != 0.0) {
            out[x - 1][1] += amp[1];
        }
    }
    return WalkState(std::move(out));
}

WalkState apply_coin_layer(const WalkState &state, const CoinLayer &layer) {
    CoinSchedule{{layer}}.validate();
    return apply_layer_unchecked(state, layer);
}

Complex2x2 hadamard_coin() {
    const double h = std::sqrt(0.5);
    return {h, h, h, -h};
}

Complex2x2 reflection_coin(double a) {
    const double c = std::sqrt(std::max(0.0, 1.0 - a * a));
    return {c, a, a, -c};
}

namespace {

CoinSchedule two_step_schedule(const Complex2x2 &first_right) {
    const auto id = Complex2x2::identity();
    const auto not_gate = Complex2x2::pauli_x();
    CoinSchedule s;
    s.layers.push_back(CoinLayer{{{0, SiteCoin{id, CoinRole::FirstOrigin}}}});
    s.layers.push_back(CoinLayer{{{1, SiteCoin{first_right, CoinRole::FirstRight}},
                                  {-1, SiteCoin{not_gate, CoinRole::Not}}}});
    s.layers.push_back(CoinLayer{{{0, SiteCoin{hadamard_coin(), CoinRole::SecondOrigin}}}});
    s.layers.push_back(CoinLayer{{{1, SiteCoin{id, CoinRole::SecondRight}},
                                  {-1, SiteCoin{not_gate, CoinRole::Not}}}});
    return s;
}

} // namespace

CoinSchedule schedule_med(double p, double theta, MuConvention convention) {
    check_parameters(p, theta);
    if (p >= med_threshold(theta)) {
        return two_step_schedule(Complex2x2::pauli_x());
    }
    return two_step_schedule(reflection_coin(std::min(med_mu(p, theta, convention), 1.0)));
}

CoinSchedule schedule_mcd(double p, double theta) {
    check_parameters(p, theta);
    const double nu = mcd_nu(p, theta);
    if (nu > 1.0) {
        std::ostringstream msg;
        msg << "MCD schedule needs nu <= 1 (got nu = " << nu
            << "); use the four-element POVM from mcd_povm instead";
        throw UnsupportedScheduleError(msg.str());
    }
    return two_step_schedule(reflection_coin(nu));
}

WalkResult run_walk(const QubitPureState &coin, const CoinSchedule &schedule) {
    schedule.validate();
    auto state = WalkState::at_origin(coin);
    for (const auto &layer : schedule.layers) {
        state = apply_shift(apply_layer_unchecked(state, layer));
    }
    auto dist = state.position_distribution();
    return {std::move(dist), std::move(state)};
}

std::vector<double>
OutcomeMap::outcome_probabilities(const std::map<int, double> &distribution,
                                  std::size_t outcome_count) const {
    std::vector<double> q(outcome_count, 0.0);
    for (const auto &[x, k] : position_to_outcome) {
        const auto it = distribution.find(x);
        if (it != distribution.end() && k < outcome_count) {
            q[k] += it->second;
        }
    }
    return q;
}

std::optional<int> OutcomeMap::position_of(std::size_t k) const {
    for (const auto &[x, outcome] : position_to_outcome) {
        if (outcome == k) {
            return x;
        }
    }
    return std::nullopt;
}

std::vector<QubitPureState> probe_states() {
    const double h = std::sqrt(0.5);
    const complex_t i{0.0, 1.0};
    return {QubitPureState{1.0, 0.0}, QubitPureState{0.0, 1.0}, QubitPureState{h, h},
            QubitPureState{h, -h},    QubitPureState{h, h * i},   QubitPureState{h, -h * i}};
}

OutcomeMap derive_outcome_map(const CoinSchedule &schedule, const Povm &povm,
                              double max_residual) {
    schedule.validate();
    const auto probes = probe_states();

    std::vector<std::map<int, double>> walk_dists;
    std::vector<std::vector<double>> born;
    std::vector<int> support;
    for (const auto &probe : probes) {
        walk_dists.push_back(run_walk(probe, schedule).distribution);
        born.push_back(born_probabilities(probe, povm));
        for (const auto &[x, px] : walk_dists.back()) {
            if (px > kSupportFloor) {
                support.push_back(x);
            }
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    const std::size_t n = povm.size();
    // residual[pos][k] = max over probes of |P(x|probe) - <probe|Pi_k|probe>|
    std::vector<std::vector<double>> residual(support.size(), std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < support.size(); ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t r = 0; r < probes.size(); ++r) {
                const auto it = walk_dists[r].find(support[j]);
                const double px = it == walk_dists[r].end() ? 0.0 : it->second;
                residual[j][k] = std::max(residual[j][k], std::abs(px - born[r][k]));
            }
        }
    }

    auto table = [&] {
        std::ostringstream out;
        out << std::setprecision(6) << "residual table (rows: position, cols: element)";
        for (std::size_t j = 0; j < support.size(); ++j) {
            out << "\n  x = " << support[j] << ":";
            for (double v : residual[j]) {
                out << ' ' << v;
            }
        }
        return out.str();
    };

    OutcomeMap map;
    std::vector<bool> taken(n, false);
    for (std::size_t j = 0; j < support.size(); ++j) {
        if (n == 0) {
            break;
        }
        const auto best = static_cast<std::size_t>(
            std::min_element(residual[j].begin(), residual[j].end()) - residual[j].begin());
        if (residual[j][best] > max_residual) {
            throw CompilationMismatchError("position " + std::to_string(support[j]) +
                                           " matches no POVM element; " + table());
        }
        if (taken[best]) {
            throw CompilationMismatchError("POVM element " + std::to_string(best) +
                                           " claimed by more than one position; " +
                                           table());
        }
        taken[best] = true;
        map.position_to_outcome.emplace(support[j], best);
        map.residual = std::max(map.residual, residual[j][best]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!taken[k] && povm.elements[k].max_abs() > kSupportFloor) {
            throw CompilationMismatchError("POVM element " + std::to_string(k) +
                                           " is realized by no walker position; " + table());
        }
    }
    return map;
}

std::vector<QubitPureState> haar_random_states(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::vector<QubitPureState> out;
    out.reserve(count);
    while (out.size() < count) {
        const complex_t a{normal(gen), normal(gen)};
        const complex_t b{normal(gen), normal(gen)};
        if (std::norm(a) + std::norm(b) > 1e-300) {
            out.push_back(QubitPureState::normalized(a, b));
        }
    }
    return out;
}

double verify_schedule(const CoinSchedule &schedule, const Povm &povm,
                       std::size_t sample_count, std::uint64_t seed) {
    const auto map =
        derive_outcome_map(schedule, povm, std::numeric_limits<double>::infinity());
    double worst = 0.0;
    for (const auto &state : haar_random_states(sample_count, seed)) {
        const auto walk = map.outcome_probabilities(run_walk(state, schedule).distribution,
                                                    povm.size());
        const auto born = born_probabilities(state, povm);
        for (std::size_t k = 0; k < povm.size(); ++k) {
            worst = std::max(worst, std::abs(walk[k] - born[k]));
        }
    }
    return worst;
}

std::string_view to_string(CoinRole role) noexcept {
    switch (role) {
    case CoinRole::FirstOrigin:
        return "C1(1)";
    case CoinRole::FirstRight:
        return "C1(2)";
    case CoinRole::Not:
        return "NOT";
    case CoinRole::SecondOrigin:
        return "C2(1)";
    case CoinRole::SecondRight:
        return "C2(2)";
    case CoinRole::Generic:
        break;
    }
    return "generic";
}

nlohmann::json schedule_to_json(const CoinSchedule &schedule) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &layer : schedule.layers) {
        nlohmann::json coins = nlohmann::json::array();
        for (const auto &[x, coin] : layer.coins) {
            coins.push_back({{"position", x},
                             {"role", std::string(to_string(coin.role))},
                             {"matrix", matrix_to_json(coin.matrix)}});
        }
        layers.push_back({{"fallback", matrix_to_json(layer.fallback)}, {"coins", coins}});
    }
    return {{"layers", layers}};
}

} // namespace mirrorqsd
