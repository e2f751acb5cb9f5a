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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/strategies.hpp"
#include "mirrorqsd/walk.hpp"

using namespace mirrorqsd;
using Catch::Matchers::WithinAbs;

constexpr double kPi = std::numbers::pi;

namespace {

Complex2x2 random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    const double a = u(rng), b = u(rng), c = u(rng), d = 0.5 * u(rng);
    const complex_t i{0.0, 1.0};
    const auto phase = std::exp(i * a);
    return phase * Complex2x2{std::exp(i * b) * std::cos(d), std::exp(i * c) * std::sin(d),
                              -std::exp(-i * c) * std::sin(d), std::exp(-i * b) * std::cos(d)};
}

CoinSchedule random_schedule(std::mt19937_64 &rng, std::size_t steps) {
    CoinSchedule s;
    for (std::size_t t = 0; t < steps; ++t) {
        CoinLayer layer;
        const int reach = static_cast<int>(t);
        for (int x = -reach; x <= reach; x += 2) {
            layer.coins[x] = SiteCoin{random_unitary(rng), CoinRole::Generic};
        }
        s.layers.push_back(layer);
    }
    return s;
}

} // namespace

TEST_CASE("Shift moves coin 0 right and coin 1 left", "[walk]") {
    const auto s = apply_shift(WalkState::at_origin(QubitPureState(0.6, 0.8)));
    CHECK(s.at(1)[0] == complex_t{0.6, 0.0});
    CHECK(s.at(-1)[1] == complex_t{0.8, 0.0});
    CHECK(s.sites().size() == 2);
}

TEST_CASE("Walks with random unitary coins preserve the norm", "[walk][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto schedule = random_schedule(rng, 6);
        const auto coin = haar_random_states(1, 100 + trial).front();
        const auto result = run_walk(coin, schedule);
        CHECK_THAT(result.final_state.norm(), WithinAbs(1.0, 1e-12));
        double total = 0.0;
        for (const auto &[x, prob] : result.distribution) {
            total += prob;
            // Locality and parity after 6 steps.
            CHECK(std::abs(x) <= 6);
            CHECK(x % 2 == 0);
        }
        CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("Non-unitary coins are rejected", "[walk]") {
    CoinLayer layer;
    layer.coins[0] = SiteCoin{Complex2x2::diagonal(1.0, 0.5), CoinRole::Generic};
    CHECK_THROWS_AS(apply_coin_layer(WalkState::at_origin(QubitPureState(1.0, 0.0)), layer),
                    ScheduleError);
}

TEST_CASE("Reflection coin", "[walk]") {
    const auto r = reflection_coin(0.3);
    CHECK(r.is_unitary());
    CHECK(r.hermiticity_defect() < 1e-15);
    CHECK(reflection_coin(1.0)(0, 1) == complex_t{1.0, 0.0});
}

TEST_CASE("MED schedule realizes the MED POVM on both branches", "[walk]") {
    for (double p : {0.1, 0.3, 0.4, 0.5}) {
        const auto schedule = schedule_med(p, kPi / 12);
        CHECK(schedule.layers.size() == 4);
        const auto povm = med_povm(p, kPi / 12).povm;
        const auto map = derive_outcome_map(schedule, povm);
        CHECK(map.residual < 1e-12);
        CHECK(verify_schedule(schedule, povm, 100, 3) < 1e-12);
    }
}

TEST_CASE("Outcome map places elements on even sites", "[walk]") {
    const auto map = derive_outcome_map(schedule_med(0.3, kPi / 12), med_povm(0.3, kPi / 12).povm);
    CHECK(map.position_of(0) == 2);
    CHECK(map.position_of(1) == 0);
    CHECK(map.position_of(2) == 4);
}

TEST_CASE("MCD schedule", "[walk]") {
    const auto sol = mcd_povm(0.1, kPi / 3);
    Povm three{{sol.povm.elements[0], sol.povm.elements[1], sol.povm.elements[2]},
               {1, 2, kInconclusive}};
    const auto schedule = schedule_mcd(0.1, kPi / 3);
    CHECK(verify_schedule(schedule, three, 100, 5) < 1e-12);
    CHECK_THROWS_AS(schedule_mcd(0.45, kPi / 3), UnsupportedScheduleError);
}

TEST_CASE("Printed convention schedule deviates from the optimal POVM", "[walk]") {
    const auto printed = schedule_med(0.3, kPi / 12, MuConvention::Printed);
    const auto optimal = med_povm(0.3, kPi / 12).povm;
    CHECK_THROWS_AS(derive_outcome_map(printed, optimal), CompilationMismatchError);
    const double dev = verify_schedule(printed, optimal, 100, 11);
    CHECK(dev > 0.1);
    CHECK(dev < 0.35);
    const auto realized = realized_povm(0.3, kPi / 12, Strategy::Med, MuConvention::Printed);
    CHECK(verify_schedule(printed, realized, 100, 11) < 1e-12);
}

TEST_CASE("Schedule roles", "[walk]") {
    const auto s = schedule_med(0.3, kPi / 12);
    CHECK(s.layers[0].coins.at(0).role == CoinRole::FirstOrigin);
    CHECK(s.layers[1].coins.at(1).role == CoinRole::FirstRight);
    CHECK(s.layers[1].coins.at(-1).role == CoinRole::Not);
    CHECK(s.layers[2].coins.at(0).role == CoinRole::SecondOrigin);
    CHECK(s.layers[3].coins.at(-1).role == CoinRole::Not);
    CHECK(to_string(CoinRole::FirstRight) == "C1(2)");

    const auto j = schedule_to_json(s);
    CHECK(j["layers"].size() == 4);
}

TEST_CASE("Haar random states are reproducible", "[walk]") {
    const auto a = haar_random_states(5, 42);
    const auto b = haar_random_states(5, 42);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].a0() == b[i].a0());
        CHECK(a[i].a1() == b[i].a1());
    }
}
