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
#include <sstream>

#include <json.hpp>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/optics.hpp"

using namespace mirrorqsd;
using Catch::Matchers::WithinAbs;

constexpr double kPi = std::numbers::pi;

namespace {

std::optional<WaveplateSetting> plate_for(const std::vector<PlateAssignment> &plates,
                                          CoinRole role, std::size_t layer) {
    for (const auto &a : plates) {
        if (a.role == role && a.layer == layer) {
            return a.plate;
        }
    }
    FAIL("no assignment for role");
    return std::nullopt;
}

} // namespace

TEST_CASE("HWP matrix", "[optics]") {
    const auto h = hwp_matrix(kPi / 8);
    CHECK_THAT(h(0, 0).real(), WithinAbs(std::numbers::sqrt2 / 2, 1e-15));
    CHECK_THAT(h(1, 1).real(), WithinAbs(-std::numbers::sqrt2 / 2, 1e-15));
    CHECK(hwp_matrix(0.37).is_unitary());
    CHECK_THAT(normalize_plate_angle(-kPi / 2), WithinAbs(kPi / 2, 1e-15));
    CHECK_THAT(normalize_plate_angle(kPi), WithinAbs(0.0, 1e-15));
}

TEST_CASE("Preparation plate angles", "[optics]") {
    const auto a = preparation_angles(mirror_ensemble(0.3, kPi / 12));
    CHECK(a[0].angle == kPi / 24);
    CHECK(a[1].angle == -kPi / 24);
    CHECK(a[2].angle == 0.0);
    const auto b = preparation_angles(mirror_ensemble(0.1, kPi / 3));
    CHECK(b[0].angle == kPi / 6);
    CHECK(b[1].angle == -kPi / 6);
    CHECK(b[2].angle == 0.0);
    CHECK(a[0].element == Waveplate::H1);

    // The HWP at theta/2 rotates |0> onto the prepared state.
    const auto out = hwp_matrix(kPi / 24) * std::array<complex_t, 2>{1.0, 0.0};
    CHECK_THAT(out[0].real(), WithinAbs(std::cos(kPi / 12), 1e-15));
    CHECK_THAT(out[1].real(), WithinAbs(std::sin(kPi / 12), 1e-15));
}

TEST_CASE("Measurement plate angles", "[optics]") {
    const auto med = angles_for_schedule(schedule_med(0.3, kPi / 12));
    const auto h3 = plate_for(med, CoinRole::FirstRight, 1);
    REQUIRE(h3);
    CHECK(h3->element == Waveplate::H3);
    CHECK_THAT(h3->angle / kPi, WithinAbs(0.10734848678902549, 1e-12));
    CHECK(plate_for(med, CoinRole::Not, 1)->angle == kPi / 4);
    CHECK(plate_for(med, CoinRole::Not, 1)->element == Waveplate::H2);
    CHECK(plate_for(med, CoinRole::Not, 3)->element == Waveplate::H5);
    CHECK(plate_for(med, CoinRole::SecondOrigin, 2)->angle == kPi / 8);
    CHECK_FALSE(plate_for(med, CoinRole::FirstOrigin, 0).has_value());

    const auto printed = angles_for_schedule(schedule_med(0.3, kPi / 12, MuConvention::Printed));
    CHECK_THAT(plate_for(printed, CoinRole::FirstRight, 1)->angle / kPi,
               WithinAbs(0.038134511975297915, 1e-12));

    const auto mcd = angles_for_schedule(schedule_mcd(0.1, kPi / 3));
    CHECK_THAT(plate_for(mcd, CoinRole::FirstRight, 1)->angle / kPi,
               WithinAbs(0.016243742208814412, 1e-12));
}

TEST_CASE("Complex coins need a quarter-wave plate", "[optics]") {
    CoinSchedule s;
    CoinLayer layer;
    layer.coins[0] = SiteCoin{Complex2x2{1.0, 0.0, 0.0, complex_t{0.0, 1.0}}, CoinRole::FirstOrigin};
    s.layers.push_back(layer);
    CHECK_THROWS_AS(angles_for_schedule(s), NeedsQwpError);
}

TEST_CASE("Simulated counts are reproducible and complete", "[optics]") {
    const auto e = mirror_ensemble(0.4, kPi / 12);
    const auto povm = med_povm(0.4, kPi / 12).povm;
    const auto a = simulate_counts(e, povm, nullptr, 10000, 3, 9);
    const auto b = simulate_counts(e, povm, nullptr, 10000, 3, 9);
    REQUIRE(a.size() == 3);
    for (std::size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].counts == b[r].counts);
        std::uint64_t total = 0;
        for (auto c : a[r].counts) total += c;
        CHECK(total == 10000);
        CHECK(a[r].run_id == r);
    }
    CHECK(a[0].counts != a[1].counts);
    CHECK(simulate_counts(e, povm, nullptr, 10000, 1, 10)[0].counts != a[0].counts);
}

TEST_CASE("Figure-of-merit estimates converge", "[optics]") {
    const auto e = mirror_ensemble(0.1, kPi / 3);
    const auto povm = mcd_povm(0.1, kPi / 3).povm;
    const auto est = estimate_figure_of_merit(simulate_counts(e, povm, nullptr, 100000, 30, 1),
                                              Strategy::Mcd);
    CHECK(est.runs == 30);
    CHECK(std::abs(est.mean - 9.0 / 17.0) < 5.0 * est.std);
}

TEST_CASE("JSONL records carry labels and detectors", "[optics]") {
    const auto schedule = schedule_med(0.3, kPi / 12);
    const auto povm = med_povm(0.3, kPi / 12).povm;
    const auto map = derive_outcome_map(schedule, povm);
    const auto records = simulate_counts(mirror_ensemble(0.3, kPi / 12), povm, &map, 1000, 2, 4);
    std::ostringstream out;
    write_records_jsonl(out, records);
    std::istringstream in(out.str());
    std::string line;
    std::size_t lines = 0;
    std::uint64_t total = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("detector"));
        CHECK(j["N"] == 1000);
        total += j["count"].get<std::uint64_t>();
        ++lines;
    }
    CHECK(lines == 2 * 3 * 3);
    CHECK(total == 2000);
}
