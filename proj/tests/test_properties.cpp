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

#include "mirrorqsd/strategies.hpp"
#include "mirrorqsd/walk.hpp"

using namespace mirrorqsd;

constexpr double kPi = std::numbers::pi;

namespace {

template <typename F> void for_each_grid_point(int n, F &&f) {
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            f(0.5 * i / n, kPi / 2 * j / (n + 1));
        }
    }
}

double min_eigenvalue(const Povm &povm) {
    double m = 1.0;
    for (const auto &e : povm.elements) m = std::min(m, hermitian_eigenvalues(e)[0]);
    return m;
}

} // namespace

TEST_CASE("POVMs are valid on a 100x100 grid", "[property]") {
    std::size_t failures = 0;
    for_each_grid_point(100, [&](double p, double theta) {
        for (const auto &povm : {med_povm(p, theta).povm, mcd_povm(p, theta).povm}) {
            const auto d = validate_povm(povm);
            if (!d.passed || min_eigenvalue(povm) < -1e-12 || d.completeness_defect > 1e-12) {
                ++failures;
            }
        }
    });
    CHECK(failures == 0);
}

TEST_CASE("Values stay in [0, 1] and MED dominates random mu", "[property]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> up(1e-3, 0.5), ut(1e-3, kPi / 2 - 1e-3), um(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double p = up(rng), theta = ut(rng);
        const double s = med_success_quantum(p, theta);
        const double c = mcd_confidence_quantum(p, theta);
        REQUIRE(s >= 0.0);
        REQUIRE(s <= 1.0);
        REQUIRE(c >= 0.0);
        REQUIRE(c <= 1.0);
        REQUIRE(med_success_noncontextual(p, theta) <= 1.0);
        REQUIRE(mcd_confidence_noncontextual(p, theta) <= 1.0);
        // No member of the POVM family beats the chosen one.
        REQUIRE(med_objective(p, theta, um(rng)) <= s + 1e-12);
        // The closed form and the operational ratio agree everywhere.
        REQUIRE(std::abs(c - mcd_confidence_closed_form(p, theta)) < 1e-10);
    }
}

TEST_CASE("Mirror symmetry between states 1 and 2", "[property]") {
    for_each_grid_point(20, [&](double p, double theta) {
        const auto e = mirror_ensemble(p, theta);
        const auto med = med_povm(p, theta).povm;
        const auto a = born_probabilities(e.states[0], med);
        const auto b = born_probabilities(e.states[1], med);
        CHECK(std::abs(a[0] - b[1]) < 1e-14);
        CHECK(std::abs(a[2] - b[2]) < 1e-14);

        const auto mcd = mcd_povm(p, theta).povm;
        CHECK(std::abs(confidence(e, mcd, 1) - confidence(e, mcd, 2)) < 1e-13);
    });
}

TEST_CASE("Branch continuity at the MED threshold", "[property]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ut(0.05, kPi / 2 - 0.05);
    for (int k = 0; k < 20; ++k) {
        const double theta = ut(rng);
        const double ps = med_threshold(theta);
        CHECK(std::abs(med_mu(ps, theta) - 1.0) < 1e-9);
        CHECK(std::abs(med_success_quantum(ps - 1e-6, theta) -
                       med_success_quantum(ps + 1e-6, theta)) < 1e-4);
    }
}

TEST_CASE("Walk distributions sum to one on the schedule grid", "[property]") {
    for_each_grid_point(10, [&](double p, double theta) {
        const auto schedule = schedule_med(p, theta);
        for (const auto &psi : haar_random_states(5, 1)) {
            double total = 0.0;
            for (const auto &[x, prob] : run_walk(psi, schedule).distribution) {
                CHECK(x % 2 == 0);
                total += prob;
            }
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    });
}
