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

// Verification oracles. Nothing here calls the closed-form POVM builders.

#include <cmath>
#include <sstream>
#include <string>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/strategies.hpp"

namespace mirrorqsd {

double max_confidence_eigen_oracle(const Ensemble &ensemble, int state_index) {
    if (state_index < 1 || state_index > 3) {
        throw DomainError("state index must be 1, 2 or 3");
    }
    const auto rho = ensemble_average(ensemble).matrix();
    const double lowest = hermitian_eigenvalues(rho)[0];
    if (lowest < 1e-12) {
        std::ostringstream msg;
        msg << "ensemble average is singular: smallest eigenvalue " << lowest;
        throw SingularStateError(msg.str(), lowest);
    }
    const auto i = static_cast<std::size_t>(state_index - 1);
    return ensemble.priors[i] * ensemble.states[i].expectation(inverse(rho));
}

MuSearchResult brute_force_optimize_med(double p, double theta, std::size_t grid_size) {
    check_parameters(p, theta);
    if (!(p < med_threshold(theta))) {
        throw DomainError("brute-force mu search needs p below the MED threshold");
    }
    if (grid_size < 1000) {
        throw DomainError("grid_size must be at least 1000");
    }

    const double step = 1.0 / static_cast<double>(grid_size);
    std::size_t best = 0;
    double best_value = med_objective(p, theta, 0.0);
    for (std::size_t j = 1; j <= grid_size; ++j) {
        const double v = med_objective(p, theta, static_cast<double>(j) * step);
        if (v > best_value) {
            best_value = v;
            best = j;
        }
    }

    // Golden-section refinement on the two cells adjacent to the best node.
    double lo = std::max(0.0, (static_cast<double>(best) - 1.0) * step);
    double hi = std::min(1.0, (static_cast<double>(best) + 1.0) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = med_objective(p, theta, a);
    double fb = med_objective(p, theta, b);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = med_objective(p, theta, b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = med_objective(p, theta, a);
        }
    }
    const double refined = 0.5 * (lo + hi);
    const double refined_value = med_objective(p, theta, refined);
    if (refined_value >= best_value) {
        return {refined, refined_value};
    }
    return {static_cast<double>(best) * step, best_value};
}

} // namespace mirrorqsd
