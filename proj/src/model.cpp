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

#include "mirrorqsd/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mirrorqsd/errors.hpp"

namespace mirrorqsd {

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
        std::ostringstream msg;
        msg << "angle theta = " << theta << " outside (0, pi/2)";
        throw DomainError(msg.str());
    }
}

void check_parameters(double p, double theta) {
    if (!(p > 0.0 && p <= 0.5)) {
        std::ostringstream msg;
        msg << "prior p = " << p << " outside (0, 1/2]";
        throw DomainError(msg.str());
    }
    check_theta(theta);
}

Ensemble mirror_ensemble(double p, double theta) {
    check_parameters(p, theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Ensemble{{QubitPureState{c, s}, QubitPureState{c, -s}, QubitPureState{1.0, 0.0}},
                    {p, p, 1.0 - 2.0 * p},
                    p,
                    theta};
}

QubitDensity ensemble_average(const Ensemble &ensemble) {
    Complex2x2 rho;
    for (std::size_t i = 0; i < 3; ++i) {
        rho += ensemble.priors[i] * ensemble.states[i].projector();
    }
    return QubitDensity(rho);
}

std::size_t Povm::index_of(int label) const noexcept {
    const auto it = std::find(labels.begin(), labels.end(), label);
    return static_cast<std::size_t>(it - labels.begin());
}

std::string PovmDiagnostics::describe() const {
    std::ostringstream out;
    out << (passed ? "pass" : "fail") << "; completeness defect "
        << completeness_defect;
    for (std::size_t k = 0; k < elements.size(); ++k) {
        out << "; element " << k << ": min eigenvalue " << elements[k].min_eigenvalue
            << ", hermiticity defect " << elements[k].hermiticity_defect;
        if (elements[k].min_eigenvalue < -kTolerance) {
            out << " (negative eigenvalue)";
        }
    }
    return out.str();
}

PovmDiagnostics validate_povm(const Povm &povm) {
    PovmDiagnostics diag;
    Complex2x2 sum;
    bool ok = !povm.elements.empty() && povm.labels.size() == povm.elements.size();
    for (const auto &el : povm.elements) {
        ElementDiagnostics d{};
        if (el.is_finite()) {
            d.min_eigenvalue = hermitian_eigenvalues(el)[0];
            d.hermiticity_defect = el.hermiticity_defect();
        } else {
            d.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
            d.hermiticity_defect = std::numeric_limits<double>::infinity();
        }
        ok = ok && d.min_eigenvalue >= -kTolerance && d.hermiticity_defect <= kTolerance;
        diag.elements.push_back(d);
        sum += el;
    }
    diag.completeness_defect = (sum - Complex2x2::identity()).max_abs();
    diag.passed = ok && diag.completeness_defect <= kTolerance;
    return diag;
}

OutcomeDistribution outcome_probabilities(const QubitDensity &state,
                                          const Povm &povm) {
    auto diag = validate_povm(povm);
    if (!diag.passed) {
        throw PovmValidationError(std::move(diag));
    }
    OutcomeDistribution out;
    out.probabilities.reserve(povm.size());
    for (const auto &el : povm.elements) {
        const double raw = (state.matrix() * el).trace().real();
        const double q = std::clamp(raw, 0.0, 1.0);
        out.clamp_defect = std::max(out.clamp_defect, std::abs(q - raw));
        out.probabilities.push_back(q);
    }
    return out;
}

std::vector<double> born_probabilities(const QubitPureState &state,
                                       const Povm &povm) {
    std::vector<double> q;
    q.reserve(povm.size());
    for (const auto &el : povm.elements) {
        q.push_back(state.expectation(el));
    }
    return q;
}

} // namespace mirrorqsd
