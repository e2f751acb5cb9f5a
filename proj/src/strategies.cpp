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

#include "mirrorqsd/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mirrorqsd/errors.hpp"

namespace mirrorqsd {

std::string_view to_string(Strategy s) noexcept {
    return s == Strategy::Med ? "med" : "mcd";
}

std::string_view to_string(MuConvention c) noexcept {
    return c == MuConvention::Derived ? "derived" : "printed";
}

double med_threshold(double theta) {
    check_theta(theta);
    const double c = std::cos(theta);
    return 1.0 / (2.0 + c * (c + std::sin(theta)));
}

double med_mu(double p, double theta, MuConvention convention) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double inner = convention == MuConvention::Derived ? c * c : p * c * c;
    return p * c * s / (1.0 - p * (2.0 + inner));
}

double med_objective(double p, double theta, double mu) {
    const double amp = mu * std::cos(theta) + std::sin(theta);
    return p * amp * amp + (1.0 - 2.0 * p) * (1.0 - mu * mu);
}

Povm med_povm_for_mu(double mu) {
    const double half_mu = 0.5 * mu;
    const double half_mu2 = 0.5 * mu * mu;
    return Povm{{Complex2x2{half_mu2, half_mu, half_mu, 0.5},
                 Complex2x2{half_mu2, -half_mu, -half_mu, 0.5},
                 Complex2x2::diagonal(1.0 - mu * mu, 0.0)},
                {1, 2, 3}};
}

MedSolution med_povm(double p, double theta) {
    check_parameters(p, theta);
    const double threshold = med_threshold(theta);
    if (p < threshold) {
        // Analytically mu < 1 here; guard the last ulp near the threshold.
        const double mu = std::min(med_mu(p, theta), 1.0);
        return {MedSolution::Branch::ThreeElement, mu, med_povm_for_mu(mu), threshold};
    }
    return {MedSolution::Branch::Projective, 1.0, med_povm_for_mu(1.0), threshold};
}

double success_probability(const Ensemble &ensemble, const Povm &povm) {
    double total = 0.0;
    for (int guess = 1; guess <= 3; ++guess) {
        const auto k = povm.index_of(guess);
        if (k == povm.size()) {
            continue;
        }
        const auto i = static_cast<std::size_t>(guess - 1);
        total += ensemble.priors[i] * ensemble.states[i].expectation(povm.elements[k]);
    }
    return total;
}

double med_success_quantum(double p, double theta) {
    return success_probability(mirror_ensemble(p, theta), med_povm(p, theta).povm);
}

double med_success_noncontextual(double p, double theta) {
    check_parameters(p, theta);
    const double c2 = std::pow(std::cos(theta), 2);
    const double cc2 = std::pow(std::cos(2.0 * theta), 2);
    if (p >= 1.0 / 3.0) {
        return 1.0 - (1.0 - 2.0 * p) * c2 - p * cc2;
    }
    return 1.0 - p * c2 - p * cc2;
}

double mcd_nu(double p, double theta) {
    const double s = std::sin(theta);
    return p * std::sin(2.0 * theta) / (1.0 - 2.0 * p * s * s);
}

McdSolution mcd_povm(double p, double theta) {
    check_parameters(p, theta);
    const double nu = mcd_nu(p, theta);
    return mcd_povm(p, theta, nu <= 1.0 ? 1.0 : 1.0 / (nu * nu));
}

McdSolution mcd_povm(double p, double theta, double xi) {
    check_parameters(p, theta);
    const double nu = mcd_nu(p, theta);
    const double xi_max = nu <= 1.0 ? 1.0 : 1.0 / (nu * nu);
    if (!(xi > 0.0 && xi <= xi_max * (1.0 + 1e-15))) {
        std::ostringstream msg;
        msg << "xi = " << xi << " outside (0, " << xi_max << "]";
        throw DomainError(msg.str());
    }
    const double a = 0.5 * nu * nu * xi;
    const double b = 0.5 * nu * xi;
    const double d = 0.5 * xi;
    // nu^2 xi can exceed 1 by an ulp at xi = 1/nu^2.
    const double zero_weight = std::max(0.0, 1.0 - nu * nu * xi);
    return McdSolution{nu,
                       xi,
                       Povm{{Complex2x2{a, b, b, d}, Complex2x2{a, -b, -b, d},
                             Complex2x2::diagonal(zero_weight, 0.0),
                             Complex2x2::diagonal(0.0, 1.0 - xi)},
                            {1, 2, kInconclusive, kInconclusive}},
                       {2, 3}};
}

double confidence(const Ensemble &ensemble, const Povm &povm, int guess) {
    const auto k = povm.index_of(guess);
    if (k == povm.size() || guess < 1 || guess > 3) {
        throw DomainError("POVM has no element for guess " + std::to_string(guess));
    }
    const auto i = static_cast<std::size_t>(guess - 1);
    const auto &el = povm.elements[k];
    const double numerator = ensemble.priors[i] * ensemble.states[i].expectation(el);
    const double denominator = (ensemble_average(ensemble).matrix() * el).trace().real();
    return numerator / denominator;
}

double mcd_confidence_quantum(double p, double theta) {
    return confidence(mirror_ensemble(p, theta), mcd_povm(p, theta).povm, 1);
}

double mcd_confidence_closed_form(double p, double theta) {
    check_parameters(p, theta);
    const double s = std::sin(theta);
    return (1.0 + 2.0 * p * std::cos(2.0 * theta)) / (2.0 - 4.0 * p * s * s);
}

double mcd_confidence_noncontextual(double p, double theta) {
    check_parameters(p, theta);
    const double c2 = std::pow(std::cos(theta), 2);
    const double cc2 = std::pow(std::cos(2.0 * theta), 2);
    return 1.0 / (1.0 + cc2 + (1.0 / p - 2.0) * c2);
}

BoundsReport bounds_report(double p, double theta, Strategy strategy) {
    BoundsReport r{p, theta, strategy, 0.0, 0.0, 0.0, false};
    if (strategy == Strategy::Med) {
        r.quantum_value = med_success_quantum(p, theta);
        r.noncontextual_value = med_success_noncontextual(p, theta);
    } else {
        r.quantum_value = mcd_confidence_quantum(p, theta);
        r.noncontextual_value = mcd_confidence_noncontextual(p, theta);
    }
    r.gap = r.quantum_value - r.noncontextual_value;
    r.advantage = r.gap > kAdvantageThreshold;
    return r;
}

Povm realized_povm(double p, double theta, Strategy strategy, MuConvention convention) {
    if (strategy == Strategy::Mcd) {
        return mcd_povm(p, theta).povm;
    }
    auto solution = med_povm(p, theta);
    if (convention == MuConvention::Printed &&
        solution.branch == MedSolution::Branch::ThreeElement) {
        return med_povm_for_mu(med_mu(p, theta, MuConvention::Printed));
    }
    return std::move(solution.povm);
}

} // namespace mirrorqsd
