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

/**
 * @file
 * Mirror-symmetric ensembles, POVMs and POVM validation.
 */

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorqsd/linalg.hpp"

namespace mirrorqsd {

/// Outcome label for "no state guess". Guess labels are 1, 2, 3.
inline constexpr int kInconclusive = 0;

/**
 * @brief Three pure states with priors (p, p, 1 - 2p).
 *
 * states[0] and states[1] are reflections of each other about
 * states[2] = |0>.
 */
struct Ensemble {
    std::array<QubitPureState, 3> states;
    std::array<double, 3> priors;
    double p;
    double theta;
};

/// Throws DomainError unless 0 < theta < pi/2.
void check_theta(double theta);

/// Throws DomainError unless 0 < p <= 1/2 and 0 < theta < pi/2.
void check_parameters(double p, double theta);

/// cos(theta)|0> +- sin(theta)|1> and |0> with priors (p, p, 1 - 2p).
Ensemble mirror_ensemble(double p, double theta);

/// rho = sum_i p_i |psi_i><psi_i|.
QubitDensity ensemble_average(const Ensemble &ensemble);

struct Povm {
    std::vector<Complex2x2> elements;
    /// One per element: a guessed state (1..3) or kInconclusive.
    std::vector<int> labels;

    [[nodiscard]] std::size_t size() const noexcept { return elements.size(); }
    /// Index of the first element carrying the label, or size() if absent.
    [[nodiscard]] std::size_t index_of(int label) const noexcept;
};

struct ElementDiagnostics {
    double min_eigenvalue;
    double hermiticity_defect;
};

struct PovmDiagnostics {
    std::vector<ElementDiagnostics> elements;
    /// max |sum_k Pi_k - I|.
    double completeness_defect = 0.0;
    bool passed = false;

    [[nodiscard]] std::string describe() const;
};

class PovmValidationError : public std::runtime_error {
  public:
    explicit PovmValidationError(PovmDiagnostics diagnostics)
        : std::runtime_error("invalid POVM: " + diagnostics.describe()),
          diagnostics_(std::move(diagnostics)) {}
    [[nodiscard]] const PovmDiagnostics &diagnostics() const noexcept {
        return diagnostics_;
    }

  private:
    PovmDiagnostics diagnostics_;
};

/// Per-element PSD and Hermiticity checks plus completeness, at kTolerance.
PovmDiagnostics validate_povm(const Povm &povm);

struct OutcomeDistribution {
    std::vector<double> probabilities;
    /// Largest amount any raw Tr(rho Pi_k) was moved by clamping to [0, 1].
    double clamp_defect = 0.0;
};

/// q_k = Tr(rho Pi_k), clamped to [0, 1]. Throws PovmValidationError.
OutcomeDistribution outcome_probabilities(const QubitDensity &state,
                                          const Povm &povm);

/// <psi|Pi_k|psi> for each element; no validation, no clamping.
std::vector<double> born_probabilities(const QubitPureState &state,
                                       const Povm &povm);

} // namespace mirrorqsd
