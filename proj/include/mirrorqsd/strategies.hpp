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
 * Optimal minimum-error (MED) and maximum-confidence (MCD) measurements for
 * the mirror-symmetric ensemble, their quantum values, the noncontextual
 * bounds they are compared against, and independent verification oracles.
 */

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mirrorqsd/model.hpp"

namespace mirrorqsd {

enum class Strategy { Med, Mcd };

/**
 * Which closed form to use for the MED coefficient mu.
 *
 * Derived: mu = p cos(t) sin(t) / (1 - p (2 + cos^2 t)), the maximizer of the
 * success probability. Printed: the variant with denominator
 * 1 - p (2 + p cos^2 t) that gives an H3 setting near 0.038 pi at (0.3, pi/12).
 */
enum class MuConvention { Derived, Printed };

std::string_view to_string(Strategy s) noexcept;
std::string_view to_string(MuConvention c) noexcept;

/// Advantage is claimed only when the gap exceeds this.
inline constexpr double kAdvantageThreshold = 1e-9;

// ---------------------------------------------------------------------------
// MED
// ---------------------------------------------------------------------------

/// p*(theta) = 1 / (2 + cos(theta) (cos(theta) + sin(theta))).
double med_threshold(double theta);

/// Raw closed-form mu for either convention; no branch logic.
double med_mu(double p, double theta, MuConvention convention = MuConvention::Derived);

/// S(mu) = p (mu cos + sin)^2 + (1 - 2p)(1 - mu^2), the success of the mu-family.
double med_objective(double p, double theta, double mu);

/// Three-element family {Pi_1, Pi_2, Pi_3} for a given mu in [0, 1].
Povm med_povm_for_mu(double mu);

struct MedSolution {
    enum class Branch { ThreeElement, Projective };
    Branch branch;
    double mu;
    Povm povm;
    double threshold_p;
};

/**
 * Optimal MED measurement. Below p*(theta) the three-element family with the
 * derived mu; at or above it the projective pair plus a zero third element.
 */
MedSolution med_povm(double p, double theta);

/// sum_i p_i <psi_i|Pi_i|psi_i> evaluated on a POVM whose labels name guesses.
double success_probability(const Ensemble &ensemble, const Povm &povm);

/// Optimal MED success, evaluated operationally from med_povm.
double med_success_quantum(double p, double theta);

/// Noncontextual MED bound, branching at p = 1/3.
double med_success_noncontextual(double p, double theta);

// ---------------------------------------------------------------------------
// MCD
// ---------------------------------------------------------------------------

/// nu = p sin(2 theta) / (1 - 2 p sin^2 theta).
double mcd_nu(double p, double theta);

struct McdSolution {
    double nu;
    double xi;
    /// Order: guess 1, guess 2, |0> element, |1> element (zero when xi = 1).
    Povm povm;
    std::vector<std::size_t> inconclusive_indices;
};

/// Maximum-confidence POVM with xi = min(1, 1/nu^2).
McdSolution mcd_povm(double p, double theta);

/// Same family with an explicit xi in (0, min(1, 1/nu^2)]. Throws DomainError.
McdSolution mcd_povm(double p, double theta, double xi);

/// p_k Tr(rho_k Pi) / Tr(rho Pi) for the element labelled `guess`.
double confidence(const Ensemble &ensemble, const Povm &povm, int guess);

/// Confidence for state 1 computed from mcd_povm.
double mcd_confidence_quantum(double p, double theta);

/// (1 + 2p cos(2 theta)) / (2 - 4 p sin^2 theta).
double mcd_confidence_closed_form(double p, double theta);

/// 1 / (1 + cos^2(2 theta) + (1/p - 2) cos^2 theta).
double mcd_confidence_noncontextual(double p, double theta);

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/**
 * @brief Maximum confidence via p_i <psi_i|rho^{-1}|psi_i>.
 *
 * Independent of the POVM construction. `state_index` is 1-based.
 * Throws SingularStateError when rho has an eigenvalue below 1e-12.
 */
double max_confidence_eigen_oracle(const Ensemble &ensemble, int state_index);

struct MuSearchResult {
    double mu_star;
    double s_star;
};

/**
 * Grid search of med_objective over mu in [0, 1] with grid_size + 1 points,
 * followed by golden-section refinement around the best cell.
 * Requires p < p*(theta) and grid_size >= 1000.
 */
MuSearchResult brute_force_optimize_med(double p, double theta, std::size_t grid_size);

// ---------------------------------------------------------------------------

struct BoundsReport {
    double p;
    double theta;
    Strategy strategy;
    double quantum_value;
    double noncontextual_value;
    double gap;
    bool advantage;
};

BoundsReport bounds_report(double p, double theta, Strategy strategy);

/**
 * The POVM a compiled experiment actually realizes. For MED under the printed
 * convention this is the three-element family at the printed mu; otherwise it
 * is the optimal POVM.
 */
Povm realized_povm(double p, double theta, Strategy strategy,
                   MuConvention convention = MuConvention::Derived);

} // namespace mirrorqsd
