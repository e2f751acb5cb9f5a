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
 * Fixed-size complex 2x2 algebra for single-qubit states and operators.
 */

#pragma once

#include <array>
#include <complex>

namespace mirrorqsd {

using complex_t = std::complex<double>;

/// Tolerance for algebraic identities on 2x2 quantities.
inline constexpr double kTolerance = 1e-12;

/**
 * @brief Row-major complex 2x2 matrix.
 *
 * Entry (r, c) lives at index 2*r + c. Construction does not check
 * finiteness; use is_finite() where inputs come from outside.
 */
struct Complex2x2 {
    std::array<complex_t, 4> e{};

    constexpr Complex2x2() = default;
    constexpr Complex2x2(complex_t a, complex_t b, complex_t c, complex_t d)
        : e{a, b, c, d} {}

    static constexpr Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Complex2x2 zero() { return {}; }
    static constexpr Complex2x2 diagonal(double a, double d) {
        return {a, 0.0, 0.0, d};
    }
    static constexpr Complex2x2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

    [[nodiscard]] constexpr complex_t operator()(int r, int c) const {
        return e[static_cast<std::size_t>(2 * r + c)];
    }
    constexpr complex_t &operator()(int r, int c) {
        return e[static_cast<std::size_t>(2 * r + c)];
    }

    [[nodiscard]] Complex2x2 adjoint() const;
    [[nodiscard]] complex_t trace() const { return e[0] + e[3]; }
    [[nodiscard]] complex_t determinant() const { return e[0] * e[3] - e[1] * e[2]; }
    [[nodiscard]] bool is_finite() const;

    /// Largest entry magnitude.
    [[nodiscard]] double max_abs() const;
    /// max |M - M^dagger|.
    [[nodiscard]] double hermiticity_defect() const;
    /// max |M^dagger M - I|.
    [[nodiscard]] double unitarity_defect() const;
    [[nodiscard]] bool is_unitary(double tol = kTolerance) const {
        return unitarity_defect() <= tol;
    }

    Complex2x2 &operator+=(const Complex2x2 &o);
    Complex2x2 &operator-=(const Complex2x2 &o);
    Complex2x2 &operator*=(complex_t s);
};

Complex2x2 operator+(Complex2x2 a, const Complex2x2 &b);
Complex2x2 operator-(Complex2x2 a, const Complex2x2 &b);
Complex2x2 operator*(const Complex2x2 &a, const Complex2x2 &b);
Complex2x2 operator*(complex_t s, Complex2x2 a);
std::array<complex_t, 2> operator*(const Complex2x2 &m,
                                   const std::array<complex_t, 2> &v);

/// Outer product |u><v|.
Complex2x2 outer(const std::array<complex_t, 2> &u,
                 const std::array<complex_t, 2> &v);

/**
 * Eigenvalues of the Hermitian part (M + M^dagger)/2 in ascending order,
 * from the closed-form quadratic.
 */
std::array<double, 2> hermitian_eigenvalues(const Complex2x2 &m);

/// Inverse via adjugate. Caller checks the determinant.
Complex2x2 inverse(const Complex2x2 &m);

/// Normalized pure qubit state a0|0> + a1|1>.
class QubitPureState {
  public:
    /// Throws DomainError unless |a0|^2 + |a1|^2 = 1 within kTolerance.
    QubitPureState(complex_t a0, complex_t a1);

    /// Rescales an arbitrary nonzero vector.
    static QubitPureState normalized(complex_t a0, complex_t a1);

    [[nodiscard]] complex_t a0() const noexcept { return amp_[0]; }
    [[nodiscard]] complex_t a1() const noexcept { return amp_[1]; }
    [[nodiscard]] const std::array<complex_t, 2> &amplitudes() const noexcept {
        return amp_;
    }

    [[nodiscard]] Complex2x2 projector() const { return outer(amp_, amp_); }
    /// Re <psi|M|psi>.
    [[nodiscard]] double expectation(const Complex2x2 &m) const;

  private:
    std::array<complex_t, 2> amp_;
};

/// Validated density matrix: Hermitian, unit trace, PSD (all within kTolerance).
class QubitDensity {
  public:
    explicit QubitDensity(const Complex2x2 &m);
    static QubitDensity from_pure(const QubitPureState &s) {
        return QubitDensity(s.projector());
    }

    [[nodiscard]] const Complex2x2 &matrix() const noexcept { return m_; }
    [[nodiscard]] std::array<double, 2> eigenvalues() const {
        return hermitian_eigenvalues(m_);
    }

  private:
    Complex2x2 m_;
};

} // namespace mirrorqsd
