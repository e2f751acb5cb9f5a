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

#include "mirrorqsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorqsd/errors.hpp"

namespace mirrorqsd {

Complex2x2 Complex2x2::adjoint() const {
    return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
}

bool Complex2x2::is_finite() const {
    return std::all_of(e.begin(), e.end(), [](complex_t z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double Complex2x2::max_abs() const {
    double m = 0.0;
    for (const auto &z : e) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double Complex2x2::hermiticity_defect() const { return (*this - adjoint()).max_abs(); }

double Complex2x2::unitarity_defect() const {
    return (adjoint() * *this - identity()).max_abs();
}

Complex2x2 &Complex2x2::operator+=(const Complex2x2 &o) {
    for (std::size_t i = 0; i < 4; ++i) {
        e[i] += o.e[i];
    }
    return *this;
}

Complex2x2 &Complex2x2::operator-=(const Complex2x2 &o) {
    for (std::size_t i = 0; i < 4; ++i) {
        e[i] -= o.e[i];
    }
    return *this;
}

Complex2x2 &Complex2x2::operator*=(complex_t s) {
    for (auto &z : e) {
        z *= s;
    }
    return *this;
}

Complex2x2 operator+(Complex2x2 a, const Complex2x2 &b) { return a += b; }
Complex2x2 operator-(Complex2x2 a, const Complex2x2 &b) { return a -= b; }
Complex2x2 operator*(complex_t s, Complex2x2 a) { return a *= s; }

Complex2x2 operator*(const Complex2x2 &a, const Complex2x2 &b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

std::array<complex_t, 2> operator*(const Complex2x2 &m,
                                   const std::array<complex_t, 2> &v) {
    return {m.e[0] * v[0] + m.e[1] * v[1], m.e[2] * v[0] + m.e[3] * v[1]};
}

Complex2x2 outer(const std::array<complex_t, 2> &u,
                 const std::array<complex_t, 2> &v) {
    return {u[0] * std::conj(v[0]), u[0] * std::conj(v[1]), u[1] * std::conj(v[0]),
            u[1] * std::conj(v[1])};
}

std::array<double, 2> hermitian_eigenvalues(const Complex2x2 &m) {
    // Hermitian part [[a, b], [conj(b), d]] with a, d real.
    const double a = m.e[0].real();
    const double d = m.e[3].real();
    const complex_t b = 0.5 * (m.e[1] + std::conj(m.e[2]));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

Complex2x2 inverse(const Complex2x2 &m) {
    const complex_t det = m.determinant();
    if (det == complex_t{} || !std::isfinite(std::abs(det))) {
        throw DomainError("matrix is singular");
    }
    return (1.0 / det) * Complex2x2{m.e[3], -m.e[1], -m.e[2], m.e[0]};
}

QubitPureState::QubitPureState(complex_t a0, complex_t a1) : amp_{a0, a1} {
    const double norm = std::norm(a0) + std::norm(a1);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kTolerance) {
        throw DomainError("qubit state not normalized: |a0|^2 + |a1|^2 = " +
                          std::to_string(norm));
    }
}

QubitPureState QubitPureState::normalized(complex_t a0, complex_t a1) {
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("cannot normalize a zero or non-finite vector");
    }
    return {a0 / n, a1 / n};
}

double QubitPureState::expectation(const Complex2x2 &m) const {
    const auto mv = m * amp_;
    return (std::conj(amp_[0]) * mv[0] + std::conj(amp_[1]) * mv[1]).real();
}

QubitDensity::QubitDensity(const Complex2x2 &m) : m_(m) {
    if (!m.is_finite()) {
        throw DomainError("density matrix has non-finite entries");
    }
    if (m.hermiticity_defect() > kTolerance) {
        throw DomainError("density matrix not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > kTolerance) {
        throw DomainError("density matrix trace differs from 1");
    }
    if (hermitian_eigenvalues(m)[0] < -kTolerance) {
        throw DomainError("density matrix has a negative eigenvalue");
    }
}

} // namespace mirrorqsd
