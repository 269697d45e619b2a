// Copyright 2026 The koopq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace koopq::qsim {

inline constexpr int kMaxQubits = 12;

/// Per-qubit <Z> values, each in [-1, 1].
using ExpectationVector = std::vector<double>;

/// Dense statevector. Qubit 0 is the most significant bit of the basis index.
class QuantumState {
  public:
    /// |0...0> on n qubits. Throws SizingError outside [1, kMaxQubits].
    explicit QuantumState(int n_qubits);
    QuantumState(int n_qubits, Eigen::VectorXcd amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }

  private:
    int n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

/// +1 when `qubit` is 0 in basis index `b`, else -1.
[[nodiscard]] inline double z_sign(std::size_t b, int qubit, int n_qubits) noexcept {
    return ((b >> (n_qubits - 1 - qubit)) & 1U) ? -1.0 : 1.0;
}

/// Product state of R_y(phi) = [[cos phi, -sin phi], [sin phi, cos phi]]
/// applied to |0> on each qubit. Note the full-angle convention.
QuantumState encode_angles(std::span<const double> angles);

QuantumState apply_unitary(const QuantumState &state, const Eigen::MatrixXcd &unitary);

/// Exact expectation values (no shot noise).
ExpectationVector z_expectations(const QuantumState &state);

/// Shot-sampled estimate of the same quantity.
ExpectationVector sample_z_expectations(const QuantumState &state, std::size_t shots,
                                        std::mt19937_64 &rng);

/// Cotangent dL/d(conj psi) for L = sum_q w_q <Z_q>, such that
/// dL = 2 Re(c^H dpsi).
Eigen::VectorXcd z_cotangent(const QuantumState &state, std::span<const double> weights);

} // namespace koopq::qsim
