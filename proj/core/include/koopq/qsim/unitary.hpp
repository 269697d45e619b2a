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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace koopq::qsim {

/// Real parameters of a Hermitian generator on n qubits (4^n of them).
///
/// Layout, with D = 2^n:
///   [0, D)                      diagonal entries H_jj
///   [D, D + D(D-1)/2)           Re H_ij for i < j, row-major
///   [D + D(D-1)/2, D^2)         Im H_ij for i < j, row-major
struct UnitaryParams {
    int n_qubits = 1;
    std::vector<double> theta;

    [[nodiscard]] static std::size_t count(int n_qubits) noexcept {
        return std::size_t{1} << (2 * n_qubits);
    }
    static UnitaryParams zeros(int n_qubits);
};

Eigen::MatrixXcd hermitian_generator(const UnitaryParams &params);
/// Inverse of hermitian_generator for an exactly Hermitian input.
UnitaryParams params_from_hermitian(const Eigen::MatrixXcd &h);

/// exp(-iH) through the spectral decomposition H = V diag(mu) V^H, retained
/// so that parameter derivatives can reuse it.
class UnitaryExp {
  public:
    explicit UnitaryExp(const UnitaryParams &params);

    [[nodiscard]] const Eigen::MatrixXcd &unitary() const noexcept { return unitary_; }
    [[nodiscard]] const Eigen::VectorXd &eigenvalues() const noexcept { return mu_; }

    /// Gradient of sum_s 2 Re(c_s^H dU psi_s) given S = sum_s psi_s c_s^H.
    /// Uses the divided-difference (Daleckii-Krein) form of d exp(-iH).
    [[nodiscard]] std::vector<double> gradient_from_outer(const Eigen::MatrixXcd &outer) const;

  private:
    int n_qubits_;
    Eigen::VectorXd mu_;
    Eigen::MatrixXcd basis_;
    Eigen::MatrixXcd unitary_;
};

Eigen::MatrixXcd build_unitary(const UnitaryParams &params);

/// d/dtheta of sum_q w_q <Z_q> for the state exp(-iH(theta)) encode(angles).
std::vector<double> gradient(const UnitaryParams &params, std::span<const double> angles,
                             std::span<const double> weights);

/// Maps dH_jk-style gradients onto the parameter layout above.
std::vector<double> project_generator_gradient(const Eigen::MatrixXcd &y, int n_qubits);

} // namespace koopq::qsim
