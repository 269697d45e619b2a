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
#include <vector>

#include <Eigen/Dense>

namespace koopq::qsim {

/// L layers of per-qubit R_y rotations, each followed by a CNOT ring
/// (a single CNOT for two qubits, none for one).
struct LayeredParams {
    int n_qubits = 1;
    int layers = 1;
    std::vector<double> theta; ///< index l * n_qubits + q

    [[nodiscard]] static std::size_t count(int n_qubits, int layers) noexcept {
        return static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(layers);
    }
};

/// Full-space matrix of a single-qubit gate acting on `qubit`.
Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd &gate, int qubit, int n_qubits);
Eigen::MatrixXcd cnot(int control, int target, int n_qubits);
Eigen::Matrix2cd ry_gate(double phi);

Eigen::MatrixXcd build_layered_unitary(const LayeredParams &params);

/// Same contract as UnitaryExp::gradient_from_outer. Each rotation satisfies
/// dR_y(t)/dt = R_y(t + pi/2), so derivatives are exact shifted unitaries.
std::vector<double> layered_gradient_from_outer(const LayeredParams &params,
                                                const Eigen::MatrixXcd &outer);

} // namespace koopq::qsim
