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
#include "koopq/qsim/state.hpp"

#include <cmath>
#include <string>

#include "koopq/errors.hpp"

namespace koopq::qsim {

namespace {

void check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw SizingError("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
}

} // namespace

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    amplitudes_(0) = 1.0;
}

QuantumState::QuantumState(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
        throw SizingError("amplitude vector length does not match 2^n");
    }
}

QuantumState encode_angles(std::span<const double> angles) {
    const int n = static_cast<int>(angles.size());
    check_qubits(n);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> c(angles.size());
    std::vector<double> s(angles.size());
    for (std::size_t q = 0; q < angles.size(); ++q) {
        c[q] = std::cos(angles[q]);
        s[q] = std::sin(angles[q]);
    }
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        double a = 1.0;
        for (int q = 0; q < n; ++q) {
            a *= z_sign(b, q, n) > 0 ? c[static_cast<std::size_t>(q)] : s[static_cast<std::size_t>(q)];
        }
        amps(static_cast<Eigen::Index>(b)) = a;
    }
    return QuantumState(n, std::move(amps));
}

QuantumState apply_unitary(const QuantumState &state, const Eigen::MatrixXcd &unitary) {
    if (unitary.rows() != state.dimension() || unitary.cols() != state.dimension()) {
        throw SizingError("unitary of size " + std::to_string(unitary.rows()) + "x" +
                          std::to_string(unitary.cols()) + " applied to state of dimension " +
                          std::to_string(state.dimension()));
    }
    return QuantumState(state.n_qubits(), unitary * state.amplitudes());
}

ExpectationVector z_expectations(const QuantumState &state) {
    const int n = state.n_qubits();
    ExpectationVector out(static_cast<std::size_t>(n), 0.0);
    const auto &amps = state.amplitudes();
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        const double p = std::norm(amps(b));
        for (int q = 0; q < n; ++q) {
            out[static_cast<std::size_t>(q)] += p * z_sign(static_cast<std::size_t>(b), q, n);
        }
    }
    return out;
}

ExpectationVector sample_z_expectations(const QuantumState &state, std::size_t shots,
                                        std::mt19937_64 &rng) {
    if (shots == 0) throw ValidationError("shot count must be positive");
    const auto &amps = state.amplitudes();
    std::vector<double> probs(static_cast<std::size_t>(amps.size()));
    for (Eigen::Index b = 0; b < amps.size(); ++b) probs[static_cast<std::size_t>(b)] = std::norm(amps(b));
    std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
    const int n = state.n_qubits();
    ExpectationVector out(static_cast<std::size_t>(n), 0.0);
    for (std::size_t s = 0; s < shots; ++s) {
        const std::size_t b = dist(rng);
        for (int q = 0; q < n; ++q) out[static_cast<std::size_t>(q)] += z_sign(b, q, n);
    }
    for (double &v : out) v /= static_cast<double>(shots);
    return out;
}

Eigen::VectorXcd z_cotangent(const QuantumState &state, std::span<const double> weights) {
    const int n = state.n_qubits();
    if (weights.size() != static_cast<std::size_t>(n)) {
        throw SizingError("observable weight count does not match qubit count");
    }
    const auto &amps = state.amplitudes();
    Eigen::VectorXcd c(amps.size());
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        double dp = 0.0;
        for (int q = 0; q < n; ++q) {
            dp += weights[static_cast<std::size_t>(q)] * z_sign(static_cast<std::size_t>(b), q, n);
        }
        c(b) = dp * amps(b);
    }
    return c;
}

} // namespace koopq::qsim
