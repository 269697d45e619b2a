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
#include "koopq/qsim/layered.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "koopq/errors.hpp"
#include "koopq/qsim/state.hpp"

namespace koopq::qsim {

Eigen::Matrix2cd ry_gate(double phi) {
    Eigen::Matrix2cd g;
    g << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return g;
}

Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd &gate, int qubit, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const int shift = n_qubits - 1 - qubit;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
        const int rbit = static_cast<int>((row >> shift) & 1);
        for (int cbit = 0; cbit < 2; ++cbit) {
            const Eigen::Index col = (row & ~(Eigen::Index{1} << shift)) |
                                     (static_cast<Eigen::Index>(cbit) << shift);
            out(row, col) = gate(rbit, cbit);
        }
    }
    return out;
}

Eigen::MatrixXcd cnot(int control, int target, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const int cs = n_qubits - 1 - control;
    const int ts = n_qubits - 1 - target;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const Eigen::Index mapped = ((b >> cs) & 1) ? (b ^ (Eigen::Index{1} << ts)) : b;
        out(mapped, b) = 1.0;
    }
    return out;
}

namespace {

void check(const LayeredParams &p) {
    if (p.n_qubits < 1 || p.n_qubits > kMaxQubits || p.layers < 1) {
        throw SizingError("layered ansatz needs n_qubits in range and layers >= 1");
    }
    if (p.theta.size() != LayeredParams::count(p.n_qubits, p.layers)) {
        throw SizingError("expected " + std::to_string(LayeredParams::count(p.n_qubits, p.layers)) +
                          " layered parameters, got " + std::to_string(p.theta.size()));
    }
}

Eigen::MatrixXcd entangler(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd ring = Eigen::MatrixXcd::Identity(dim, dim);
    if (n == 2) {
        ring = cnot(0, 1, n);
    } else if (n > 2) {
        for (int q = 0; q < n; ++q) ring = cnot(q, (q + 1) % n, n) * ring;
    }
    return ring;
}

Eigen::MatrixXcd assemble(const LayeredParams &p, const Eigen::MatrixXcd &ring) {
    const Eigen::Index dim = Eigen::Index{1} << p.n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (int l = 0; l < p.layers; ++l) {
        for (int q = 0; q < p.n_qubits; ++q) {
            const double t = p.theta[static_cast<std::size_t>(l * p.n_qubits + q)];
            u = embed_single(ry_gate(t), q, p.n_qubits) * u;
        }
        u = ring * u;
    }
    return u;
}

} // namespace

Eigen::MatrixXcd build_layered_unitary(const LayeredParams &params) {
    check(params);
    return assemble(params, entangler(params.n_qubits));
}

std::vector<double> layered_gradient_from_outer(const LayeredParams &params,
                                                const Eigen::MatrixXcd &outer) {
    check(params);
    const Eigen::MatrixXcd ring = entangler(params.n_qubits);
    std::vector<double> g(params.theta.size(), 0.0);
    LayeredParams shifted = params;
    for (std::size_t k = 0; k < params.theta.size(); ++k) {
        shifted.theta[k] = params.theta[k] + std::numbers::pi / 2.0;
        const Eigen::MatrixXcd du = assemble(shifted, ring);
        shifted.theta[k] = params.theta[k];
        g[k] = 2.0 * (du * outer).trace().real();
    }
    return g;
}

} // namespace koopq::qsim
