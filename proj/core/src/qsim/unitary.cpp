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
#include "koopq/qsim/unitary.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "koopq/errors.hpp"
#include "koopq/qsim/state.hpp"

namespace koopq::qsim {

namespace {

using cd = std::complex<double>;

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

} // namespace

UnitaryParams UnitaryParams::zeros(int n_qubits) {
    return {n_qubits, std::vector<double>(count(n_qubits), 0.0)};
}

Eigen::MatrixXcd hermitian_generator(const UnitaryParams &params) {
    if (params.n_qubits < 1 || params.n_qubits > kMaxQubits) {
        throw SizingError("qubit count outside supported range");
    }
    if (params.theta.size() != UnitaryParams::count(params.n_qubits)) {
        throw SizingError("expected " + std::to_string(UnitaryParams::count(params.n_qubits)) +
                          " generator parameters, got " + std::to_string(params.theta.size()));
    }
    const Eigen::Index d = dim_of(params.n_qubits);
    const std::size_t pairs = static_cast<std::size_t>(d * (d - 1) / 2);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        h(j, j) = params.theta[static_cast<std::size_t>(j)];
    }
    std::size_t p = 0;
    const auto base = static_cast<std::size_t>(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j, ++p) {
            const cd v(params.theta[base + p], params.theta[base + pairs + p]);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

UnitaryParams params_from_hermitian(const Eigen::MatrixXcd &h) {
    const Eigen::Index d = h.rows();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if (h.cols() != d || dim_of(n) != d) throw SizingError("generator must be 2^n x 2^n");
    UnitaryParams out = UnitaryParams::zeros(n);
    const std::size_t pairs = static_cast<std::size_t>(d * (d - 1) / 2);
    const auto base = static_cast<std::size_t>(d);
    for (Eigen::Index j = 0; j < d; ++j) out.theta[static_cast<std::size_t>(j)] = h(j, j).real();
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j, ++p) {
            out.theta[base + p] = h(i, j).real();
            out.theta[base + pairs + p] = h(i, j).imag();
        }
    }
    return out;
}

UnitaryExp::UnitaryExp(const UnitaryParams &params) : n_qubits_(params.n_qubits) {
    const Eigen::MatrixXcd h = hermitian_generator(params);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigendecomposition did not converge");
    }
    mu_ = eig.eigenvalues();
    basis_ = eig.eigenvectors();
    Eigen::VectorXcd phases(mu_.size());
    for (Eigen::Index i = 0; i < mu_.size(); ++i) phases(i) = std::exp(cd(0.0, -mu_(i)));
    unitary_ = basis_ * phases.asDiagonal() * basis_.adjoint();
}

std::vector<double> UnitaryExp::gradient_from_outer(const Eigen::MatrixXcd &outer) const {
    const Eigen::Index d = mu_.size();
    if (outer.rows() != d || outer.cols() != d) throw SizingError("outer product has wrong shape");
    // Divided differences of exp(-ix), written with sinc so that coincident
    // eigenvalues take the derivative limit without branching.
    Eigen::MatrixXcd rotated = basis_.adjoint() * outer * basis_;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double gap = mu_(i) - mu_(j);
            const double mid = 0.5 * (mu_(i) + mu_(j));
            const cd dd = cd(0.0, -1.0) * std::exp(cd(0.0, -mid)) * sinc(0.5 * gap);
            rotated(i, j) *= dd;
        }
    }
    const Eigen::MatrixXcd y = basis_ * rotated * basis_.adjoint();
    return project_generator_gradient(y, n_qubits_);
}

std::vector<double> project_generator_gradient(const Eigen::MatrixXcd &y, int n_qubits) {
    const Eigen::Index d = dim_of(n_qubits);
    const std::size_t pairs = static_cast<std::size_t>(d * (d - 1) / 2);
    const auto base = static_cast<std::size_t>(d);
    std::vector<double> g(UnitaryParams::count(n_qubits), 0.0);
    for (Eigen::Index p = 0; p < d; ++p) g[static_cast<std::size_t>(p)] = 2.0 * y(p, p).real();
    std::size_t k = 0;
    for (Eigen::Index p = 0; p < d; ++p) {
        for (Eigen::Index q = p + 1; q < d; ++q, ++k) {
            g[base + k] = 2.0 * (y(q, p).real() + y(p, q).real());
            g[base + pairs + k] = 2.0 * (y(p, q).imag() - y(q, p).imag());
        }
    }
    return g;
}

Eigen::MatrixXcd build_unitary(const UnitaryParams &params) {
    return UnitaryExp(params).unitary();
}

std::vector<double> gradient(const UnitaryParams &params, std::span<const double> angles,
                             std::span<const double> weights) {
    const auto input = encode_angles(angles);
    if (input.n_qubits() != params.n_qubits) {
        throw SizingError("angle count does not match circuit qubit count");
    }
    UnitaryExp u(params);
    const auto out = apply_unitary(input, u.unitary());
    const Eigen::VectorXcd c = z_cotangent(out, weights);
    return u.gradient_from_outer(input.amplitudes() * c.adjoint());
}

} // namespace koopq::qsim
