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

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "koopq/iso/linear_system.hpp"

namespace koopq::iso {

using Observable = std::function<double(const Eigen::VectorXd &)>;

/// Coordinate functions, pairwise products and one smooth nonlinear map.
std::vector<Observable> default_observables(std::size_t d);

/// max over observables and samples of |g(S^{t+s} x) - g(S^t S^s x)|.
double verify_semigroup(const LinearTestSystem &sys, const std::vector<Observable> &observables,
                        double t, double s);

/// max over samples and times of |phi_i(S^t x) - e^{lambda_i t} phi_i(x)|.
double verify_eigenfunction(const LinearTestSystem &sys, const EigenfunctionSet &eigs,
                            std::size_t i, const std::vector<double> &t_grid);

struct ProductCheck {
    std::complex<double> eigenvalue; ///< lambda_i + lambda_j
    double deviation = 0.0;
};

/// Checks that phi_i * phi_j evolves as an eigenfunction with eigenvalue
/// lambda_i + lambda_j.
ProductCheck verify_eigenfunction_product(const LinearTestSystem &sys,
                                          const EigenfunctionSet &eigs, std::size_t i,
                                          std::size_t j, const std::vector<double> &t_grid);
/// As above, computing the eigenfunctions of sys first.
ProductCheck verify_eigenfunction_product(const LinearTestSystem &sys, std::size_t i,
                                          std::size_t j, const std::vector<double> &t_grid);

/// Linear map from span{phi_i} into a 2^n dimensional register obtained by
/// Gram-Schmidt under the empirical inner product
/// <f, g> = sum_s w_s conj(f(x_s)) g(x_s); the k-th orthonormal function is
/// sent to basis state |k>.
struct Embedding {
    int n_qubits = 0;
    Eigen::MatrixXcd coefficients;  ///< d x d upper triangular, phi_i = sum_k R_ki psi_k
    Eigen::MatrixXcd vectors;       ///< 2^n x d, column i is R(phi_i)
    Eigen::MatrixXcd function_gram; ///< empirical Gram of the phi_i
    double orthonormal_deviation = 0.0; ///< ||Gram(psi) - I||_max
    double gram_deviation = 0.0;        ///< ||vectors^H vectors - function_gram||_max

    [[nodiscard]] double deviation() const noexcept {
        return std::max(orthonormal_deviation, gram_deviation);
    }
};

/// `values` is samples x functions. Throws SizingError when 2^n < d and
/// DegeneracyError naming the first dependent function.
Embedding verify_isometric_embedding(const Eigen::MatrixXcd &values,
                                     const Eigen::VectorXd &weights, int n_qubits);
Embedding verify_isometric_embedding(const EigenfunctionSet &eigs, const LinearTestSystem &sys,
                                     int n_qubits);

/// H_eff = diag(i lambda_k) on basis states |k>, zero on the remaining states.
Eigen::MatrixXcd basis_effective_generator(const std::vector<std::complex<double>> &lambdas,
                                           int n_qubits);
/// H_eff = i E Lambda E^+ with E the embedded eigenfunctions, zero on the
/// orthogonal complement of their span.
Eigen::MatrixXcd embedded_effective_generator(const std::vector<std::complex<double>> &lambdas,
                                              const Embedding &embedding);
/// exp(-i H t) through the general matrix exponential.
Eigen::MatrixXcd evolution(const Eigen::MatrixXcd &h_eff, double t);

struct ModeCheck {
    double basis_deviation = 0.0;    ///< max ||e^{-iHt}|k> - e^{lambda_k t}|k>||
    double embedded_deviation = 0.0; ///< same for R(phi_k) under the embedded H_eff

    [[nodiscard]] double deviation() const noexcept {
        return std::max(basis_deviation, embedded_deviation);
    }
};

/// `perturbation` is added to lambda_0 when H_eff is built (not in the
/// reference evolution) so that a negative control can be run.
ModeCheck verify_mode_preservation(const std::vector<std::complex<double>> &lambdas,
                                   const Embedding &embedding, const std::vector<double> &t_grid,
                                   std::complex<double> perturbation = {});

/// Purely imaginary spectra only: the Hermitian H_eff is passed through the
/// quantum simulator's own unitary construction. Throws ValidationError for
/// lambdas with a real part.
double verify_mode_preservation_unitary(const std::vector<std::complex<double>> &lambdas,
                                        int n_qubits, const std::vector<double> &t_grid,
                                        std::complex<double> perturbation = {});

} // namespace koopq::iso
