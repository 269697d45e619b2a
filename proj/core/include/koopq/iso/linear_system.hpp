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
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace koopq::iso {

/// Linear flow x' = F x with a finite sample measure (uniform weights).
class LinearTestSystem {
  public:
    LinearTestSystem(Eigen::MatrixXd f, std::vector<Eigen::VectorXd> samples);

    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(f_.rows());
    }
    [[nodiscard]] const Eigen::MatrixXd &matrix() const noexcept { return f_; }
    [[nodiscard]] const std::vector<Eigen::VectorXd> &samples() const noexcept { return samples_; }
    [[nodiscard]] const Eigen::VectorXd &weights() const noexcept { return weights_; }

    /// exp(F t). Throws RangeError on overflow.
    [[nodiscard]] Eigen::MatrixXd flow(double t) const;

  private:
    Eigen::MatrixXd f_;
    std::vector<Eigen::VectorXd> samples_;
    Eigen::VectorXd weights_;
};

/// max Re(lambda) over the spectrum of F.
double spectral_abscissa(const Eigen::MatrixXd &f);

/// Gaussian matrix shifted so the spectral abscissa equals -margin.
Eigen::MatrixXd random_stable_matrix(std::size_t d, std::mt19937_64 &rng, double margin = 0.1);

/// F = P D P^-1 with well separated eigenvalues, all with negative real
/// part. When `complex_pairs` > 0 the first pairs are decaying rotations.
Eigen::MatrixXd random_diagonalizable_matrix(std::size_t d, std::mt19937_64 &rng,
                                             std::size_t complex_pairs = 0);

/// Points S^t x0 for every initial condition and time.
std::vector<Eigen::VectorXd> trajectory_samples(const Eigen::MatrixXd &f,
                                                const std::vector<Eigen::VectorXd> &initial,
                                                const std::vector<double> &times);

/// `n_trajectories` standard-normal initial conditions, each sampled at
/// `n_times` evenly spaced times in [0, t_max].
LinearTestSystem random_system(Eigen::MatrixXd f, std::size_t n_trajectories,
                               std::size_t n_times, double t_max, std::mt19937_64 &rng);

/// Koopman eigenfunctions phi_i(x) = <w_i, x> of a linear system, where w_i
/// are left eigenvectors of F (w_i^T F = lambda_i w_i^T), scaled to unit
/// Euclidean norm.
struct EigenfunctionSet {
    std::vector<std::complex<double>> lambdas;
    Eigen::MatrixXcd left; ///< row i holds w_i^T

    [[nodiscard]] std::size_t size() const noexcept { return lambdas.size(); }
    [[nodiscard]] std::complex<double> value(std::size_t i, const Eigen::VectorXd &x) const;
    /// samples x functions matrix of phi_i(x_s).
    [[nodiscard]] Eigen::MatrixXcd values(const std::vector<Eigen::VectorXd> &xs) const;
};

/// Throws UnsupportedInputError when F has repeated eigenvalues or an
/// ill-conditioned eigenbasis.
EigenfunctionSet eigenfunctions(const Eigen::MatrixXd &f);

} // namespace koopq::iso
