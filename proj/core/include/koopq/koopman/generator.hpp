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

#include <Eigen/Dense>

#include "koopq/koopman/hankel.hpp"

namespace koopq::koopman {

inline constexpr double kPinvRcond = 1e-10;

/// SVD pseudoinverse; singular values below rcond * sigma_max are dropped.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd &m, double rcond = kPinvRcond);

/// Second-order central difference over interior columns 1..k-2.
Eigen::MatrixXd central_difference(const Eigen::MatrixXd &v, double dt);

struct GeneratorFit {
    Eigen::MatrixXd generator;      ///< A, r x r
    Eigen::MatrixXd derivatives;    ///< r x (k-2)
    Eigen::MatrixXd residuals;      ///< r x (k-2), column j is time index j+1
    Eigen::VectorXd residual_norms; ///< length k-2
};

/// Least-squares continuous-time generator A = Vdot pinv(V) on the interior.
/// Throws NumericalError for all-zero coordinates.
GeneratorFit fit_generator(const Eigen::MatrixXd &reduced_coords, double dt,
                           double rcond = kPinvRcond);

/// Immutable result of the full lift / reduce / fit chain for one series.
struct KoopmanDecomposition {
    HankelConfig config;
    double dt = 1.0;
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd reduced_coords;
    Eigen::MatrixXd generator;
    Eigen::MatrixXd residuals;
    Eigen::VectorXd residual_norms;

    [[nodiscard]] std::size_t interior_begin() const noexcept { return 1; }
    [[nodiscard]] std::size_t interior_end() const noexcept {
        return static_cast<std::size_t>(reduced_coords.cols()) - 1;
    }
};

KoopmanDecomposition decompose(std::span<const double> samples, double dt,
                               const HankelConfig &config);

/// B = [I/(2dt), -A, -I/(2dt)], mapping the stacked state
/// [v(t+1); v(t); v(t-1)] onto the residual r(t).
Eigen::MatrixXd residual_map(const Eigen::MatrixXd &generator, double dt);

/// Positive semidefinite quadratic form B^T B of the residual energy.
class ResidualObservable {
  public:
    ResidualObservable(const Eigen::MatrixXd &generator, double dt);

    [[nodiscard]] const Eigen::MatrixXd &matrix() const noexcept { return gram_; }
    /// Energy of the state stacked around interior index t of `coords`.
    [[nodiscard]] double energy(const Eigen::MatrixXd &coords, std::size_t t) const;

  private:
    Eigen::MatrixXd gram_;
};

/// E(t) evaluated through the quadratic form. Throws std::out_of_range when t
/// is not an interior index.
double residual_energy(const KoopmanDecomposition &decomp, std::size_t t);

} // namespace koopq::koopman
