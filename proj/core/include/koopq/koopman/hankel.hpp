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

namespace koopq::koopman {

/// Delay-embedding dimension, delay (in samples), and truncation rank.
struct HankelConfig {
    std::size_t d_h = 64;
    std::size_t tau_h = 1;
    std::size_t rank = 11;

    /// Number of delay vectors k_H for a series of length T, or 0 when the
    /// window does not fit.
    [[nodiscard]] std::size_t rows(std::size_t T) const noexcept;
    /// Shortest series for which the config is feasible.
    [[nodiscard]] std::size_t min_length() const noexcept;
    [[nodiscard]] bool feasible(std::size_t T) const noexcept;

    bool operator==(const HankelConfig &) const = default;
};

/// Throws SizingError (reporting min_length()) when infeasible for length T.
void validate(const HankelConfig &config, std::size_t T);

/// Row i holds [x_i, x_{i+tau}, ..., x_{i+(d-1)tau}]; shape k_H x d_H.
Eigen::MatrixXd build_hankel(std::span<const double> samples, const HankelConfig &config);

struct Reduction {
    Eigen::VectorXd spectrum;        ///< every singular value, descending
    Eigen::VectorXd singular_values; ///< the leading `rank` values
    Eigen::MatrixXd right_vectors;   ///< d_H x rank
    Eigen::MatrixXd reduced_coords;  ///< rank x k_H; column t is v(t)
};

/// Truncated SVD of a Hankel matrix. The reduced coordinates are the
/// projections of the delay vectors onto the dominant right singular vectors,
/// i.e. Sigma_r U_r^T, so that one column corresponds to one time index.
Reduction reduce(const Eigen::MatrixXd &hankel, std::size_t rank);

/// Best rank-r approximation U_r Sigma_r V_r^T rebuilt from a reduction.
Eigen::MatrixXd reconstruct(const Reduction &reduction);

} // namespace koopq::koopman
