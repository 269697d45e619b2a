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
#include "koopq/koopman/hankel.hpp"

#include <algorithm>
#include <string>

#include "koopq/errors.hpp"

namespace koopq::koopman {

std::size_t HankelConfig::rows(std::size_t T) const noexcept {
    if (d_h == 0 || tau_h == 0) return 0;
    const std::size_t span = (d_h - 1) * tau_h;
    return T > span ? T - span : 0;
}

std::size_t HankelConfig::min_length() const noexcept {
    return (d_h - 1) * tau_h + rank + 2;
}

bool HankelConfig::feasible(std::size_t T) const noexcept {
    if (d_h < 2 || tau_h < 1 || rank < 1 || rank > d_h) return false;
    const std::size_t k = rows(T);
    return k >= rank + 2;
}

void validate(const HankelConfig &config, std::size_t T) {
    if (config.d_h < 2) throw SizingError("hankel d_h must be >= 2");
    if (config.tau_h < 1) throw SizingError("hankel tau_h must be >= 1");
    if (config.rank < 1) throw SizingError("hankel rank must be >= 1");
    if (config.rank > config.d_h) {
        throw SizingError("hankel rank " + std::to_string(config.rank) + " exceeds d_h " +
                          std::to_string(config.d_h));
    }
    if (!config.feasible(T)) {
        throw SizingError("series length " + std::to_string(T) +
                          " too short for Hankel config; need at least " +
                          std::to_string(config.min_length()));
    }
}

Eigen::MatrixXd build_hankel(std::span<const double> samples, const HankelConfig &config) {
    validate(config, samples.size());
    const auto k = static_cast<Eigen::Index>(config.rows(samples.size()));
    const auto d = static_cast<Eigen::Index>(config.d_h);
    const auto tau = static_cast<Eigen::Index>(config.tau_h);
    Eigen::MatrixXd h(k, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < k; ++i) {
            h(i, j) = samples[static_cast<std::size_t>(i + j * tau)];
        }
    }
    return h;
}

Reduction reduce(const Eigen::MatrixXd &hankel, std::size_t rank) {
    const auto r = static_cast<Eigen::Index>(rank);
    const Eigen::Index k = hankel.rows();
    const Eigen::Index d = hankel.cols();
    if (r < 1 || r > std::min(k, d)) {
        throw SizingError("rank " + std::to_string(rank) + " outside [1, min(" +
                          std::to_string(k) + ", " + std::to_string(d) + ")]");
    }

    if (!hankel.allFinite()) throw NumericalError("Hankel matrix contains non-finite values");

    Reduction out;
    if (k >= 2 * d) {
        // Tall: SVD of the triangular QR factor carries the same spectrum and
        // right vectors at a fraction of the cost.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(hankel);
        Eigen::MatrixXd tri = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(tri, Eigen::ComputeFullV);
        out.spectrum = svd.singularValues();
        out.right_vectors = svd.matrixV().leftCols(r);
        out.reduced_coords = out.right_vectors.transpose() * hankel.transpose();
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(hankel, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.spectrum = svd.singularValues();
        out.right_vectors = svd.matrixV().leftCols(r);
        out.reduced_coords =
            (svd.matrixU().leftCols(r) * out.spectrum.head(r).asDiagonal()).transpose();
    }
    if (!out.spectrum.allFinite() || !out.reduced_coords.allFinite()) {
        throw NumericalError("SVD of Hankel matrix produced non-finite values");
    }
    out.singular_values = out.spectrum.head(r);
    return out;
}

Eigen::MatrixXd reconstruct(const Reduction &reduction) {
    return reduction.reduced_coords.transpose() * reduction.right_vectors.transpose();
}

} // namespace koopq::koopman
