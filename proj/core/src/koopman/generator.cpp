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
#include "koopq/koopman/generator.hpp"

#include <stdexcept>
#include <string>

#include "koopq/errors.hpp"

namespace koopq::koopman {

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd &m, double rcond) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    if (!s.allFinite()) {
        throw NumericalError("pseudo_inverse: SVD produced non-finite singular values");
    }
    const double cutoff = s.size() > 0 ? rcond * s(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::MatrixXd central_difference(const Eigen::MatrixXd &v, double dt) {
    const Eigen::Index k = v.cols();
    if (k < 3) throw SizingError("central difference needs at least 3 columns");
    return (v.rightCols(k - 2) - v.leftCols(k - 2)) / (2.0 * dt);
}

GeneratorFit fit_generator(const Eigen::MatrixXd &reduced_coords, double dt, double rcond) {
    const Eigen::Index r = reduced_coords.rows();
    const Eigen::Index k = reduced_coords.cols();
    if (!(dt > 0.0)) throw ValidationError("fit_generator: dt must be positive");
    if (k < r + 2) {
        throw SizingError("fit_generator: need k >= r + 2, got k=" + std::to_string(k) +
                          ", r=" + std::to_string(r));
    }
    if (reduced_coords.cwiseAbs().maxCoeff() == 0.0) {
        throw NumericalError("fit_generator: reduced coordinates are identically zero");
    }

    GeneratorFit fit;
    fit.derivatives = central_difference(reduced_coords, dt);
    const auto interior = reduced_coords.middleCols(1, k - 2);

    // pinv(V) = P S^+ Q^T for V^T = P S Q^T.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(interior.transpose(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const double cutoff = rcond * s(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    }
    fit.generator =
        ((fit.derivatives * svd.matrixU()) * inv.asDiagonal()) * svd.matrixV().transpose();
    fit.residuals = fit.derivatives - fit.generator * interior;
    fit.residual_norms = fit.residuals.colwise().norm().transpose();
    if (!fit.generator.allFinite() || !fit.residual_norms.allFinite()) {
        throw NumericalError("fit_generator: non-finite generator or residuals");
    }
    return fit;
}

KoopmanDecomposition decompose(std::span<const double> samples, double dt,
                               const HankelConfig &config) {
    auto reduction = reduce(build_hankel(samples, config), config.rank);
    auto fit = fit_generator(reduction.reduced_coords, dt);
    KoopmanDecomposition out;
    out.config = config;
    out.dt = dt;
    out.singular_values = std::move(reduction.singular_values);
    out.reduced_coords = std::move(reduction.reduced_coords);
    out.generator = std::move(fit.generator);
    out.residuals = std::move(fit.residuals);
    out.residual_norms = std::move(fit.residual_norms);
    return out;
}

Eigen::MatrixXd residual_map(const Eigen::MatrixXd &generator, double dt) {
    const Eigen::Index r = generator.rows();
    Eigen::MatrixXd b(r, 3 * r);
    const Eigen::MatrixXd half = Eigen::MatrixXd::Identity(r, r) / (2.0 * dt);
    b << half, -generator, -half;
    return b;
}

ResidualObservable::ResidualObservable(const Eigen::MatrixXd &generator, double dt) {
    const Eigen::MatrixXd b = residual_map(generator, dt);
    gram_ = b.transpose() * b;
}

double ResidualObservable::energy(const Eigen::MatrixXd &coords, std::size_t t) const {
    const Eigen::Index r = coords.rows();
    const auto ti = static_cast<Eigen::Index>(t);
    if (ti < 1 || ti + 1 >= coords.cols()) {
        throw std::out_of_range("residual energy index " + std::to_string(t) +
                                " is not interior");
    }
    Eigen::VectorXd stacked(3 * r);
    stacked << coords.col(ti + 1), coords.col(ti), coords.col(ti - 1);
    return stacked.dot(gram_ * stacked);
}

double residual_energy(const KoopmanDecomposition &decomp, std::size_t t) {
    return ResidualObservable(decomp.generator, decomp.dt).energy(decomp.reduced_coords, t);
}

} // namespace koopq::koopman
