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
#include "koopq/iso/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "koopq/errors.hpp"
#include "koopq/iso/expm.hpp"

namespace koopq::iso {

namespace {

constexpr double kDistinctTol = 1e-6;
constexpr double kMaxEigenbasisCondition = 1e10;

Eigen::MatrixXd gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = n01(rng);
    }
    return m;
}

} // namespace

LinearTestSystem::LinearTestSystem(Eigen::MatrixXd f, std::vector<Eigen::VectorXd> samples)
    : f_(std::move(f)), samples_(std::move(samples)) {
    if (f_.rows() != f_.cols() || f_.rows() == 0) {
        throw SizingError("system matrix must be square and non-empty");
    }
    if (samples_.empty()) throw SizingError("linear test system needs at least one sample");
    for (const auto &x : samples_) {
        if (x.size() != f_.rows()) throw SizingError("sample dimension does not match F");
    }
    weights_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(samples_.size()),
                                         1.0 / static_cast<double>(samples_.size()));
}

Eigen::MatrixXd LinearTestSystem::flow(double t) const { return expm(Eigen::MatrixXd(f_ * t)); }

double spectral_abscissa(const Eigen::MatrixXd &f) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(f, false);
    return es.eigenvalues().real().maxCoeff();
}

Eigen::MatrixXd random_stable_matrix(std::size_t d, std::mt19937_64 &rng, double margin) {
    Eigen::MatrixXd a = gaussian(d, d, rng) / std::sqrt(static_cast<double>(d));
    const double shift = spectral_abscissa(a) + margin;
    a.diagonal().array() -= shift;
    return a;
}

Eigen::MatrixXd random_diagonalizable_matrix(std::size_t d, std::mt19937_64 &rng,
                                             std::size_t complex_pairs) {
    if (2 * complex_pairs > d) throw SizingError("too many complex pairs for dimension");
    std::uniform_real_distribution<double> jitter(0.0, 0.3);
    std::uniform_real_distribution<double> freq(0.5, 2.5);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                  static_cast<Eigen::Index>(d));
    // Real parts -0.5, -1.0, ... keep eigenvalues distinct.
    Eigen::Index i = 0;
    double rate = 0.0;
    for (std::size_t p = 0; p < complex_pairs; ++p, i += 2) {
        rate += 0.5;
        const double a = -(rate + jitter(rng));
        const double w = freq(rng);
        block(i, i) = a;
        block(i + 1, i + 1) = a;
        block(i, i + 1) = -w;
        block(i + 1, i) = w;
    }
    for (; i < block.rows(); ++i) {
        rate += 0.5;
        block(i, i) = -(rate + jitter(rng));
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(block.rows(), block.cols()) +
                        0.4 * gaussian(d, d, rng) / std::sqrt(static_cast<double>(d));
    return p * block * p.inverse();
}

std::vector<Eigen::VectorXd> trajectory_samples(const Eigen::MatrixXd &f,
                                                const std::vector<Eigen::VectorXd> &initial,
                                                const std::vector<double> &times) {
    std::vector<Eigen::MatrixXd> flows;
    flows.reserve(times.size());
    for (double t : times) flows.push_back(expm(Eigen::MatrixXd(f * t)));
    std::vector<Eigen::VectorXd> out;
    out.reserve(initial.size() * times.size());
    for (const auto &x0 : initial) {
        for (const auto &m : flows) out.emplace_back(m * x0);
    }
    return out;
}

LinearTestSystem random_system(Eigen::MatrixXd f, std::size_t n_trajectories,
                               std::size_t n_times, double t_max, std::mt19937_64 &rng) {
    const std::size_t d = static_cast<std::size_t>(f.rows());
    std::vector<Eigen::VectorXd> initial;
    for (std::size_t k = 0; k < n_trajectories; ++k) initial.emplace_back(gaussian(d, 1, rng));
    std::vector<double> times;
    for (std::size_t k = 0; k < n_times; ++k) {
        times.push_back(n_times > 1 ? t_max * static_cast<double>(k) /
                                          static_cast<double>(n_times - 1)
                                    : 0.0);
    }
    auto samples = trajectory_samples(f, initial, times);
    return {std::move(f), std::move(samples)};
}

std::complex<double> EigenfunctionSet::value(std::size_t i, const Eigen::VectorXd &x) const {
    return (left.row(static_cast<Eigen::Index>(i)) * x.cast<std::complex<double>>()).value();
}

Eigen::MatrixXcd EigenfunctionSet::values(const std::vector<Eigen::VectorXd> &xs) const {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(xs.size()), left.rows());
    for (std::size_t s = 0; s < xs.size(); ++s) {
        out.row(static_cast<Eigen::Index>(s)) =
            (left * xs[s].cast<std::complex<double>>()).transpose();
    }
    return out;
}

EigenfunctionSet eigenfunctions(const Eigen::MatrixXd &f) {
    if (f.rows() != f.cols() || f.rows() == 0) throw SizingError("F must be square");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(f.cast<std::complex<double>>());
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of F failed");
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::Index d = lam.size();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            if (std::abs(lam(i) - lam(j)) < kDistinctTol * scale) {
                throw UnsupportedInputError("F has a repeated eigenvalue (index " +
                                            std::to_string(i) + " and " + std::to_string(j) +
                                            "); only diagonalizable F with distinct "
                                            "eigenvalues is supported");
            }
        }
    }
    const Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const auto &sv = svd.singularValues();
    if (sv(d - 1) <= 0.0 || sv(0) / sv(d - 1) > kMaxEigenbasisCondition) {
        throw UnsupportedInputError("F is defective or numerically close to defective");
    }
    Eigen::MatrixXcd w = v.inverse();
    for (Eigen::Index i = 0; i < d; ++i) w.row(i) /= w.row(i).norm();

    EigenfunctionSet out;
    out.lambdas.assign(lam.data(), lam.data() + d);
    out.left = std::move(w);
    return out;
}

} // namespace koopq::iso
