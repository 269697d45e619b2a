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
#include "koopq/iso/checks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "koopq/errors.hpp"
#include "koopq/iso/expm.hpp"
#include "koopq/qsim/unitary.hpp"

namespace koopq::iso {

namespace {

constexpr double kDependenceTol = 1e-8;
constexpr double kImaginaryTol = 1e-12;

std::size_t register_dim(int n_qubits) {
    if (n_qubits < 0 || n_qubits > 12) throw SizingError("n_qubits out of range");
    return std::size_t{1} << n_qubits;
}

std::complex<double> weighted_inner(const Eigen::VectorXcd &f, const Eigen::VectorXcd &g,
                                    const Eigen::VectorXd &w) {
    return (f.conjugate().cwiseProduct(g).array() * w.array()).sum();
}

} // namespace

std::vector<Observable> default_observables(std::size_t d) {
    std::vector<Observable> obs;
    const auto n = static_cast<Eigen::Index>(d);
    for (Eigen::Index i = 0; i < n; ++i) {
        obs.emplace_back([i](const Eigen::VectorXd &x) { return x(i); });
        for (Eigen::Index j = i; j < n; ++j) {
            obs.emplace_back([i, j](const Eigen::VectorXd &x) { return x(i) * x(j); });
        }
    }
    obs.emplace_back([](const Eigen::VectorXd &x) { return std::sin(x(0)) + x.squaredNorm(); });
    return obs;
}

double verify_semigroup(const LinearTestSystem &sys, const std::vector<Observable> &observables,
                        double t, double s) {
    const Eigen::MatrixXd whole = sys.flow(t + s);
    const Eigen::MatrixXd composed = sys.flow(t) * sys.flow(s);
    double dev = 0.0;
    for (const auto &x : sys.samples()) {
        const Eigen::VectorXd a = whole * x;
        const Eigen::VectorXd b = composed * x;
        for (const auto &g : observables) dev = std::max(dev, std::abs(g(a) - g(b)));
    }
    return dev;
}

double verify_eigenfunction(const LinearTestSystem &sys, const EigenfunctionSet &eigs,
                            std::size_t i, const std::vector<double> &t_grid) {
    if (i >= eigs.size()) throw SizingError("eigenfunction index out of range");
    double dev = 0.0;
    for (double t : t_grid) {
        const Eigen::MatrixXd m = sys.flow(t);
        const auto growth = std::exp(eigs.lambdas[i] * t);
        for (const auto &x : sys.samples()) {
            dev = std::max(dev, std::abs(eigs.value(i, m * x) - growth * eigs.value(i, x)));
        }
    }
    return dev;
}

ProductCheck verify_eigenfunction_product(const LinearTestSystem &sys,
                                          const EigenfunctionSet &eigs, std::size_t i,
                                          std::size_t j, const std::vector<double> &t_grid) {
    if (i >= eigs.size() || j >= eigs.size()) {
        throw SizingError("eigenfunction index out of range");
    }
    ProductCheck out;
    out.eigenvalue = eigs.lambdas[i] + eigs.lambdas[j];
    for (double t : t_grid) {
        const Eigen::MatrixXd m = sys.flow(t);
        const auto growth = std::exp(out.eigenvalue * t);
        for (const auto &x : sys.samples()) {
            const Eigen::VectorXd y = m * x;
            const auto later = eigs.value(i, y) * eigs.value(j, y);
            const auto now = eigs.value(i, x) * eigs.value(j, x);
            out.deviation = std::max(out.deviation, std::abs(later - growth * now));
        }
    }
    return out;
}

ProductCheck verify_eigenfunction_product(const LinearTestSystem &sys, std::size_t i,
                                          std::size_t j, const std::vector<double> &t_grid) {
    return verify_eigenfunction_product(sys, eigenfunctions(sys.matrix()), i, j, t_grid);
}

Embedding verify_isometric_embedding(const Eigen::MatrixXcd &values,
                                     const Eigen::VectorXd &weights, int n_qubits) {
    const Eigen::Index d = values.cols();
    const std::size_t dim = register_dim(n_qubits);
    if (d == 0) throw SizingError("no functions to embed");
    if (static_cast<std::size_t>(d) > dim) {
        throw SizingError(std::to_string(d) + " functions do not fit in " +
                          std::to_string(n_qubits) + " qubits");
    }
    if (weights.size() != values.rows()) throw SizingError("one weight per sample is required");

    Embedding out;
    out.n_qubits = n_qubits;
    out.function_gram.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out.function_gram(i, j) = weighted_inner(values.col(i), values.col(j), weights);
        }
    }

    // Modified Gram-Schmidt with one reorthogonalization pass.
    Eigen::MatrixXcd psi(values.rows(), d);
    out.coefficients = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::VectorXcd v = values.col(i);
        const double original = std::sqrt(std::max(0.0, weighted_inner(v, v, weights).real()));
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < i; ++k) {
                const auto c = weighted_inner(psi.col(k), v, weights);
                out.coefficients(k, i) += c;
                v -= c * psi.col(k);
            }
        }
        const double norm = std::sqrt(std::max(0.0, weighted_inner(v, v, weights).real()));
        if (!(norm > kDependenceTol * std::max(original, 1e-300))) {
            throw DegeneracyError(static_cast<std::size_t>(i),
                                  "Gram matrix is rank deficient: function " + std::to_string(i) +
                                      " depends on the preceding functions");
        }
        out.coefficients(i, i) = norm;
        psi.col(i) = v / norm;
    }

    Eigen::MatrixXcd psi_gram(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            psi_gram(i, j) = weighted_inner(psi.col(i), psi.col(j), weights);
        }
    }
    out.orthonormal_deviation = (psi_gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();

    out.vectors = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), d);
    out.vectors.topRows(d) = out.coefficients;
    out.gram_deviation =
        (out.vectors.adjoint() * out.vectors - out.function_gram).cwiseAbs().maxCoeff();
    return out;
}

Embedding verify_isometric_embedding(const EigenfunctionSet &eigs, const LinearTestSystem &sys,
                                     int n_qubits) {
    return verify_isometric_embedding(eigs.values(sys.samples()), sys.weights(), n_qubits);
}

Eigen::MatrixXcd basis_effective_generator(const std::vector<std::complex<double>> &lambdas,
                                           int n_qubits) {
    const std::size_t dim = register_dim(n_qubits);
    if (lambdas.size() > dim) throw SizingError("more modes than basis states");
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    const std::complex<double> i1(0.0, 1.0);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = i1 * lambdas[k];
    }
    return h;
}

Eigen::MatrixXcd embedded_effective_generator(const std::vector<std::complex<double>> &lambdas,
                                              const Embedding &embedding) {
    const Eigen::MatrixXcd &e = embedding.vectors;
    if (static_cast<Eigen::Index>(lambdas.size()) != e.cols()) {
        throw SizingError("one eigenvalue per embedded function is required");
    }
    Eigen::VectorXcd lam(e.cols());
    for (Eigen::Index k = 0; k < e.cols(); ++k) lam(k) = lambdas[static_cast<std::size_t>(k)];
    const Eigen::MatrixXcd pinv = e.completeOrthogonalDecomposition().pseudoInverse();
    return std::complex<double>(0.0, 1.0) * e * lam.asDiagonal() * pinv;
}

Eigen::MatrixXcd evolution(const Eigen::MatrixXcd &h_eff, double t) {
    return expm(Eigen::MatrixXcd(std::complex<double>(0.0, -t) * h_eff));
}

ModeCheck verify_mode_preservation(const std::vector<std::complex<double>> &lambdas,
                                   const Embedding &embedding, const std::vector<double> &t_grid,
                                   std::complex<double> perturbation) {
    if (lambdas.empty()) throw SizingError("no modes to check");
    auto generator = lambdas;
    generator[0] += perturbation;
    const Eigen::MatrixXcd h_basis = basis_effective_generator(generator, embedding.n_qubits);
    const Eigen::MatrixXcd h_embedded = embedded_effective_generator(generator, embedding);
    const auto dim = h_basis.rows();

    ModeCheck out;
    for (double t : t_grid) {
        const Eigen::MatrixXcd ub = evolution(h_basis, t);
        const Eigen::MatrixXcd ue = evolution(h_embedded, t);
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const auto growth = std::exp(lambdas[k] * t);
            Eigen::VectorXcd basis = Eigen::VectorXcd::Unit(dim, kk);
            out.basis_deviation =
                std::max(out.basis_deviation, (ub * basis - growth * basis).norm());
            const Eigen::VectorXcd r = embedding.vectors.col(kk);
            out.embedded_deviation =
                std::max(out.embedded_deviation, (ue * r - growth * r).norm());
        }
    }
    return out;
}

double verify_mode_preservation_unitary(const std::vector<std::complex<double>> &lambdas,
                                        int n_qubits, const std::vector<double> &t_grid,
                                        std::complex<double> perturbation) {
    if (lambdas.empty()) throw SizingError("no modes to check");
    for (const auto &l : lambdas) {
        if (std::abs(l.real()) > kImaginaryTol) {
            throw ValidationError("unitary path requires purely imaginary eigenvalues");
        }
    }
    auto generator = lambdas;
    generator[0] += perturbation;
    const Eigen::MatrixXcd h = basis_effective_generator(generator, n_qubits);
    const auto dim = h.rows();
    double dev = 0.0;
    for (double t : t_grid) {
        // Hermitian part only: i * (i omega) = -omega is real.
        Eigen::MatrixXcd ht = (h * t).real().cast<std::complex<double>>();
        const Eigen::MatrixXcd u = qsim::build_unitary(qsim::params_from_hermitian(ht));
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const auto growth = std::exp(lambdas[k] * t);
            Eigen::VectorXcd basis = Eigen::VectorXcd::Unit(dim, kk);
            dev = std::max(dev, (u * basis - growth * basis).norm());
        }
    }
    return dev;
}

} // namespace koopq::iso
