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
#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "koopq/errors.hpp"
#include "koopq/qsim/layered.hpp"
#include "koopq/qsim/state.hpp"
#include "koopq/qsim/unitary.hpp"
#include "testing.hpp"

namespace {

using namespace koopq;
using namespace koopq::qsim;
using koopq::testing::Gen;
using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

UnitaryParams random_params(Gen &g, int n, double sd = 1.0) {
    UnitaryParams p{n, g.normals(UnitaryParams::count(n), sd)};
    return p;
}

double weighted_z(const UnitaryParams &p, const std::vector<double> &angles,
                  const std::vector<double> &w) {
    const auto e = z_expectations(apply_unitary(encode_angles(angles), build_unitary(p)));
    double s = 0.0;
    for (std::size_t q = 0; q < w.size(); ++q) s += w[q] * e[q];
    return s;
}

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

// -------------------------------------------------------------- encoding

TEST(Encode, ZeroAnglesGiveGroundState) {
    const std::vector<double> a(3, 0.0);
    const auto s = encode_angles(a);
    EXPECT_EQ(s.dimension(), 8);
    EXPECT_EQ(s.amplitudes()(0), cd(1.0));
    for (int i = 1; i < 8; ++i) EXPECT_EQ(s.amplitudes()(i), cd(0.0));
}

TEST(Encode, FullAngleConventionSingleQubit) {
    const std::vector<double> a{kPi / 2};
    const auto s = encode_angles(a);
    EXPECT_NEAR(std::abs(s.amplitudes()(0)), 0.0, 1e-15);
    EXPECT_NEAR(s.amplitudes()(1).real(), 1.0, 1e-15);
}

TEST(Encode, QubitZeroIsMostSignificant) {
    const std::vector<double> a{kPi / 2, 0.0};
    const auto s = encode_angles(a);
    // |10> is basis index 2.
    EXPECT_NEAR(s.amplitudes()(2).real(), 1.0, 1e-15);
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1)), 0.0, 1e-15);
}

TEST(Encode, CapacityIsBounded) {
    EXPECT_THROW((void)encode_angles(std::vector<double>{}), SizingError);
    EXPECT_THROW((void)encode_angles(std::vector<double>(13, 0.0)), SizingError);
    EXPECT_NO_THROW((void)encode_angles(std::vector<double>(12, 0.1)));
}

TEST(Encode, MatchesKroneckerProductOfRotations) {
    Gen g(301);
    const auto a = g.uniforms(3, -kPi, kPi);
    Eigen::VectorXcd ref = Eigen::VectorXcd::Ones(1);
    for (double phi : a) {
        Eigen::Vector2cd q(std::cos(phi), std::sin(phi));
        Eigen::VectorXcd next(ref.size() * 2);
        for (Eigen::Index i = 0; i < ref.size(); ++i) {
            next(2 * i) = ref(i) * q(0);
            next(2 * i + 1) = ref(i) * q(1);
        }
        ref = next;
    }
    EXPECT_LT((encode_angles(a).amplitudes() - ref).norm(), 1e-14);
}

TEST(EncodeProperty, PeriodicInTwoPi) {
    Gen g(302);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = g.uniforms(g.index(1, 5), -4.0, 4.0);
        auto b = a;
        for (auto &v : b) v += 2.0 * kPi;
        const auto ea = z_expectations(encode_angles(a));
        const auto eb = z_expectations(encode_angles(b));
        for (std::size_t q = 0; q < ea.size(); ++q) EXPECT_NEAR(ea[q], eb[q], 1e-12);
    }
}

// --------------------------------------------------------------- unitary

TEST(Unitary, ZeroParametersGiveIdentity) {
    const auto u = build_unitary(UnitaryParams::zeros(3));
    EXPECT_LT((u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Unitary, HalfPiXIsMinusIX) {
    UnitaryParams p = UnitaryParams::zeros(1);
    p.theta[2] = kPi / 2; // Re H_01
    const auto h = hermitian_generator(p);
    EXPECT_LT((h - (kPi / 2) * pauli_x()).cwiseAbs().maxCoeff(), 1e-15);
    const auto u = build_unitary(p);
    EXPECT_LT((u - cd(0, -1) * pauli_x()).cwiseAbs().maxCoeff(), 1e-14);
    const auto s = apply_unitary(QuantumState(1), u);
    EXPECT_NEAR(std::abs(s.amplitudes()(1) - cd(0, -1)), 0.0, 1e-14);
}

TEST(Unitary, ParameterLayout) {
    EXPECT_EQ(UnitaryParams::count(3), 64u);
    UnitaryParams p = UnitaryParams::zeros(2);
    for (std::size_t i = 0; i < p.theta.size(); ++i) p.theta[i] = static_cast<double>(i + 1);
    const auto h = hermitian_generator(p);
    // diag 1..4, then Re of (0,1) (0,2) (0,3) (1,2) (1,3) (2,3) = 5..10, then Im = 11..16.
    EXPECT_EQ(h(0, 0), cd(1));
    EXPECT_EQ(h(3, 3), cd(4));
    EXPECT_EQ(h(0, 1), cd(5, 11));
    EXPECT_EQ(h(1, 0), cd(5, -11));
    EXPECT_EQ(h(1, 3), cd(9, 15));
    EXPECT_EQ(h(2, 3), cd(10, 16));
    EXPECT_EQ(h, h.adjoint());
    const auto back = params_from_hermitian(h);
    EXPECT_EQ(back.theta, p.theta);
}

TEST(Unitary, WrongParameterCountIsASizingError) {
    UnitaryParams p{3, std::vector<double>(63, 0.0)};
    EXPECT_THROW((void)build_unitary(p), SizingError);
    EXPECT_THROW((void)hermitian_generator(p), SizingError);
}

TEST(Unitary, AgreesWithScalingAndSquaringOracle) {
    Gen g(303);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_params(g, 3);
        const Eigen::MatrixXcd h = hermitian_generator(p);
        const Eigen::MatrixXcd oracle = (cd(0, -1) * h).exp();
        const auto u = build_unitary(p);
        EXPECT_LT((u - oracle).cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(UnitaryProperty, UnitarityAndNormPreservation) {
    Gen g(304);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(g.index(1, 4));
        const auto u = build_unitary(random_params(g, n, g.uniform(0.1, 3.0)));
        const auto dim = u.rows();
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff(),
                  1e-10);
        const QuantumState s(n, g.state(dim));
        EXPECT_NEAR(apply_unitary(s, u).norm(), 1.0, 1e-12);
    }
}

// ----------------------------------------------------------------- apply

TEST(Apply, IdentityLeavesStateUnchanged) {
    Gen g(305);
    const QuantumState s(2, g.state(4));
    EXPECT_EQ(apply_unitary(s, Eigen::MatrixXcd::Identity(4, 4)).amplitudes(), s.amplitudes());
}

TEST(Apply, UnitaryThenAdjointRestores) {
    Gen g(306);
    const QuantumState s(3, g.state(8));
    const auto u = build_unitary(random_params(g, 3));
    const auto back = apply_unitary(apply_unitary(s, u), u.adjoint());
    EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-10);
}

TEST(Apply, XOnFirstQubitFlipsMostSignificantBit) {
    Eigen::MatrixXcd x_i = Eigen::MatrixXcd::Zero(4, 4);
    // Explicit permutation |b0 b1> -> |(1-b0) b1>.
    x_i(2, 0) = x_i(3, 1) = x_i(0, 2) = x_i(1, 3) = 1.0;
    const auto s = apply_unitary(QuantumState(2), x_i);
    EXPECT_EQ(s.amplitudes()(2), cd(1.0));
    EXPECT_LT((embed_single(pauli_x(), 0, 2) - x_i).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Apply, DimensionMismatchIsASizingError) {
    EXPECT_THROW((void)apply_unitary(QuantumState(2), Eigen::MatrixXcd::Identity(8, 8)),
                 SizingError);
    EXPECT_THROW(QuantumState(2, Eigen::VectorXcd::Ones(3)), SizingError);
}

// ----------------------------------------------------------- expectation

TEST(Expectation, GroundStateIsAllPlusOne) {
    for (double v : z_expectations(QuantumState(4))) EXPECT_EQ(v, 1.0);
}

TEST(Expectation, EncodedQubitIsCosTwoPhi) {
    Gen g(307);
    for (int i = 0; i < 20; ++i) {
        const double phi = g.uniform(-kPi, kPi);
        EXPECT_NEAR(z_expectations(encode_angles(std::vector<double>{phi}))[0],
                    std::cos(2.0 * phi), 1e-14);
    }
    EXPECT_NEAR(z_expectations(encode_angles(std::vector<double>{kPi / 4}))[0], 0.0, 1e-15);
}

TEST(Expectation, BellStateMarginalsVanish) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    a(0) = a(3) = 1.0 / std::sqrt(2.0);
    const auto e = z_expectations(QuantumState(2, a));
    EXPECT_NEAR(e[0], 0.0, 1e-15);
    EXPECT_NEAR(e[1], 0.0, 1e-15);
}

TEST(ExpectationProperty, BoundedForRandomCircuits) {
    Gen g(308);
    for (int trial = 0; trial < 200; ++trial) {
        const auto angles = g.uniforms(3, -kPi, kPi);
        const auto s = apply_unitary(encode_angles(angles), build_unitary(random_params(g, 3)));
        for (double v : z_expectations(s)) {
            EXPECT_LE(std::abs(v), 1.0 + 1e-12);
        }
    }
}

TEST(Expectation, ShotSamplingConvergesAndIsSeeded) {
    Gen g(309);
    const auto s = apply_unitary(encode_angles(g.uniforms(3, -1, 1)), build_unitary(random_params(g, 3)));
    const auto exact = z_expectations(s);
    std::mt19937_64 r1(5), r2(5);
    const auto a = sample_z_expectations(s, 200000, r1);
    const auto b = sample_z_expectations(s, 200000, r2);
    EXPECT_EQ(a, b);
    for (std::size_t q = 0; q < 3; ++q) EXPECT_NEAR(a[q], exact[q], 0.02);
    EXPECT_THROW((void)sample_z_expectations(s, 0, r1), ValidationError);
}

// -------------------------------------------------------------- gradient

TEST(Gradient, ConstantLossHasZeroGradient) {
    Gen g(310);
    const auto p = random_params(g, 2);
    const auto grad = gradient(p, g.uniforms(2, -1, 1), std::vector<double>{0.0, 0.0});
    for (double v : grad) EXPECT_EQ(v, 0.0);
}

TEST(Gradient, GroundStateIsStationaryForBothCouplings) {
    const auto grad = gradient(UnitaryParams::zeros(1), std::vector<double>{0.0},
                               std::vector<double>{1.0});
    EXPECT_NEAR(grad[2], 0.0, 1e-14); // Re H_01, the X coupling
    EXPECT_NEAR(grad[3], 0.0, 1e-14); // Im H_01, the Y coupling
}

TEST(Gradient, YCouplingSlopeAtQuarterTurn) {
    const std::vector<double> angles{kPi / 4};
    const std::vector<double> w{1.0};
    const auto grad = gradient(UnitaryParams::zeros(1), angles, w);
    const auto fd = koopq::testing::central_fd(
        [&](const std::vector<double> &t) { return weighted_z({1, t}, angles, w); },
        UnitaryParams::zeros(1).theta);
    EXPECT_NEAR(grad[2], 0.0, 1e-12);
    EXPECT_NEAR(grad[3], 2.0, 1e-12);
    EXPECT_NEAR(fd[3], 2.0, 1e-8);
    EXPECT_NEAR(grad[0], fd[0], 1e-8);
    EXPECT_NEAR(grad[1], fd[1], 1e-8);
}

TEST(Gradient, MatchesFiniteDifferencesOnRandomDraws) {
    Gen g(311);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_params(g, 3);
        const auto angles = g.uniforms(3, 0.0, kPi);
        const auto w = g.normals(3);
        const auto grad = gradient(p, angles, w);
        const auto fd = koopq::testing::central_fd(
            [&](const std::vector<double> &t) { return weighted_z({3, t}, angles, w); }, p.theta);
        EXPECT_LT(koopq::testing::max_relative_error(grad, fd), 1e-4) << "trial " << trial;
    }
}

TEST(Gradient, DegenerateSpectrumUsesTheLimit) {
    // Repeated eigenvalues: H = c * I plus a small coupling.
    UnitaryParams p = UnitaryParams::zeros(2);
    for (int i = 0; i < 4; ++i) p.theta[static_cast<std::size_t>(i)] = 0.7;
    const std::vector<double> angles{0.3, 1.1};
    const std::vector<double> w{0.5, -1.0};
    const auto grad = gradient(p, angles, w);
    const auto fd = koopq::testing::central_fd(
        [&](const std::vector<double> &t) { return weighted_z({2, t}, angles, w); }, p.theta);
    for (double v : grad) EXPECT_TRUE(std::isfinite(v));
    EXPECT_LT(koopq::testing::max_relative_error(grad, fd), 1e-4);
}

// ---------------------------------------------------------------- layered

TEST(Layered, ZeroAnglesLeaveOnlyTheEntangler) {
    LayeredParams p{2, 1, {0.0, 0.0}};
    const auto u = build_layered_unitary(p);
    // A single CNOT(0 -> 1) for two qubits: |10> -> |11>.
    Eigen::VectorXcd in = Eigen::VectorXcd::Unit(4, 2);
    EXPECT_LT((u * in - Eigen::VectorXcd::Unit(4, 3)).norm(), 1e-15);
    EXPECT_LT((cnot(0, 1, 2) - u).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Layered, SingleQubitHasNoEntangler) {
    LayeredParams p{1, 2, {0.3, 0.4}};
    EXPECT_LT((build_layered_unitary(p) - ry_gate(0.7)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Layered, RyGateUsesFullAngle) {
    const auto r = ry_gate(0.4);
    EXPECT_NEAR(r(0, 0).real(), std::cos(0.4), 1e-15);
    EXPECT_NEAR(r(0, 1).real(), -std::sin(0.4), 1e-15);
    EXPECT_NEAR(r(1, 0).real(), std::sin(0.4), 1e-15);
}

TEST(Layered, WrongParameterCountIsASizingError) {
    EXPECT_THROW((void)build_layered_unitary({3, 2, std::vector<double>(5, 0.0)}), SizingError);
}

TEST(Layered, GradientMatchesFiniteDifferences) {
    Gen g(312);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(g.index(1, 4));
        const int layers = static_cast<int>(g.index(1, 4));
        LayeredParams p{n, layers, g.normals(LayeredParams::count(n, layers))};
        const auto angles = g.uniforms(static_cast<std::size_t>(n), 0.0, kPi);
        const auto w = g.normals(static_cast<std::size_t>(n));
        auto loss = [&](const std::vector<double> &t) {
            const auto e = z_expectations(
                apply_unitary(encode_angles(angles), build_layered_unitary({n, layers, t})));
            double s = 0.0;
            for (int q = 0; q < n; ++q) s += w[static_cast<std::size_t>(q)] * e[static_cast<std::size_t>(q)];
            return s;
        };
        const auto input = encode_angles(angles);
        const auto out = apply_unitary(input, build_layered_unitary(p));
        const Eigen::VectorXcd c = z_cotangent(out, w);
        const auto grad = layered_gradient_from_outer(p, input.amplitudes() * c.adjoint());
        const auto fd = koopq::testing::central_fd(loss, p.theta);
        EXPECT_LT(koopq::testing::max_relative_error(grad, fd), 1e-4) << "trial " << trial;
        const auto u = build_layered_unitary(p);
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(),
                  1e-12);
    }
}

} // namespace
