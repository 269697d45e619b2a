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
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "koopq/errors.hpp"
#include "koopq/iso/checks.hpp"
#include "koopq/iso/expm.hpp"
#include "koopq/iso/linear_system.hpp"
#include "koopq/iso/suite.hpp"
#include "testing.hpp"

namespace {

using namespace koopq;
using namespace koopq::iso;
using koopq::testing::Gen;
using cd = std::complex<double>;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;
const std::vector<double> kTimes{0.0, 0.25, 0.5, 1.0, 2.0};

std::vector<Eigen::VectorXd> normal_points(Gen &g, std::size_t n, Eigen::Index d) {
    std::vector<Eigen::VectorXd> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(g.matrix(d, 1).col(0));
    return out;
}

Eigen::MatrixXd rotation() {
    Eigen::MatrixXd f(2, 2);
    f << 0, -1, 1, 0;
    return f;
}

// ------------------------------------------------------------------ expm

TEST(Expm, AgreesWithEigenOnRandomMatrices) {
    Gen g(501);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = static_cast<Eigen::Index>(g.index(1, 8));
        const Eigen::MatrixXd a = g.matrix(d, d) * g.uniform(0.01, 5.0);
        const Eigen::MatrixXd ref = a.exp();
        EXPECT_LT((expm(a) - ref).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
        Eigen::MatrixXcd c(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) c(i, j) = {g.normal(), g.normal()};
        const Eigen::MatrixXcd cref = c.exp();
        EXPECT_LT((expm(c) - cref).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, cref.cwiseAbs().maxCoeff()));
    }
}

TEST(Expm, ZeroAndErrors) {
    EXPECT_EQ(expm(Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 3))), Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)));
    EXPECT_THROW((void)expm(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 3))), SizingError);
    EXPECT_THROW((void)expm(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 1000.0)), RangeError);
    Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
    nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW((void)expm(nan), RangeError);
}

// ------------------------------------------------------------- semigroup

TEST(Semigroup, ZeroGeneratorIsExact) {
    Gen g(502);
    const LinearTestSystem sys(Eigen::MatrixXd::Zero(3, 3), normal_points(g, 10, 3));
    EXPECT_EQ(verify_semigroup(sys, default_observables(3), 0.7, 1.3), 0.0);
}

TEST(Semigroup, RotationHalfTurnIsMinusIdentity) {
    Gen g(503);
    const LinearTestSystem sys(rotation(), normal_points(g, 10, 2));
    EXPECT_LT((sys.flow(kPi) + Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(verify_semigroup(sys, default_observables(2), kPi / 3, 2.0), 1e-10);
    EXPECT_DOUBLE_EQ(sys.weights().sum(), 1.0);
}

TEST(Semigroup, RandomStableSystems) {
    Gen g(504);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_stable_matrix(4, g.rng());
        EXPECT_NEAR(spectral_abscissa(f), -0.1, 1e-9);
        const auto sys = random_system(f, 8, 4, 2.0, g.rng());
        EXPECT_EQ(sys.samples().size(), 32u);
        const double t = g.uniform(0.0, 2.0), s = g.uniform(0.0, 2.0);
        EXPECT_LT(verify_semigroup(sys, default_observables(4), t, s), 1e-8);
    }
}

TEST(Semigroup, OverflowIsARangeError) {
    Gen g(505);
    const LinearTestSystem sys(Eigen::MatrixXd::Identity(2, 2) * 500.0, normal_points(g, 3, 2));
    EXPECT_THROW((void)sys.flow(10.0), RangeError);
}

TEST(Observables, DefaultSetShape) {
    const auto obs = default_observables(3);
    EXPECT_EQ(obs.size(), 3u + 6u + 1u);
    Eigen::VectorXd x(3);
    x << 1.0, 2.0, -1.0;
    // x0, x0*x0, x0*x1, x0*x2, x1, ...
    EXPECT_EQ(obs[1](x), 1.0);
    EXPECT_EQ(obs[2](x), 2.0);
    EXPECT_EQ(obs[4](x), 2.0);
    EXPECT_DOUBLE_EQ(obs.back()(x), std::sin(1.0) + 6.0);
}

// ------------------------------------------------------- eigenfunctions

TEST(Eigenfunctions, DiagonalSystem) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
    f(0, 0) = -1.0;
    f(1, 1) = -2.0;
    const auto e = eigenfunctions(f);
    ASSERT_EQ(e.size(), 2u);
    std::set<double> re{e.lambdas[0].real(), e.lambdas[1].real()};
    EXPECT_EQ(re, (std::set<double>{-1.0, -2.0}));
    Gen g(506);
    const LinearTestSystem sys(f, normal_points(g, 10, 2));
    EXPECT_LT(verify_eigenfunction(sys, e, 0, kTimes), 1e-12);
    const auto p = verify_eigenfunction_product(sys, e, 0, 1, kTimes);
    EXPECT_NEAR(p.eigenvalue.real(), -3.0, 1e-12);
    EXPECT_LT(p.deviation, 1e-12);
}

TEST(Eigenfunctions, LeftEigenvectorsAreUnitRows) {
    Gen g(507);
    const auto f = random_diagonalizable_matrix(4, g.rng(), 1);
    const auto e = eigenfunctions(f);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto w = e.left.row(static_cast<Eigen::Index>(i));
        EXPECT_NEAR(w.norm(), 1.0, 1e-12);
        EXPECT_LT((w * f.cast<cd>() - e.lambdas[i] * w).norm(), 1e-10);
        EXPECT_LE(e.lambdas[i].real(), 0.0);
    }
}

TEST(Eigenfunctions, RandomSystemsEvolveAndMultiply) {
    Gen g(508);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_diagonalizable_matrix(4, g.rng(), trial % 3);
        const auto sys = random_system(f, 8, 4, 2.0, g.rng());
        const auto e = eigenfunctions(f);
        for (std::size_t i = 0; i < e.size(); ++i) {
            EXPECT_LT(verify_eigenfunction(sys, e, i, kTimes), 1e-8);
        }
        const auto same = verify_eigenfunction_product(sys, 1, 1, kTimes);
        EXPECT_LT(same.deviation, 1e-8);
        EXPECT_NEAR(std::abs(same.eigenvalue - 2.0 * e.lambdas[1]), 0.0, 1e-12);
        const auto p = verify_eigenfunction_product(sys, e, 0, 3, kTimes);
        EXPECT_LT(p.deviation, 1e-8);
    }
}

TEST(Eigenfunctions, DefectiveGeneratorIsUnsupported) {
    Eigen::MatrixXd f(2, 2);
    f << -1, 1, 0, -1;
    EXPECT_THROW((void)eigenfunctions(f), UnsupportedInputError);
    EXPECT_THROW((void)eigenfunctions(-Eigen::MatrixXd::Identity(3, 3)), UnsupportedInputError);
}

// -------------------------------------------------------------- embedding

TEST(Embedding, OrthonormalFunctionsEmbedAsBasisStates) {
    Eigen::MatrixXcd v(4, 2);
    v << 1, 1, 1, -1, -1, 1, -1, -1;
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 0.25);
    const auto e = verify_isometric_embedding(v, w, 1);
    EXPECT_LT((e.vectors - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(e.deviation(), 1e-15);
}

TEST(Embedding, HalfOverlapMatchesCholeskyFactor) {
    Eigen::MatrixXcd v(4, 2);
    v << 1, 1, 1, 1, 1, 1, 1, -1;
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 0.25);
    const auto e = verify_isometric_embedding(v, w, 1);
    Eigen::Matrix2cd r;
    r << 1.0, 0.5, 0.0, std::sqrt(0.75);
    EXPECT_LT((e.coefficients - r).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((e.vectors - r).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(e.function_gram(0, 1).real(), 0.5, 1e-15);
    EXPECT_LT(e.gram_deviation, 1e-14);
}

TEST(Embedding, FewerFunctionsThanStates) {
    Gen g(509);
    const Eigen::MatrixXcd v = g.matrix(12, 3).cast<cd>();
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(12, 1.0 / 12.0);
    const auto e = verify_isometric_embedding(v, w, 2);
    EXPECT_EQ(e.vectors.rows(), 4);
    EXPECT_EQ(e.vectors.cols(), 3);
    EXPECT_TRUE(e.vectors.row(3).isZero());
    EXPECT_LT(e.deviation(), 1e-10);
    EXPECT_THROW((void)verify_isometric_embedding(g.matrix(12, 5).cast<cd>(), w, 2), SizingError);
}

TEST(Embedding, DependentFunctionIsNamed) {
    Eigen::MatrixXcd v(4, 3);
    v.col(0) << 1, 2, 3, 4;
    v.col(1) << 0, 1, 0, 1;
    v.col(2) = cd(2.0, -1.0) * v.col(0);
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 0.25);
    try {
        (void)verify_isometric_embedding(v, w, 2);
        FAIL() << "expected DegeneracyError";
    } catch (const DegeneracyError &e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(EmbeddingProperty, GramPreservedOnRandomSystems) {
    Gen g(510);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_diagonalizable_matrix(4, g.rng(), trial % 3);
        const auto sys = random_system(f, 8, 4, 2.0, g.rng());
        const auto eigs = eigenfunctions(f);
        const auto e = verify_isometric_embedding(eigs, sys, 2);
        EXPECT_LT(e.deviation(), 1e-10) << trial;
        // Independent check of the Gram definition.
        const Eigen::MatrixXcd vals = eigs.values(sys.samples());
        const Eigen::MatrixXcd gram = vals.adjoint() * sys.weights().asDiagonal() * vals;
        EXPECT_LT((gram - e.function_gram).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EmbeddingProperty, StableUnderSampleDoubling) {
    Gen g(511);
    const Eigen::MatrixXcd v = g.matrix(10, 3).cast<cd>() + cd(0, 1) * g.matrix(10, 3).cast<cd>();
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(10, 0.1);
    Eigen::MatrixXcd v2(20, 3);
    v2 << v, v;
    const Eigen::VectorXd w2 = Eigen::VectorXd::Constant(20, 0.05);
    const auto a = verify_isometric_embedding(v, w, 2);
    const auto b = verify_isometric_embedding(v2, w2, 2);
    EXPECT_LT((a.coefficients - b.coefficients).cwiseAbs().maxCoeff(), 1e-12);
}

// ----------------------------------------------------- mode preservation

TEST(ModePreservation, ZeroEigenvalueIsStationary) {
    const auto h = basis_effective_generator({cd(0.0)}, 1);
    EXPECT_TRUE(h.isZero());
    EXPECT_LT((evolution(h, 3.0) - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ModePreservation, DecayingModeShrinks) {
    const auto h = basis_effective_generator({cd(-1.0)}, 1);
    const Eigen::VectorXcd out = evolution(h, 1.0) * Eigen::VectorXcd::Unit(2, 0);
    EXPECT_NEAR(out.norm(), std::exp(-1.0), 1e-14);
    EXPECT_NEAR(out.norm(), 0.367879, 1e-6);
}

TEST(ModePreservation, ImaginaryModesPreserveNorm) {
    Gen g(512);
    std::vector<cd> lambdas;
    for (int i = 0; i < 4; ++i) lambdas.push_back({0.0, g.uniform(-3.0, 3.0)});
    const auto h = basis_effective_generator(lambdas, 2);
    for (double t : kTimes) {
        const auto u = evolution(h, t);
        for (Eigen::Index k = 0; k < 4; ++k) {
            EXPECT_NEAR((u * Eigen::VectorXcd::Unit(4, k)).norm(), 1.0, 1e-10);
        }
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ModePreservation, EmbeddedSystemsPass) {
    Gen g(513);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_diagonalizable_matrix(4, g.rng(), trial % 3);
        const auto sys = random_system(f, 8, 4, 2.0, g.rng());
        const auto eigs = eigenfunctions(f);
        const auto emb = verify_isometric_embedding(eigs, sys, 3);
        const auto m = verify_mode_preservation(eigs.lambdas, emb, kTimes);
        EXPECT_LT(m.deviation(), 1e-8) << trial;
    }
}

TEST(ModePreservation, PerturbedGeneratorFails) {
    Gen g(514);
    const auto f = random_diagonalizable_matrix(4, g.rng(), 1);
    const auto sys = random_system(f, 8, 4, 2.0, g.rng());
    const auto eigs = eigenfunctions(f);
    const auto emb = verify_isometric_embedding(eigs, sys, 2);
    const auto m = verify_mode_preservation(eigs.lambdas, emb, kTimes, {0.05, 0.05});
    EXPECT_GT(m.basis_deviation, 1e-3);
    EXPECT_GT(m.embedded_deviation, 1e-3);
}

TEST(ModePreservation, UnitaryPathThroughSimulator) {
    Gen g(515);
    std::vector<cd> lambdas;
    for (int i = 0; i < 8; ++i) lambdas.push_back({0.0, g.uniform(-2.0, 2.0)});
    EXPECT_LT(verify_mode_preservation_unitary(lambdas, 3, kTimes), 1e-8);
    EXPECT_GT(verify_mode_preservation_unitary(lambdas, 3, kTimes, {0.0, 0.05}), 1e-3);
    lambdas[2] = {-0.1, 1.0};
    EXPECT_THROW((void)verify_mode_preservation_unitary(lambdas, 3, kTimes), ValidationError);
}

// ------------------------------------------------------------------ suite

TEST(Suite, SmallRunPassesWithStableSchema) {
    SuiteOptions o;
    o.semigroup_systems = 5;
    const auto r = run_suite(o);
    EXPECT_TRUE(r.all_pass());
    const auto j = json::parse(report_to_json(r, "cafe"));
    EXPECT_EQ(j.at("config_hash"), "cafe");
    EXPECT_TRUE(j.at("all_pass").get<bool>());
    std::vector<std::string> names;
    for (const auto &c : j.at("checks")) {
        names.push_back(c.at("name"));
        EXPECT_TRUE(c.at("deviation").is_number());
        EXPECT_TRUE(c.at("threshold").is_number());
        EXPECT_TRUE(c.at("pass").is_boolean());
    }
    const std::vector<std::string> expected{
        "semigroup.rotation",        "semigroup.random_stable",
        "eigenfunction.evolution",   "eigenfunction.product",
        "embedding.gram",            "mode_preservation.basis",
        "mode_preservation.embedded", "mode_preservation.decaying_complex",
        "mode_preservation.unitary_path"};
    EXPECT_EQ(names, expected);
    EXPECT_FALSE(json::parse(report_to_json(r)).contains("config_hash"));
}

TEST(Suite, PerturbationIsDetected) {
    SuiteOptions o;
    o.semigroup_systems = 3;
    o.mode_perturbation = {0.05, 0.05};
    const auto r = run_suite(o);
    EXPECT_FALSE(r.all_pass());
    for (const auto &c : r.checks) {
        if (c.name.starts_with("mode_preservation")) EXPECT_FALSE(c.pass) << c.name;
        else EXPECT_TRUE(c.pass) << c.name;
    }
}

TEST(Suite, DeterministicInTheSeed) {
    SuiteOptions o;
    o.semigroup_systems = 3;
    EXPECT_EQ(report_to_json(run_suite(o)), report_to_json(run_suite(o)));
}

} // namespace
