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
#include "koopq/iso/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "koopq/iso/checks.hpp"
#include "koopq/iso/linear_system.hpp"

namespace koopq::iso {

namespace {

constexpr double kSemigroupTol = 1e-8;
constexpr double kEigenTol = 1e-8;
constexpr double kGramTol = 1e-10;
constexpr double kModeTol = 1e-8;

CheckResult make(std::string name, double deviation, double threshold) {
    return {std::move(name), deviation, threshold, deviation < threshold};
}

const std::vector<double> kTimeGrid{0.0, 0.25, 0.5, 1.0, 2.0};

} // namespace

bool SuiteReport::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
}

SuiteReport run_suite(const SuiteOptions &options) {
    SuiteReport report;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    const std::size_t d = options.dimension;

    {
        Eigen::MatrixXd rot(2, 2);
        rot << 0.0, -1.0, 1.0, 0.0;
        const LinearTestSystem sys = random_system(rot, 4, 3, 1.0, rng);
        const double half_pi = std::numbers::pi / 2.0;
        double dev = verify_semigroup(sys, default_observables(2), half_pi, half_pi);
        dev = std::max(dev, (sys.flow(std::numbers::pi) + Eigen::MatrixXd::Identity(2, 2))
                                .cwiseAbs()
                                .maxCoeff());
        report.checks.push_back(make("semigroup.rotation", dev, kSemigroupTol));
    }
    {
        double dev = 0.0;
        const auto observables = default_observables(d);
        for (std::size_t k = 0; k < options.semigroup_systems; ++k) {
            const LinearTestSystem sys =
                random_system(random_stable_matrix(d, rng), options.trajectories,
                              options.times_per_trajectory, 1.0, rng);
            dev = std::max(dev, verify_semigroup(sys, observables, time(rng), time(rng)));
        }
        report.checks.push_back(make("semigroup.random_stable", dev, kSemigroupTol));
    }

    const LinearTestSystem sys =
        random_system(random_diagonalizable_matrix(d, rng, 1), options.trajectories,
                      options.times_per_trajectory, 1.0, rng);
    const EigenfunctionSet eigs = eigenfunctions(sys.matrix());
    {
        double dev = 0.0;
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            dev = std::max(dev, verify_eigenfunction(sys, eigs, i, kTimeGrid));
        }
        report.checks.push_back(make("eigenfunction.evolution", dev, kEigenTol));
    }
    {
        double dev = 0.0;
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            for (std::size_t j = i; j < eigs.size(); ++j) {
                dev = std::max(dev,
                               verify_eigenfunction_product(sys, eigs, i, j, kTimeGrid).deviation);
            }
        }
        report.checks.push_back(make("eigenfunction.product", dev, kEigenTol));
    }

    const int n_qubits = static_cast<int>(std::ceil(std::log2(static_cast<double>(d))));
    const Embedding emb = verify_isometric_embedding(eigs, sys, std::max(1, n_qubits));
    report.checks.push_back(make("embedding.gram", emb.deviation(), kGramTol));

    const ModeCheck modes =
        verify_mode_preservation(eigs.lambdas, emb, kTimeGrid, options.mode_perturbation);
    report.checks.push_back(make("mode_preservation.basis", modes.basis_deviation, kModeTol));
    report.checks.push_back(
        make("mode_preservation.embedded", modes.embedded_deviation, kModeTol));

    {
        // A single decaying oscillation, embedded on its own.
        const std::vector<std::complex<double>> lam{{-0.3, 1.7}};
        Eigen::MatrixXcd values(3, 1);
        values << std::complex<double>(1.0, 0.5), std::complex<double>(-0.2, 1.0),
            std::complex<double>(0.7, -0.4);
        const Embedding single =
            verify_isometric_embedding(values, Eigen::VectorXd::Constant(3, 1.0 / 3.0), 1);
        const ModeCheck m = verify_mode_preservation(lam, single, kTimeGrid, options.mode_perturbation);
        report.checks.push_back(make("mode_preservation.decaying_complex", m.deviation(), kModeTol));
    }
    {
        std::uniform_real_distribution<double> omega(-3.0, 3.0);
        std::vector<std::complex<double>> lam;
        for (int k = 0; k < 8; ++k) lam.emplace_back(0.0, omega(rng));
        const double dev =
            verify_mode_preservation_unitary(lam, 3, kTimeGrid, options.mode_perturbation);
        report.checks.push_back(make("mode_preservation.unitary_path", dev, kModeTol));
    }
    return report;
}

std::string report_to_json(const SuiteReport &report, std::string_view config_hash) {
    nlohmann::ordered_json doc;
    auto checks = nlohmann::ordered_json::array();
    for (const auto &c : report.checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["deviation"] = c.deviation;
        j["threshold"] = c.threshold;
        j["pass"] = c.pass;
        checks.push_back(j);
    }
    doc["checks"] = checks;
    doc["all_pass"] = report.all_pass();
    if (!config_hash.empty()) doc["config_hash"] = std::string(config_hash);
    return doc.dump(2);
}

} // namespace koopq::iso
