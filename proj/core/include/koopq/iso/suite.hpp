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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace koopq::iso {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct SuiteOptions {
    std::uint64_t seed = 20240917;
    std::size_t semigroup_systems = 100;
    std::size_t dimension = 4;
    std::size_t trajectories = 8;
    std::size_t times_per_trajectory = 4;
    /// Added to the first eigenvalue when effective generators are built.
    std::complex<double> mode_perturbation{};
};

struct SuiteReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool all_pass() const noexcept;
};

SuiteReport run_suite(const SuiteOptions &options = {});

/// {"checks":[{"name","deviation","threshold","pass"}...],"all_pass":bool}
std::string report_to_json(const SuiteReport &report, std::string_view config_hash = {});

} // namespace koopq::iso
