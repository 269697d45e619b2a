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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koopq/koopman/hankel.hpp"
#include "koopq/model/pqnn.hpp"
#include "koopq/model/train.hpp"
#include "koopq/signal/synthetic.hpp"

namespace koopq::pipeline {

struct Seeds {
    std::uint64_t data = 7;  ///< synthetic corpus
    std::uint64_t split = 11;
    std::uint64_t model = 1; ///< parameter initialization

    bool operator==(const Seeds &) const = default;
};

enum class Baseline { None, Mln };

std::string_view to_string(Baseline baseline);
Baseline baseline_from_string(std::string_view name);

struct VerifyConfig {
    std::uint64_t seed = 20240917;
    std::size_t semigroup_systems = 100;
    std::complex<double> mode_perturbation{};

    bool operator==(const VerifyConfig &) const = default;
};

struct PipelineConfig {
    /// Relative paths resolve against base_dir, which is the directory of
    /// the config file and is not itself serialized.
    std::filesystem::path base_dir = ".";
    std::string data_dir = "data";
    std::string work_dir = "work";

    Seeds seeds;
    signal::SyntheticSpec synthetic;
    double train_fraction = 0.7;
    std::size_t min_length = 256; ///< ingest rejection threshold
    koopman::HankelConfig hankel;
    model::PqnnConfig model;
    Baseline baseline = Baseline::None;
    std::vector<std::size_t> mln_sizes{6, 16, 16, 2};
    model::TrainConfig train;
    std::size_t extract_threads = 0; ///< 0 uses the hardware concurrency
    VerifyConfig verify;

    [[nodiscard]] std::filesystem::path data_path() const;
    [[nodiscard]] std::filesystem::path work_path() const;
    [[nodiscard]] std::filesystem::path manifest_path() const;
    [[nodiscard]] std::filesystem::path features_path() const;
    [[nodiscard]] std::filesystem::path scaler_path() const;
    [[nodiscard]] std::filesystem::path checkpoint_path() const;
    [[nodiscard]] std::filesystem::path mln_checkpoint_path() const;
    [[nodiscard]] std::filesystem::path metrics_path() const;
    [[nodiscard]] std::filesystem::path verify_path() const;

    /// Synthetic corpus settings with the data seed applied.
    [[nodiscard]] signal::SyntheticSpec synthetic_spec() const;
};

/// Command-line overrides applied on top of the file.
struct Overrides {
    std::optional<std::uint64_t> seed; ///< replaces every seed, shuffle seed included
    std::optional<std::size_t> epochs;
    std::optional<Baseline> baseline;
};

void apply(PipelineConfig &config, const Overrides &overrides);

/// Missing keys keep their defaults; unknown keys and bad values throw
/// ConfigError.
PipelineConfig config_from_json(std::string_view text);
std::string config_to_json(const PipelineConfig &config);

PipelineConfig load_config(const std::filesystem::path &path);
void save_config(const std::filesystem::path &path, const PipelineConfig &config);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);
/// Digest of the canonical serialization.
std::string config_hash(const PipelineConfig &config);

} // namespace koopq::pipeline
