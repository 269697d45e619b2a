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

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "koopq/koopman/features.hpp"
#include "koopq/koopman/feature_io.hpp"
#include "koopq/pipeline/config.hpp"

namespace koopq::pipeline {

inline constexpr int kExitOk = 0;

/// Writes the manifest; prints record and label counts.
int cmd_generate(const PipelineConfig &config, std::ostream &log);

struct ExtractSummary {
    std::size_t extracted = 0;
    std::size_t skipped = 0;
};

/// Features for one standardized-on-the-fly series. Throws SizingError when
/// the series is infeasible for the Hankel config.
koopman::FeatureArray record_features(const std::vector<double> &samples, double dt,
                                      const koopman::HankelConfig &hankel);

/// Writes the feature CSV and the scaler fitted on the training split.
ExtractSummary extract(const PipelineConfig &config, std::ostream &log);
int cmd_extract(const PipelineConfig &config, std::ostream &log);

/// Trains the PQNN (and the MLN baseline when configured).
int cmd_train(const PipelineConfig &config, std::ostream &log);

enum class EvalSplit { Train, Test, All };
EvalSplit eval_split_from_string(const std::string &name);

struct EvalOptions {
    std::optional<std::filesystem::path> checkpoint;
    std::optional<std::filesystem::path> features;
    EvalSplit split = EvalSplit::Test;
    std::optional<std::filesystem::path> latents;
    std::optional<std::filesystem::path> output;
};

int cmd_eval(const PipelineConfig &config, const EvalOptions &options, std::ostream &log);

struct ScreenOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> checkpoint;
    std::optional<std::filesystem::path> output;
};

struct ChannelVerdict {
    std::string channel;
    std::optional<double> p_normal;
    std::string verdict; ///< normal, anomaly or unscreenable
    std::string reason;  ///< set for unscreenable channels
};

std::vector<ChannelVerdict> screen(const PipelineConfig &config, const ScreenOptions &options);
std::string verdicts_to_json(const std::vector<ChannelVerdict> &verdicts);
int cmd_screen(const PipelineConfig &config, const ScreenOptions &options, std::ostream &out);

/// Exit code 5 when any check fails.
int cmd_verify(const PipelineConfig &config, std::ostream &out);

/// Runs a command, mapping koopq errors onto their exit codes.
int run_guarded(const std::function<int()> &command, std::ostream &err);

} // namespace koopq::pipeline
