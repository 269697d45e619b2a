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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "koopq/koopman/features.hpp"
#include "koopq/model/mln.hpp"
#include "koopq/model/pqnn.hpp"
#include "koopq/model/train.hpp"

namespace koopq::model {

inline constexpr int kCheckpointSchemaVersion = 1;

struct PqnnCheckpoint {
    PqnnModel model;
    koopman::FeatureScaler scaler;
    TrainConfig train;
    std::uint64_t seed = 0;
    std::vector<EpochRecord> history;
    /// Extra configuration (JSON object text) stored under config.pipeline.
    std::string pipeline_json = "{}";
};

struct MlnCheckpoint {
    MlnModel model;
    koopman::FeatureScaler scaler;
    TrainConfig train;
    std::uint64_t seed = 0;
    std::vector<EpochRecord> history;
    std::string pipeline_json = "{}";
};

std::string checkpoint_to_json(const PqnnCheckpoint &ckpt);
std::string checkpoint_to_json(const MlnCheckpoint &ckpt);

/// Throw ConfigError on a schema version or kind mismatch and SizingError
/// when stored shapes disagree with the stored config.
PqnnCheckpoint pqnn_checkpoint_from_json(std::string_view text);
MlnCheckpoint mln_checkpoint_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace koopq::model
