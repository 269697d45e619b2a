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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "koopq/signal/record.hpp"

namespace koopq::signal {

/// In-memory form of one discharge JSON document (one file per shot).
struct DischargeFile {
    std::int64_t shot = 0;
    double dt = 1.0;
    std::vector<double> time;
    std::map<std::string, std::vector<double>> channels;
    std::vector<std::string> anomaly_channels;
};

struct IngestOptions {
    /// Records shorter than this after trigger alignment are rejected.
    std::size_t min_length = 256;
};

struct Rejection {
    std::string channel_id;
    std::string reason;
};

struct IngestResult {
    std::vector<DischargeRecord> records;
    std::vector<Rejection> rejected;
};

/// Throws ParseError naming the offending field, or ValidationError when the
/// time vector is not strictly increasing.
DischargeFile parse_discharge(std::string_view json_text);
DischargeFile read_discharge_file(const std::filesystem::path &path);

std::string discharge_to_json(const DischargeFile &file);
void write_discharge_file(const std::filesystem::path &path, const DischargeFile &file);

/// Drops pre-trigger samples (t < 0) and labels channels. Channels that end up
/// empty or below `min_length` are skipped and reported in `rejected`.
IngestResult ingest_discharge(const DischargeFile &file, const IngestOptions &options = {});
IngestResult ingest_discharge_file(const std::filesystem::path &path,
                                   const IngestOptions &options = {});

/// Index of the first sample with t >= 0; time.size() when all are pre-trigger.
std::size_t trigger_index(const std::vector<double> &time);

} // namespace koopq::signal
