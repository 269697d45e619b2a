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
#include <string>
#include <string_view>
#include <vector>

#include "koopq/signal/record.hpp"

namespace koopq::signal {

/// One newline-delimited JSON line (no trailing newline).
std::string record_to_json_line(const DischargeRecord &record);
DischargeRecord record_from_json_line(std::string_view line);

void write_manifest(const std::filesystem::path &path, const std::vector<DischargeRecord> &records);
std::vector<DischargeRecord> read_manifest(const std::filesystem::path &path);

} // namespace koopq::signal
