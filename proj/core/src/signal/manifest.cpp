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
#include "koopq/signal/manifest.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "koopq/errors.hpp"

namespace koopq::signal {

using nlohmann::json;

std::string record_to_json_line(const DischargeRecord &record) {
    nlohmann::ordered_json j;
    j["shot_id"] = record.shot_id;
    j["channel_id"] = record.channel_id;
    j["dt"] = record.dt;
    j["samples"] = record.samples;
    j["label"] = record.label;
    return j.dump();
}

DischargeRecord record_from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error &e) {
        throw ParseError("<line>", e.what());
    }
    auto field = [&](const char *key) -> const json & {
        auto it = j.find(key);
        if (it == j.end()) {
            throw ParseError(key, "missing required field");
        }
        return *it;
    };
    DischargeRecord rec;
    if (!field("shot_id").is_number_integer()) throw ParseError("shot_id", "expected an integer");
    rec.shot_id = field("shot_id").get<std::int64_t>();
    if (!field("channel_id").is_string()) throw ParseError("channel_id", "expected a string");
    rec.channel_id = field("channel_id").get<std::string>();
    if (!field("dt").is_number()) throw ParseError("dt", "expected a number");
    rec.dt = field("dt").get<double>();
    if (!(rec.dt > 0.0)) throw ParseError("dt", "must be positive");
    const auto &samples = field("samples");
    if (!samples.is_array()) throw ParseError("samples", "expected an array");
    rec.samples.reserve(samples.size());
    for (const auto &v : samples) {
        if (!v.is_number()) throw ParseError("samples", "expected numbers");
        rec.samples.push_back(v.get<double>());
    }
    if (!field("label").is_number_integer()) throw ParseError("label", "expected an integer");
    rec.label = field("label").get<int>();
    if (rec.label != kLabelAnomaly && rec.label != kLabelNormal) {
        throw ParseError("label", "must be 0 or 1");
    }
    return rec;
}

void write_manifest(const std::filesystem::path &path, const std::vector<DischargeRecord> &records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path.string(), "cannot open file for writing");
    }
    for (const auto &rec : records) {
        out << record_to_json_line(rec) << '\n';
    }
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

std::vector<DischargeRecord> read_manifest(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open manifest");
    }
    std::vector<DischargeRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            records.push_back(record_from_json_line(line));
        } catch (const ParseError &e) {
            throw ParseError("line " + std::to_string(lineno) + "." + e.field(), e.what());
        }
    }
    return records;
}

} // namespace koopq::signal
