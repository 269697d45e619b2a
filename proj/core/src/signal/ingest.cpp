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
#include "koopq/signal/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "koopq/errors.hpp"

namespace koopq::signal {

namespace {

using nlohmann::json;

const json &require(const json &doc, const char *key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw ParseError(key, "missing required field");
    }
    return *it;
}

std::vector<double> number_array(const json &node, const std::string &field) {
    if (!node.is_array()) {
        throw ParseError(field, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        const auto &v = node[i];
        if (!v.is_number()) {
            throw ParseError(field + "[" + std::to_string(i) + "]", "expected a number");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

DischargeFile parse_discharge(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ParseError("<document>", e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("<document>", "expected a JSON object");
    }

    DischargeFile file;
    const auto &shot = require(doc, "shot");
    if (!shot.is_number_integer()) {
        throw ParseError("shot", "expected an integer");
    }
    file.shot = shot.get<std::int64_t>();

    const auto &dt = require(doc, "dt");
    if (!dt.is_number()) {
        throw ParseError("dt", "expected a number");
    }
    file.dt = dt.get<double>();
    if (!(file.dt > 0.0) || !std::isfinite(file.dt)) {
        throw ParseError("dt", "must be positive and finite");
    }

    file.time = number_array(require(doc, "time"), "time");
    for (std::size_t i = 1; i < file.time.size(); ++i) {
        if (!(file.time[i] > file.time[i - 1])) {
            throw ValidationError("time vector is not strictly increasing at index " +
                                  std::to_string(i));
        }
    }

    const auto &channels = require(doc, "channels");
    if (!channels.is_object()) {
        throw ParseError("channels", "expected an object of arrays");
    }
    for (const auto &[id, values] : channels.items()) {
        const std::string field = "channels." + id;
        auto samples = number_array(values, field);
        // An empty channel is kept so that ingest can reject it by name.
        if (!samples.empty() && samples.size() != file.time.size()) {
            throw ParseError(field, "length " + std::to_string(samples.size()) +
                                        " does not match time length " +
                                        std::to_string(file.time.size()));
        }
        file.channels.emplace(id, std::move(samples));
    }

    const auto &anomalies = require(doc, "anomaly_channels");
    if (!anomalies.is_array()) {
        throw ParseError("anomaly_channels", "expected an array of channel ids");
    }
    for (std::size_t i = 0; i < anomalies.size(); ++i) {
        const std::string field = "anomaly_channels[" + std::to_string(i) + "]";
        if (!anomalies[i].is_string()) {
            throw ParseError(field, "expected a string");
        }
        auto id = anomalies[i].get<std::string>();
        if (!file.channels.contains(id)) {
            throw ParseError(field, "unknown channel '" + id + "'");
        }
        file.anomaly_channels.push_back(std::move(id));
    }
    return file;
}

DischargeFile read_discharge_file(const std::filesystem::path &path) {
    return parse_discharge(read_text(path));
}

std::string discharge_to_json(const DischargeFile &file) {
    json doc;
    doc["shot"] = file.shot;
    doc["dt"] = file.dt;
    doc["time"] = file.time;
    doc["channels"] = json::object();
    for (const auto &[id, samples] : file.channels) {
        doc["channels"][id] = samples;
    }
    doc["anomaly_channels"] = file.anomaly_channels;
    return doc.dump();
}

void write_discharge_file(const std::filesystem::path &path, const DischargeFile &file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path.string(), "cannot open file for writing");
    }
    out << discharge_to_json(file) << '\n';
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

std::size_t trigger_index(const std::vector<double> &time) {
    auto it = std::find_if(time.begin(), time.end(), [](double t) { return t >= 0.0; });
    return static_cast<std::size_t>(it - time.begin());
}

IngestResult ingest_discharge(const DischargeFile &file, const IngestOptions &options) {
    IngestResult result;
    const std::size_t onset = trigger_index(file.time);
    for (const auto &[id, samples] : file.channels) {
        if (samples.empty()) {
            result.rejected.push_back({id, "empty channel"});
            continue;
        }
        if (onset >= samples.size()) {
            result.rejected.push_back({id, "all samples are pre-trigger"});
            continue;
        }
        std::vector<double> active(samples.begin() + static_cast<std::ptrdiff_t>(onset),
                                   samples.end());
        if (active.size() < options.min_length) {
            result.rejected.push_back(
                {id, "length " + std::to_string(active.size()) + " below minimum " +
                         std::to_string(options.min_length)});
            continue;
        }
        if (!std::all_of(active.begin(), active.end(), [](double x) { return std::isfinite(x); })) {
            result.rejected.push_back({id, "non-finite sample"});
            continue;
        }
        DischargeRecord rec;
        rec.shot_id = file.shot;
        rec.channel_id = id;
        rec.dt = file.dt;
        rec.samples = std::move(active);
        const bool anomalous = std::find(file.anomaly_channels.begin(), file.anomaly_channels.end(),
                                         id) != file.anomaly_channels.end();
        rec.label = anomalous ? kLabelAnomaly : kLabelNormal;
        result.records.push_back(std::move(rec));
    }
    return result;
}

IngestResult ingest_discharge_file(const std::filesystem::path &path,
                                   const IngestOptions &options) {
    return ingest_discharge(read_discharge_file(path), options);
}

} // namespace koopq::signal
