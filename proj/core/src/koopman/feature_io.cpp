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
#include "koopq/koopman/feature_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "koopq/errors.hpp"

namespace koopq::koopman {

namespace {

double parse_double(std::string_view s, const std::string &field) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(field, "not a number: '" + std::string(s) + "'");
    }
    return x;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

nlohmann::ordered_json array_json(const FeatureArray &a) {
    return nlohmann::ordered_json(std::vector<double>(a.begin(), a.end()));
}

FeatureArray array_from_json(const nlohmann::json &j, const char *field) {
    if (!j.is_array() || j.size() != kFeatureCount) {
        throw ParseError(field, "expected an array of 6 numbers");
    }
    FeatureArray out{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (!j[i].is_number()) throw ParseError(field, "expected numbers");
        out[i] = j[i].get<double>();
    }
    return out;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

void write_feature_csv(const std::filesystem::path &path, const std::vector<FeatureRow> &rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open file for writing");
    out << kFeatureCsvHeader << '\n';
    for (const auto &row : rows) {
        if (row.channel_id.find_first_of(",\n\r") != std::string::npos) {
            throw ValidationError("channel id contains a CSV delimiter: " + row.channel_id);
        }
        out << row.shot_id << ',' << row.channel_id << ',' << row.label;
        for (double f : row.raw) out << ',' << format_double(f);
        out << '\n';
    }
    if (!out) throw IoError(path.string(), "write failed");
}

std::vector<FeatureRow> read_feature_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open feature CSV");
    std::string line;
    if (!std::getline(in, line) || line != kFeatureCsvHeader) {
        throw ParseError("header", "feature CSV header mismatch");
    }
    std::vector<FeatureRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        auto cells = split_commas(line);
        if (cells.size() != 3 + kFeatureCount) {
            throw ParseError(where, "expected 9 columns, got " + std::to_string(cells.size()));
        }
        FeatureRow row;
        auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), row.shot_id);
        if (ec != std::errc()) throw ParseError(where + ".shot_id", "not an integer");
        row.channel_id = std::string(cells[1]);
        auto [p2, ec2] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), row.label);
        if (ec2 != std::errc() || (row.label != 0 && row.label != 1)) {
            throw ParseError(where + ".label", "must be 0 or 1");
        }
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            row.raw[i] = parse_double(cells[3 + i], where + "." + std::string(kFeatureNames[i]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scaler_to_json(const FeatureScaler &scaler) {
    nlohmann::ordered_json j;
    j["lo"] = array_json(scaler.lo());
    j["hi"] = array_json(scaler.hi());
    return j.dump();
}

FeatureScaler scaler_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("<scaler>", e.what());
    }
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) {
        throw ParseError("<scaler>", "expected {\"lo\": [...], \"hi\": [...]}");
    }
    return {array_from_json(j["lo"], "lo"), array_from_json(j["hi"], "hi")};
}

void write_scaler(const std::filesystem::path &path, const FeatureScaler &scaler) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open file for writing");
    out << scaler_to_json(scaler) << '\n';
}

FeatureScaler read_scaler(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open scaler file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return scaler_from_json(ss.str());
}

} // namespace koopq::koopman
