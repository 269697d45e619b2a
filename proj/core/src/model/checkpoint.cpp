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
#include "koopq/model/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "koopq/errors.hpp"

namespace koopq::model {

namespace {

using json = nlohmann::ordered_json;

json train_json(const TrainConfig &t) {
    json j;
    j["learning_rate"] = t.learning_rate;
    j["epochs"] = t.epochs;
    j["batch_size"] = t.batch_size;
    j["beta1"] = t.beta1;
    j["beta2"] = t.beta2;
    j["eps"] = t.eps;
    j["weight_decay"] = t.weight_decay;
    j["rng_seed"] = t.rng_seed;
    j["max_steps"] = t.max_steps;
    return j;
}

TrainConfig train_from_json(const json &j) {
    TrainConfig t;
    t.learning_rate = j.at("learning_rate").get<double>();
    t.epochs = j.at("epochs").get<std::size_t>();
    t.batch_size = j.at("batch_size").get<std::size_t>();
    t.beta1 = j.at("beta1").get<double>();
    t.beta2 = j.at("beta2").get<double>();
    t.eps = j.at("eps").get<double>();
    t.weight_decay = j.at("weight_decay").get<double>();
    t.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    t.max_steps = j.at("max_steps").get<std::size_t>();
    return t;
}

json history_json(const std::vector<EpochRecord> &history) {
    json arr = json::array();
    for (const auto &h : history) {
        json e;
        e["epoch"] = h.epoch;
        e["train_loss"] = h.train_loss;
        e["test_acc"] = h.test_acc ? json(*h.test_acc) : json(nullptr);
        arr.push_back(e);
    }
    return arr;
}

std::vector<EpochRecord> history_from_json(const json &arr) {
    std::vector<EpochRecord> out;
    for (const auto &e : arr) {
        EpochRecord r;
        r.epoch = e.at("epoch").get<std::size_t>();
        r.train_loss = e.at("train_loss").get<double>();
        if (!e.at("test_acc").is_null()) r.test_acc = e.at("test_acc").get<double>();
        out.push_back(r);
    }
    return out;
}

json scaler_json(const koopman::FeatureScaler &s) {
    json j;
    j["lo"] = std::vector<double>(s.lo().begin(), s.lo().end());
    j["hi"] = std::vector<double>(s.hi().begin(), s.hi().end());
    return j;
}

koopman::FeatureScaler scaler_from(const json &j) {
    auto lo = j.at("lo").get<std::vector<double>>();
    auto hi = j.at("hi").get<std::vector<double>>();
    if (lo.size() != koopman::kFeatureCount || hi.size() != koopman::kFeatureCount) {
        throw SizingError("checkpoint scaler must hold 6 bounds per side");
    }
    koopman::FeatureArray l{};
    koopman::FeatureArray h{};
    std::copy(lo.begin(), lo.end(), l.begin());
    std::copy(hi.begin(), hi.end(), h.begin());
    return {l, h};
}

json parse_or_throw(std::string_view text, const char *what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(what, e.what());
    }
}

json config_header(const char *kind, const TrainConfig &train, const std::string &pipeline) {
    json c;
    c["schema_version"] = kCheckpointSchemaVersion;
    c["kind"] = kind;
    c["train"] = train_json(train);
    c["pipeline"] = parse_or_throw(pipeline, "pipeline");
    return c;
}

const json &check_header(const json &doc, const char *kind) {
    if (!doc.is_object() || !doc.contains("config")) {
        throw ConfigError("checkpoint is missing its config block");
    }
    const auto &c = doc.at("config");
    const int version = c.value("schema_version", -1);
    if (version != kCheckpointSchemaVersion) {
        throw ConfigError("checkpoint schema version " + std::to_string(version) +
                          " is not supported (expected " +
                          std::to_string(kCheckpointSchemaVersion) + ")");
    }
    if (c.value("kind", std::string{}) != kind) {
        throw ConfigError(std::string("checkpoint kind is not '") + kind + "'");
    }
    return c;
}

template <class F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("checkpoint does not match schema: ") + e.what());
    }
}

} // namespace

std::string checkpoint_to_json(const PqnnCheckpoint &ckpt) {
    const auto &m = ckpt.model;
    const auto &mc = m.config();
    json doc;
    json c = config_header("pqnn", ckpt.train, ckpt.pipeline_json);
    json mj;
    mj["m"] = mc.m;
    mj["k"] = mc.k;
    mj["n"] = mc.n;
    mj["share_params"] = mc.share_params;
    mj["ansatz"] = std::string(to_string(mc.ansatz));
    mj["layers"] = mc.layers;
    mj["norm_eps"] = mc.norm_eps;
    c["model"] = mj;
    doc["config"] = c;

    json w = json::array();
    for (Eigen::Index i = 0; i < m.w_enc().rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.w_enc().cols(); ++j) row.push_back(m.w_enc()(i, j));
        w.push_back(row);
    }
    doc["w_enc"] = w;
    doc["b"] = std::vector<double>(m.bias().data(), m.bias().data() + m.bias().size());
    json theta = json::array();
    for (std::size_t s = 0; s < m.parameter_sets(); ++s) {
        auto p = m.circuit_params(s);
        theta.push_back(std::vector<double>(p.begin(), p.end()));
    }
    doc["theta"] = theta;
    doc["scaler"] = scaler_json(ckpt.scaler);
    doc["seed"] = ckpt.seed;
    doc["history"] = history_json(ckpt.history);
    return doc.dump(1);
}

PqnnCheckpoint pqnn_checkpoint_from_json(std::string_view text) {
    const json doc = parse_or_throw(text, "<checkpoint>");
    const json &c = check_header(doc, "pqnn");
    return guarded([&] {
        const auto &mj = c.at("model");
        PqnnConfig mc;
        mc.m = mj.at("m").get<std::size_t>();
        mc.k = mj.at("k").get<std::size_t>();
        mc.n = mj.at("n").get<std::size_t>();
        mc.share_params = mj.at("share_params").get<bool>();
        mc.ansatz = ansatz_from_string(mj.at("ansatz").get<std::string>());
        mc.layers = mj.at("layers").get<int>();
        mc.norm_eps = mj.at("norm_eps").get<double>();

        const auto rows = doc.at("w_enc").get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd w(static_cast<Eigen::Index>(rows.size()),
                          rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != static_cast<std::size_t>(w.cols())) {
                throw SizingError("w_enc rows have unequal lengths");
            }
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
            }
        }
        const auto b = doc.at("b").get<std::vector<double>>();
        std::vector<double> params;
        for (const auto &set : doc.at("theta")) {
            auto p = set.get<std::vector<double>>();
            params.insert(params.end(), p.begin(), p.end());
        }
        PqnnModel model(mc, std::move(w),
                        Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())),
                        std::move(params));
        return PqnnCheckpoint{std::move(model),
                              scaler_from(doc.at("scaler")),
                              train_from_json(c.at("train")),
                              doc.at("seed").get<std::uint64_t>(),
                              history_from_json(doc.at("history")),
                              c.at("pipeline").dump()};
    });
}

std::string checkpoint_to_json(const MlnCheckpoint &ckpt) {
    json doc;
    json c = config_header("mln", ckpt.train, ckpt.pipeline_json);
    c["model"] = {{"sizes", ckpt.model.sizes()}, {"activation", "tanh"}};
    doc["config"] = c;
    doc["weights"] = ckpt.model.parameters();
    doc["scaler"] = scaler_json(ckpt.scaler);
    doc["seed"] = ckpt.seed;
    doc["history"] = history_json(ckpt.history);
    return doc.dump(1);
}

MlnCheckpoint mln_checkpoint_from_json(std::string_view text) {
    const json doc = parse_or_throw(text, "<checkpoint>");
    const json &c = check_header(doc, "mln");
    return guarded([&] {
        MlnModel model(c.at("model").at("sizes").get<std::vector<std::size_t>>(),
                       doc.at("weights").get<std::vector<double>>());
        return MlnCheckpoint{std::move(model),
                             scaler_from(doc.at("scaler")),
                             train_from_json(c.at("train")),
                             doc.at("seed").get<std::uint64_t>(),
                             history_from_json(doc.at("history")),
                             c.at("pipeline").dump()};
    });
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open file for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    if (!out) throw IoError(path.string(), "write failed");
}

} // namespace koopq::model
