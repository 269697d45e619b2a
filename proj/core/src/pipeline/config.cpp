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
#include "koopq/pipeline/config.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "koopq/errors.hpp"
#include "koopq/model/checkpoint.hpp"

namespace koopq::pipeline {

namespace {

using json = nlohmann::ordered_json;

/// Reads an optional section while rejecting keys it does not know.
class Section {
  public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError("config '" + path_ + "' must be an object");
    }

    template <class T>
    void get(const char *key, T &out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception &e) {
            throw ConfigError("config '" + path_ + "." + key + "': " + e.what());
        }
    }

    [[nodiscard]] std::optional<Section> child(const char *key) {
        seen_.insert(key);
        if (!j_.contains(key)) return std::nullopt;
        return Section(j_.at(key), path_.empty() ? key : path_ + "." + key);
    }

    void finish() const {
        for (const auto &[key, _] : j_.items()) {
            if (!seen_.count(key)) {
                throw ConfigError("unknown config key '" + (path_.empty() ? "" : path_ + ".") +
                                  key + "'");
            }
        }
    }

    [[nodiscard]] const json &raw() const { return j_; }
    [[nodiscard]] const std::string &path() const { return path_; }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

json synthetic_json(const signal::SyntheticSpec &s) {
    json kinds = json::array();
    for (auto k : s.anomaly_kinds) kinds.push_back(std::string(signal::to_string(k)));
    const auto &m = s.magnitudes;
    return {{"n_records", s.n_records},
            {"anomaly_fraction", s.anomaly_fraction},
            {"t_min", s.t_min},
            {"t_max", s.t_max},
            {"anomaly_kinds", kinds},
            {"dt", s.dt},
            {"noise_level", s.noise_level},
            {"magnitudes",
             {{"jump_min", m.jump_min},
              {"jump_max", m.jump_max},
              {"burst_min", m.burst_min},
              {"burst_max", m.burst_max},
              {"vibration_min", m.vibration_min},
              {"vibration_max", m.vibration_max}}}};
}

void read_synthetic(Section sec, signal::SyntheticSpec &s) {
    sec.get("n_records", s.n_records);
    sec.get("anomaly_fraction", s.anomaly_fraction);
    sec.get("t_min", s.t_min);
    sec.get("t_max", s.t_max);
    std::vector<std::string> kinds;
    bool have_kinds = sec.raw().contains("anomaly_kinds");
    sec.get("anomaly_kinds", kinds);
    if (have_kinds) {
        s.anomaly_kinds.clear();
        for (const auto &k : kinds) {
            auto kind = signal::anomaly_kind_from_string(k);
            if (!kind) throw ConfigError("unknown anomaly kind '" + k + "'");
            s.anomaly_kinds.push_back(*kind);
        }
    }
    sec.get("dt", s.dt);
    sec.get("noise_level", s.noise_level);
    if (auto m = sec.child("magnitudes")) {
        auto &g = s.magnitudes;
        m->get("jump_min", g.jump_min);
        m->get("jump_max", g.jump_max);
        m->get("burst_min", g.burst_min);
        m->get("burst_max", g.burst_max);
        m->get("vibration_min", g.vibration_min);
        m->get("vibration_max", g.vibration_max);
        m->finish();
    }
    sec.finish();
}

void validate(const PipelineConfig &c) {
    const auto &s = c.synthetic;
    if (s.t_min == 0 || s.t_min > s.t_max) throw ConfigError("synthetic t_min must be in [1, t_max]");
    if (!(s.anomaly_fraction >= 0.0 && s.anomaly_fraction <= 1.0)) {
        throw ConfigError("synthetic anomaly_fraction must be in [0, 1]");
    }
    if (!(s.dt > 0.0)) throw ConfigError("synthetic dt must be positive");
    if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
        throw ConfigError("split train_fraction must be in (0, 1)");
    }
    if (c.hankel.d_h < 2 || c.hankel.tau_h < 1 || c.hankel.rank < 1 ||
        c.hankel.rank > c.hankel.d_h) {
        throw ConfigError("hankel needs d_h >= 2, tau_h >= 1 and 1 <= rank <= d_h");
    }
    if (c.model.n * c.model.k != c.model.m) {
        throw ConfigError("model sizing requires n * k == m");
    }
    if (c.mln_sizes.size() < 2 || c.mln_sizes.front() != c.model.m || c.mln_sizes.back() != 2) {
        throw ConfigError("baseline sizes must start at m and end at 2");
    }
    if (c.train.batch_size == 0) throw ConfigError("train batch_size must be positive");
    if (c.data_dir.empty() || c.work_dir.empty()) throw ConfigError("paths must be non-empty");
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

} // namespace

std::string_view to_string(Baseline baseline) {
    return baseline == Baseline::Mln ? "mln" : "none";
}

Baseline baseline_from_string(std::string_view name) {
    if (name == "none") return Baseline::None;
    if (name == "mln") return Baseline::Mln;
    throw ConfigError("unknown baseline '" + std::string(name) + "' (expected none or mln)");
}

std::filesystem::path PipelineConfig::data_path() const { return resolve(base_dir, data_dir); }
std::filesystem::path PipelineConfig::work_path() const { return resolve(base_dir, work_dir); }
std::filesystem::path PipelineConfig::manifest_path() const {
    return data_path() / "manifest.jsonl";
}
std::filesystem::path PipelineConfig::features_path() const { return work_path() / "features.csv"; }
std::filesystem::path PipelineConfig::scaler_path() const { return work_path() / "scaler.json"; }
std::filesystem::path PipelineConfig::checkpoint_path() const {
    return work_path() / "checkpoint.json";
}
std::filesystem::path PipelineConfig::mln_checkpoint_path() const {
    return work_path() / "mln_checkpoint.json";
}
std::filesystem::path PipelineConfig::metrics_path() const { return work_path() / "metrics.json"; }
std::filesystem::path PipelineConfig::verify_path() const { return work_path() / "verify.json"; }

signal::SyntheticSpec PipelineConfig::synthetic_spec() const {
    auto spec = synthetic;
    spec.rng_seed = seeds.data;
    return spec;
}

void apply(PipelineConfig &config, const Overrides &overrides) {
    if (overrides.seed) {
        const auto s = *overrides.seed;
        config.seeds = {s, s, s};
        config.train.rng_seed = s;
    }
    if (overrides.epochs) config.train.epochs = *overrides.epochs;
    if (overrides.baseline) config.baseline = *overrides.baseline;
}

PipelineConfig config_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig c;
    Section root(doc, "");
    if (auto p = root.child("paths")) {
        p->get("data_dir", c.data_dir);
        p->get("work_dir", c.work_dir);
        p->finish();
    }
    if (auto s = root.child("seeds")) {
        s->get("data", c.seeds.data);
        s->get("split", c.seeds.split);
        s->get("model", c.seeds.model);
        s->finish();
    }
    if (auto s = root.child("synthetic")) read_synthetic(*s, c.synthetic);
    if (auto s = root.child("split")) {
        s->get("train_fraction", c.train_fraction);
        s->finish();
    }
    if (auto s = root.child("ingest")) {
        s->get("min_length", c.min_length);
        s->finish();
    }
    if (auto s = root.child("hankel")) {
        s->get("d_h", c.hankel.d_h);
        s->get("tau_h", c.hankel.tau_h);
        s->get("rank", c.hankel.rank);
        s->finish();
    }
    if (auto s = root.child("model")) {
        s->get("m", c.model.m);
        s->get("k", c.model.k);
        s->get("n", c.model.n);
        s->get("share_params", c.model.share_params);
        std::string ansatz(model::to_string(c.model.ansatz));
        s->get("ansatz", ansatz);
        try {
            c.model.ansatz = model::ansatz_from_string(ansatz);
        } catch (const Error &e) {
            throw ConfigError(e.what());
        }
        s->get("layers", c.model.layers);
        s->get("norm_eps", c.model.norm_eps);
        s->finish();
    }
    if (auto s = root.child("baseline")) {
        std::string kind(to_string(c.baseline));
        s->get("kind", kind);
        c.baseline = baseline_from_string(kind);
        s->get("sizes", c.mln_sizes);
        s->finish();
    }
    if (auto s = root.child("train")) {
        auto &t = c.train;
        s->get("learning_rate", t.learning_rate);
        s->get("epochs", t.epochs);
        s->get("batch_size", t.batch_size);
        s->get("beta1", t.beta1);
        s->get("beta2", t.beta2);
        s->get("eps", t.eps);
        s->get("weight_decay", t.weight_decay);
        s->get("rng_seed", t.rng_seed);
        s->get("max_steps", t.max_steps);
        s->finish();
    }
    if (auto s = root.child("extract")) {
        s->get("threads", c.extract_threads);
        s->finish();
    }
    if (auto s = root.child("verify")) {
        s->get("seed", c.verify.seed);
        s->get("semigroup_systems", c.verify.semigroup_systems);
        std::vector<double> pert{c.verify.mode_perturbation.real(),
                                 c.verify.mode_perturbation.imag()};
        s->get("mode_perturbation", pert);
        if (pert.size() != 2) throw ConfigError("verify.mode_perturbation must be [re, im]");
        c.verify.mode_perturbation = {pert[0], pert[1]};
        s->finish();
    }
    root.finish();
    validate(c);
    return c;
}

std::string config_to_json(const PipelineConfig &c) {
    json doc;
    doc["paths"] = {{"data_dir", c.data_dir}, {"work_dir", c.work_dir}};
    doc["seeds"] = {{"data", c.seeds.data}, {"split", c.seeds.split}, {"model", c.seeds.model}};
    doc["synthetic"] = synthetic_json(c.synthetic);
    doc["split"] = {{"train_fraction", c.train_fraction}};
    doc["ingest"] = {{"min_length", c.min_length}};
    doc["hankel"] = {{"d_h", c.hankel.d_h}, {"tau_h", c.hankel.tau_h}, {"rank", c.hankel.rank}};
    doc["model"] = {{"m", c.model.m},
                    {"k", c.model.k},
                    {"n", c.model.n},
                    {"share_params", c.model.share_params},
                    {"ansatz", std::string(model::to_string(c.model.ansatz))},
                    {"layers", c.model.layers},
                    {"norm_eps", c.model.norm_eps}};
    doc["baseline"] = {{"kind", std::string(to_string(c.baseline))}, {"sizes", c.mln_sizes}};
    const auto &t = c.train;
    doc["train"] = {{"learning_rate", t.learning_rate}, {"epochs", t.epochs},
                    {"batch_size", t.batch_size},       {"beta1", t.beta1},
                    {"beta2", t.beta2},                 {"eps", t.eps},
                    {"weight_decay", t.weight_decay},   {"rng_seed", t.rng_seed},
                    {"max_steps", t.max_steps}};
    doc["extract"] = {{"threads", c.extract_threads}};
    doc["verify"] = {{"seed", c.verify.seed},
                     {"semigroup_systems", c.verify.semigroup_systems},
                     {"mode_perturbation",
                      {c.verify.mode_perturbation.real(), c.verify.mode_perturbation.imag()}}};
    return doc.dump(2);
}

PipelineConfig load_config(const std::filesystem::path &path) {
    if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
    std::string text;
    try {
        text = model::read_text_file(path);
    } catch (const IoError &e) {
        throw ConfigError(e.what());
    }
    auto c = config_from_json(text);
    c.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return c;
}

void save_config(const std::filesystem::path &path, const PipelineConfig &config) {
    model::write_text_file(path, config_to_json(config));
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const PipelineConfig &config) { return fnv1a_hex(config_to_json(config)); }

} // namespace koopq::pipeline
