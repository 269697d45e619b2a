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
#include "koopq/pipeline/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "koopq/errors.hpp"
#include "koopq/iso/suite.hpp"
#include "koopq/koopman/generator.hpp"
#include "koopq/model/checkpoint.hpp"
#include "koopq/model/metrics.hpp"
#include "koopq/model/mln.hpp"
#include "koopq/model/pqnn.hpp"
#include "koopq/model/train.hpp"
#include "koopq/signal/ingest.hpp"
#include "koopq/signal/manifest.hpp"
#include "koopq/signal/preprocess.hpp"
#include "koopq/signal/synthetic.hpp"

namespace koopq::pipeline {

namespace {

using json = nlohmann::ordered_json;

void ensure_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory (" + ec.message() + ")");
}

std::string pipeline_block(const PipelineConfig &config) {
    json j;
    j["config_hash"] = config_hash(config);
    j["config"] = json::parse(config_to_json(config));
    return j.dump();
}

struct SplitSets {
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

SplitSets split_rows(const PipelineConfig &config, std::size_t n) {
    auto s = signal::split_indices(n, config.train_fraction, config.seeds.split);
    return {std::move(s.train), std::move(s.test)};
}

model::LabeledSet labeled(const std::vector<koopman::FeatureRow> &rows,
                          const std::vector<std::size_t> &pick,
                          const koopman::FeatureScaler &scaler) {
    model::LabeledSet out;
    out.x.reserve(pick.size());
    out.y.reserve(pick.size());
    for (auto i : pick) {
        out.x.push_back(scaler.apply(rows[i].raw));
        out.y.push_back(rows[i].label);
    }
    return out;
}

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

void check_feature_width(const PipelineConfig &config) {
    if (config.model.m != koopman::kFeatureCount) {
        throw ConfigError("model input width m = " + std::to_string(config.model.m) +
                          " does not match the " + std::to_string(koopman::kFeatureCount) +
                          " extracted features");
    }
}

std::string fmt(double x) { return koopman::format_double(x); }

double final_test_accuracy(const std::vector<model::EpochRecord> &h) {
    return h.empty() || !h.back().test_acc ? 0.0 : *h.back().test_acc;
}

template <class Model>
json eval_block(const Model &m, const model::LabeledSet &data, const std::string &hash,
                model::EvalReport &report) {
    report = model::evaluate(m, data);
    return json::parse(model::report_to_json(report, hash));
}

} // namespace

int cmd_generate(const PipelineConfig &config, std::ostream &log) {
    const auto dataset = signal::generate_synthetic(config.synthetic_spec());
    ensure_dir(config.data_path());
    signal::write_manifest(config.manifest_path(), dataset.records);
    const auto anomalies = static_cast<std::size_t>(
        std::count_if(dataset.records.begin(), dataset.records.end(),
                      [](const auto &r) { return r.label == signal::kLabelAnomaly; }));
    log << "generated " << dataset.records.size() << " records (label 0: " << anomalies
        << ", label 1: " << dataset.records.size() - anomalies << ") -> "
        << config.manifest_path().string() << "\n";
    return kExitOk;
}

koopman::FeatureArray record_features(const std::vector<double> &samples, double dt,
                                      const koopman::HankelConfig &hankel) {
    koopman::validate(hankel, samples.size());
    const auto z = signal::standardize_samples(samples);
    const auto decomp = koopman::decompose(z, dt, hankel);
    const auto &r = decomp.residual_norms;
    return koopman::extract_features(std::span<const double>(r.data(), static_cast<std::size_t>(r.size())));
}

ExtractSummary extract(const PipelineConfig &config, std::ostream &log) {
    if (!std::filesystem::exists(config.manifest_path())) {
        throw IoError(config.manifest_path().string(), "manifest not found");
    }
    const auto records = signal::read_manifest(config.manifest_path());
    const std::size_t n = records.size();
    std::vector<std::optional<koopman::FeatureArray>> features(n);
    std::vector<std::string> failures(n);

    std::size_t threads = config.extract_threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            const auto &rec = records[i];
            if (!config.hankel.feasible(rec.samples.size())) {
                failures[i] = "length " + std::to_string(rec.samples.size()) +
                              " is below the Hankel minimum " +
                              std::to_string(config.hankel.min_length());
                continue;
            }
            try {
                features[i] = record_features(rec.samples, rec.dt, config.hankel);
            } catch (const Error &e) {
                failures[i] = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    ExtractSummary summary;
    std::vector<koopman::FeatureRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (!features[i]) {
            ++summary.skipped;
            log << "warning: skipped shot " << records[i].shot_id << " channel "
                << records[i].channel_id << ": " << failures[i] << "\n";
            continue;
        }
        rows.push_back({records[i].shot_id, records[i].channel_id, records[i].label, *features[i]});
    }
    summary.extracted = rows.size();
    if (rows.empty()) throw ValidationError("no record survived feature extraction");

    const auto split = split_rows(config, rows.size());
    std::vector<koopman::FeatureArray> train_raw;
    for (auto i : split.train_rows) train_raw.push_back(rows[i].raw);
    if (train_raw.empty()) throw ValidationError("training split is empty");
    const auto scaler = koopman::FeatureScaler::fit(train_raw);

    ensure_dir(config.work_path());
    koopman::write_feature_csv(config.features_path(), rows);
    koopman::write_scaler(config.scaler_path(), scaler);
    log << "extracted " << summary.extracted << " records, skipped " << summary.skipped
        << " -> " << config.features_path().string() << "\n";
    return summary;
}

int cmd_extract(const PipelineConfig &config, std::ostream &log) {
    extract(config, log);
    return kExitOk;
}

int cmd_train(const PipelineConfig &config, std::ostream &log) {
    check_feature_width(config);
    const auto rows = koopman::read_feature_csv(config.features_path());
    const auto scaler = koopman::read_scaler(config.scaler_path());
    const auto split = split_rows(config, rows.size());
    const auto train_set = labeled(rows, split.train_rows, scaler);
    const auto test_set = labeled(rows, split.test_rows, scaler);
    const model::LabeledSet *test_ptr = test_set.size() ? &test_set : nullptr;
    const std::string pipeline = pipeline_block(config);

    auto pqnn = model::PqnnModel::init(config.seeds.model, config.model);
    auto history = model::train(pqnn, train_set, config.train, test_ptr);
    log << "pqnn: " << pqnn.trainable_count() << " trainable parameters, " << history.size()
        << " epochs, final test accuracy " << fmt(final_test_accuracy(history)) << "\n";
    model::write_text_file(config.checkpoint_path(),
                           model::checkpoint_to_json(model::PqnnCheckpoint{
                               std::move(pqnn), scaler, config.train, config.seeds.model,
                               std::move(history), pipeline}));

    if (config.baseline == Baseline::Mln) {
        auto mln = model::MlnModel::init(config.seeds.model, config.mln_sizes);
        auto mh = model::train(mln, train_set, config.train, test_ptr);
        log << "mln: " << mln.trainable_count() << " trainable parameters, " << mh.size()
            << " epochs, final test accuracy " << fmt(final_test_accuracy(mh)) << "\n";
        model::write_text_file(config.mln_checkpoint_path(),
                               model::checkpoint_to_json(model::MlnCheckpoint{
                                   std::move(mln), scaler, config.train, config.seeds.model,
                                   std::move(mh), pipeline}));
    }
    return kExitOk;
}

EvalSplit eval_split_from_string(const std::string &name) {
    if (name == "train") return EvalSplit::Train;
    if (name == "test") return EvalSplit::Test;
    if (name == "all") return EvalSplit::All;
    throw ConfigError("unknown split '" + name + "' (expected train, test or all)");
}

int cmd_eval(const PipelineConfig &config, const EvalOptions &options, std::ostream &log) {
    check_feature_width(config);
    const auto ckpt_path = options.checkpoint.value_or(config.checkpoint_path());
    auto ckpt = model::pqnn_checkpoint_from_json(model::read_text_file(ckpt_path));
    if (!(ckpt.model.config() == config.model)) {
        throw ConfigError("checkpoint " + ckpt_path.string() +
                          " was trained with a different model configuration");
    }
    const auto features_path = options.features.value_or(config.features_path());
    const auto rows = koopman::read_feature_csv(features_path);
    std::vector<std::size_t> pick;
    const char *split_name = "all";
    if (options.features || options.split == EvalSplit::All) {
        pick = all_rows(rows.size());
    } else {
        const auto split = split_rows(config, rows.size());
        pick = options.split == EvalSplit::Train ? split.train_rows : split.test_rows;
        split_name = options.split == EvalSplit::Train ? "train" : "test";
    }
    const auto data = labeled(rows, pick, ckpt.scaler);
    const std::string hash = config_hash(config);

    model::EvalReport report;
    json doc = eval_block(ckpt.model, data, hash, report);
    doc["split"] = split_name;
    doc["n"] = data.size();
    {
        std::vector<std::vector<double>> pts;
        for (const auto &x : data.x) pts.emplace_back(x.begin(), x.end());
        const auto s = model::silhouette_score(pts, data.y);
        doc["feature_silhouette"] = s ? json(*s) : json(nullptr);
    }
    if (config.baseline == Baseline::Mln && std::filesystem::exists(config.mln_checkpoint_path())) {
        const auto mck =
            model::mln_checkpoint_from_json(model::read_text_file(config.mln_checkpoint_path()));
        model::EvalReport mr;
        json b = eval_block(mck.model, labeled(rows, pick, mck.scaler), {}, mr);
        doc["baseline"] = b;
        log << "mln accuracy " << fmt(mr.accuracy) << "\n";
    }

    const auto out = options.output.value_or(config.metrics_path());
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    model::write_text_file(out, doc.dump(2));
    log << "pqnn accuracy " << fmt(report.accuracy) << " on " << data.size() << " " << split_name
        << " records -> " << out.string() << "\n";

    if (options.latents) {
        std::ofstream f(*options.latents, std::ios::binary);
        if (!f) throw IoError(options.latents->string(), "cannot open file for writing");
        f << "shot_id,channel_id,label,latent_0,latent_1\n";
        for (std::size_t i = 0; i < pick.size(); ++i) {
            const auto &r = rows[pick[i]];
            f << r.shot_id << ',' << r.channel_id << ',' << r.label << ','
              << fmt(report.latent[i][0]) << ',' << fmt(report.latent[i][1]) << '\n';
        }
        if (!f) throw IoError(options.latents->string(), "write failed");
    }
    return kExitOk;
}

std::vector<ChannelVerdict> screen(const PipelineConfig &config, const ScreenOptions &options) {
    const auto ckpt_path = options.checkpoint.value_or(config.checkpoint_path());
    const auto ckpt = model::pqnn_checkpoint_from_json(model::read_text_file(ckpt_path));
    const auto file = signal::read_discharge_file(options.input);
    const auto ingested = signal::ingest_discharge(file, {config.min_length});

    std::map<std::string, ChannelVerdict> by_channel;
    for (const auto &rej : ingested.rejected) {
        by_channel[rej.channel_id] = {rej.channel_id, std::nullopt, "unscreenable", rej.reason};
    }
    for (const auto &rec : ingested.records) {
        ChannelVerdict v{rec.channel_id, std::nullopt, "unscreenable", {}};
        if (!config.hankel.feasible(rec.samples.size())) {
            v.reason = "length " + std::to_string(rec.samples.size()) +
                       " is below the Hankel minimum " + std::to_string(config.hankel.min_length());
        } else {
            try {
                const auto z = ckpt.scaler.apply(record_features(rec.samples, rec.dt, config.hankel));
                const double p = model::p_normal(ckpt.model.logits(z));
                v.p_normal = p;
                v.verdict = p > 0.5 ? "normal" : "anomaly";
            } catch (const NumericalError &e) {
                v.reason = e.what();
            }
        }
        by_channel[rec.channel_id] = std::move(v);
    }
    std::vector<ChannelVerdict> out;
    for (const auto &[id, _] : file.channels) out.push_back(by_channel.at(id));
    return out;
}

std::string verdicts_to_json(const std::vector<ChannelVerdict> &verdicts) {
    json arr = json::array();
    for (const auto &v : verdicts) {
        json j;
        j["channel"] = v.channel;
        j["p_normal"] = v.p_normal ? json(*v.p_normal) : json(nullptr);
        j["verdict"] = v.verdict;
        if (!v.reason.empty()) j["reason"] = v.reason;
        arr.push_back(j);
    }
    return arr.dump(2);
}

int cmd_screen(const PipelineConfig &config, const ScreenOptions &options, std::ostream &out) {
    const auto text = verdicts_to_json(screen(config, options));
    if (options.output) {
        model::write_text_file(*options.output, text);
    }
    out << text << "\n";
    return kExitOk;
}

int cmd_verify(const PipelineConfig &config, std::ostream &out) {
    iso::SuiteOptions opts;
    opts.seed = config.verify.seed;
    opts.semigroup_systems = config.verify.semigroup_systems;
    opts.mode_perturbation = config.verify.mode_perturbation;
    const auto report = iso::run_suite(opts);
    const auto text = iso::report_to_json(report, config_hash(config));
    ensure_dir(config.work_path());
    model::write_text_file(config.verify_path(), text);
    out << text << "\n";
    return report.all_pass() ? kExitOk : static_cast<int>(ErrorKind::Verification);
}

int run_guarded(const std::function<int()> &command, std::ostream &err) {
    try {
        return command();
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace koopq::pipeline
