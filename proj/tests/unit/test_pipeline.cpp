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
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "koopq/errors.hpp"
#include "koopq/koopman/feature_io.hpp"
#include "koopq/model/checkpoint.hpp"
#include "koopq/pipeline/commands.hpp"
#include "koopq/pipeline/config.hpp"
#include "koopq/signal/ingest.hpp"
#include "koopq/signal/manifest.hpp"
#include "koopq/signal/synthetic.hpp"
#include "testing.hpp"

namespace {

using namespace koopq;
using namespace koopq::pipeline;
using koopq::testing::TempDir;
using nlohmann::json;
namespace fs = std::filesystem;

std::string slurp(const fs::path &p) { return model::read_text_file(p); }

PipelineConfig small_config(const fs::path &base, std::size_t n_records = 120) {
    PipelineConfig c;
    c.base_dir = base;
    c.synthetic.n_records = n_records;
    c.synthetic.t_min = 2000;
    c.synthetic.t_max = 2600;
    c.train.epochs = 12;
    c.train.batch_size = 32;
    c.extract_threads = 2;
    return c;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(KOOPQ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// One corpus, feature table and checkpoint shared by the read-only tests.
class Corpus : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        dir_ = new TempDir("corpus");
        config_ = new PipelineConfig(small_config(dir_->path()));
        std::ostringstream log;
        ASSERT_EQ(cmd_generate(*config_, log), 0);
        summary_ = extract(*config_, log);
        ASSERT_EQ(cmd_train(*config_, log), 0);
    }
    static void TearDownTestSuite() {
        delete config_;
        delete dir_;
    }

    static TempDir *dir_;
    static PipelineConfig *config_;
    static ExtractSummary summary_;
};

TempDir *Corpus::dir_ = nullptr;
PipelineConfig *Corpus::config_ = nullptr;
ExtractSummary Corpus::summary_{};

// ---------------------------------------------------------------- config

TEST(Config, RoundTripIsLossless) {
    PipelineConfig c;
    c.synthetic.anomaly_kinds = {signal::AnomalyKind::Vibration};
    c.model.ansatz = model::Ansatz::Layered;
    c.baseline = Baseline::Mln;
    c.verify.mode_perturbation = {0.25, -0.5};
    c.train.weight_decay = 0.125;
    const auto text = config_to_json(c);
    const auto back = config_from_json(text);
    EXPECT_EQ(config_to_json(back), text);
    EXPECT_EQ(back.synthetic.anomaly_kinds, c.synthetic.anomaly_kinds);
    EXPECT_EQ(back.model, c.model);
    EXPECT_EQ(back.train, c.train);
    EXPECT_EQ(back.verify, c.verify);
    EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, MissingKeysKeepDefaults) {
    const auto c = config_from_json(R"({"train":{"epochs":5}})");
    EXPECT_EQ(c.train.epochs, 5u);
    EXPECT_EQ(c.hankel.d_h, 64u);
    EXPECT_EQ(c.hankel.rank, 11u);
    EXPECT_EQ(c.synthetic.n_records, 2000u);
    EXPECT_EQ(c.train.learning_rate, 0.01);
}

TEST(Config, UnknownKeysAndBadValuesAreConfigErrors) {
    try {
        (void)config_from_json(R"({"train":{"epoch":5}})");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("train.epoch"), std::string::npos);
    }
    EXPECT_THROW((void)config_from_json(R"({"bogus":{}})"), ConfigError);
    EXPECT_THROW((void)config_from_json(R"({"split":{"train_fraction":1.5}})"), ConfigError);
    EXPECT_THROW((void)config_from_json(R"({"model":{"ansatz":"clifford"}})"), ConfigError);
    EXPECT_THROW((void)config_from_json(R"({"train":{"epochs":"many"}})"), ConfigError);
    EXPECT_THROW((void)config_from_json("{not json"), ConfigError);
    EXPECT_THROW((void)load_config("/nonexistent/koopq.json"), ConfigError);
}

TEST(Config, HashTracksContent) {
    PipelineConfig a, b;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.train.epochs = 7;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    // Published FNV-1a 64 test vectors.
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Config, OverridesReplaceAllSeeds) {
    PipelineConfig c;
    apply(c, {42, 3, Baseline::Mln});
    EXPECT_EQ(c.seeds.data, 42u);
    EXPECT_EQ(c.seeds.split, 42u);
    EXPECT_EQ(c.seeds.model, 42u);
    EXPECT_EQ(c.train.rng_seed, 42u);
    EXPECT_EQ(c.train.epochs, 3u);
    EXPECT_EQ(c.baseline, Baseline::Mln);
    EXPECT_EQ(c.synthetic_spec().rng_seed, 42u);
}

TEST(Config, RelativePathsResolveAgainstTheFile) {
    TempDir dir("cfg");
    PipelineConfig c;
    c.data_dir = "d";
    fs::create_directories(dir.path() / "sub");
    save_config(dir.path() / "sub" / "c.json", c);
    const auto back = load_config(dir.path() / "sub" / "c.json");
    EXPECT_EQ(back.manifest_path(), dir.path() / "sub" / "d" / "manifest.jsonl");
    EXPECT_EQ(back.checkpoint_path(), dir.path() / "sub" / "work" / "checkpoint.json");
}

// -------------------------------------------------------------- generate

TEST(Generate, LabelCountsAndDeterminism) {
    TempDir dir("gen");
    auto c = small_config(dir.path(), 100);
    std::ostringstream log;
    ASSERT_EQ(cmd_generate(c, log), 0);
    const auto first = slurp(c.manifest_path());
    const auto recs = signal::read_manifest(c.manifest_path());
    ASSERT_EQ(recs.size(), 100u);
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 100);
    EXPECT_EQ(std::count_if(recs.begin(), recs.end(), [](const auto &r) { return r.label == 0; }), 40);
    EXPECT_NE(log.str().find("label 0: 40"), std::string::npos);
    ASSERT_EQ(cmd_generate(c, log), 0);
    EXPECT_EQ(fnv1a_hex(slurp(c.manifest_path())), fnv1a_hex(first));

    c.synthetic.anomaly_fraction = 0.0;
    ASSERT_EQ(cmd_generate(c, log), 0);
    for (const auto &r : signal::read_manifest(c.manifest_path())) EXPECT_EQ(r.label, 1);
}

// --------------------------------------------------------------- extract

TEST(Extract, TenFeasibleRecords) {
    TempDir dir("ext10");
    auto c = small_config(dir.path(), 10);
    std::ostringstream log;
    cmd_generate(c, log);
    const auto s = extract(c, log);
    EXPECT_EQ(s.extracted, 10u);
    EXPECT_EQ(s.skipped, 0u);
    const auto csv = slurp(c.features_path());
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), koopman::kFeatureCsvHeader);
    EXPECT_TRUE(fs::exists(c.scaler_path()));
}

TEST(Extract, ShortRecordIsSkippedWithWarning) {
    TempDir dir("extshort");
    auto c = small_config(dir.path(), 6);
    std::ostringstream log;
    cmd_generate(c, log);
    auto recs = signal::read_manifest(c.manifest_path());
    // (d_h - 1) * tau_h + rank + 2 = 76 is the minimum.
    recs[2].samples.resize(75);
    signal::write_manifest(c.manifest_path(), recs);
    std::ostringstream elog;
    EXPECT_EQ(cmd_extract(c, elog), 0);
    EXPECT_NE(elog.str().find("warning: skipped"), std::string::npos);
    EXPECT_NE(elog.str().find("skipped 1"), std::string::npos);
    EXPECT_EQ(koopman::read_feature_csv(c.features_path()).size(), 5u);
}

TEST(Extract, MissingManifestIsADataError) {
    TempDir dir("extmissing");
    const auto c = small_config(dir.path());
    std::ostringstream log;
    EXPECT_THROW(extract(c, log), IoError);
    EXPECT_EQ(run_guarded([&] { return cmd_extract(c, log); }, log),
              static_cast<int>(ErrorKind::Data));
}

TEST_F(Corpus, ExtractIsBitExactAndThreadCountIndependent) {
    EXPECT_EQ(summary_.extracted, config_->synthetic.n_records);
    const auto csv = slurp(config_->features_path());
    const auto scaler = slurp(config_->scaler_path());
    TempDir other("rerun");
    auto c = *config_;
    c.base_dir = other.path();
    c.extract_threads = 1;
    fs::create_directories(c.data_path());
    fs::copy_file(config_->manifest_path(), c.manifest_path());
    std::ostringstream log;
    extract(c, log);
    EXPECT_EQ(slurp(c.features_path()), csv);
    EXPECT_EQ(slurp(c.scaler_path()), scaler);
}

TEST_F(Corpus, LinearRecordSitsBelowTheFifthPercentile) {
    const auto rows = koopman::read_feature_csv(config_->features_path());
    std::vector<double> means;
    for (const auto &r : rows) means.push_back(r.raw[0]);
    std::sort(means.begin(), means.end());
    const double p5 = means[means.size() / 20];

    // Three damped modes: an exact linear system in 6 delay coordinates.
    const double dt = config_->synthetic.dt;
    std::vector<double> x(2400);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        x[i] = std::exp(-3.0 * t) * std::sin(2.0 * 3.14159 * 9.0 * t) +
               0.5 * std::exp(-1.0 * t) * std::cos(2.0 * 3.14159 * 23.0 * t) +
               0.2 * std::sin(2.0 * 3.14159 * 41.0 * t + 0.3);
    }
    const auto f = record_features(x, dt, config_->hankel);
    EXPECT_LT(f[0], p5);
}

TEST_F(Corpus, AnomaliesCarryLargerResiduals) {
    const auto rows = koopman::read_feature_csv(config_->features_path());
    double sum[2] = {0, 0};
    std::size_t cnt[2] = {0, 0};
    for (const auto &r : rows) {
        sum[r.label] += r.raw[0];
        ++cnt[r.label];
    }
    ASSERT_GT(cnt[0], 0u);
    ASSERT_GT(cnt[1], 0u);
    EXPECT_GT(sum[0] / static_cast<double>(cnt[0]), sum[1] / static_cast<double>(cnt[1]));
}

// ----------------------------------------------------------------- train

TEST_F(Corpus, CheckpointHistoryAndFrozenEncoder) {
    const auto ck = model::pqnn_checkpoint_from_json(slurp(config_->checkpoint_path()));
    EXPECT_EQ(ck.history.size(), config_->train.epochs);
    const auto init = model::PqnnModel::init(config_->seeds.model, config_->model);
    EXPECT_EQ(ck.model.w_enc(), init.w_enc());
    EXPECT_EQ(ck.model.bias(), init.bias());
    EXPECT_NE(ck.model.parameters(), init.parameters());
    const auto j = json::parse(slurp(config_->checkpoint_path()));
    EXPECT_EQ(j.at("config").at("pipeline").at("config_hash"), config_hash(*config_));
}

TEST_F(Corpus, TrainingTwiceGivesIdenticalCheckpoints) {
    TempDir other("retrain");
    auto c = *config_;
    c.base_dir = other.path();
    c.baseline = Baseline::Mln;
    fs::create_directories(c.work_path());
    fs::copy_file(config_->features_path(), c.features_path());
    fs::copy_file(config_->scaler_path(), c.scaler_path());
    std::ostringstream log;
    ASSERT_EQ(cmd_train(c, log), 0);
    const auto first = slurp(c.checkpoint_path());
    const auto first_mln = slurp(c.mln_checkpoint_path());
    ASSERT_EQ(cmd_train(c, log), 0);
    EXPECT_EQ(fnv1a_hex(slurp(c.checkpoint_path())), fnv1a_hex(first));
    EXPECT_EQ(slurp(c.mln_checkpoint_path()), first_mln);
    EXPECT_EQ(model::mln_checkpoint_from_json(first_mln).model.trainable_count(), 418u);

    c.train.epochs = 0;
    ASSERT_EQ(cmd_train(c, log), 0);
    const auto ck = model::pqnn_checkpoint_from_json(slurp(c.checkpoint_path()));
    EXPECT_TRUE(ck.history.empty());
    EXPECT_EQ(ck.model.parameters(), model::PqnnModel::init(c.seeds.model, c.model).parameters());
}

TEST_F(Corpus, FeatureWidthMismatchIsAConfigError) {
    auto c = *config_;
    c.model.m = 9;
    c.model.k = 3;
    std::ostringstream log;
    EXPECT_THROW(cmd_train(c, log), ConfigError);
    EXPECT_EQ(run_guarded([&] { return cmd_train(c, log); }, log), 2);
}

// ------------------------------------------------------------------ eval

TEST_F(Corpus, EvalTrainVersusTestAndDeterminism) {
    const auto out_test = dir_->path() / "m_test.json";
    const auto out_train = dir_->path() / "m_train.json";
    const auto latents = dir_->path() / "latents.csv";
    std::ostringstream log;
    ASSERT_EQ(cmd_eval(*config_, {{}, {}, EvalSplit::Test, latents, out_test}, log), 0);
    ASSERT_EQ(cmd_eval(*config_, {{}, {}, EvalSplit::Train, {}, out_train}, log), 0);
    const auto test = json::parse(slurp(out_test));
    const auto train = json::parse(slurp(out_train));
    EXPECT_GE(train.at("accuracy").get<double>(), test.at("accuracy").get<double>() - 0.05);
    EXPECT_EQ(test.at("split"), "test");
    EXPECT_EQ(test.at("config_hash"), config_hash(*config_));
    EXPECT_EQ(test.at("confusion").size(), 2u);
    EXPECT_TRUE(test.contains("feature_silhouette"));

    const auto csv = slurp(latents);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "shot_id,channel_id,label,latent_0,latent_1");
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
              test.at("n").get<std::size_t>() + 1);

    const auto before = slurp(out_test);
    ASSERT_EQ(cmd_eval(*config_, {{}, {}, EvalSplit::Test, latents, out_test}, log), 0);
    EXPECT_EQ(slurp(out_test), before);
}

TEST_F(Corpus, SingleClassFileHasNullSilhouette) {
    auto rows = koopman::read_feature_csv(config_->features_path());
    std::erase_if(rows, [](const auto &r) { return r.label != 1; });
    const auto path = dir_->path() / "normal_only.csv";
    koopman::write_feature_csv(path, rows);
    const auto out = dir_->path() / "m_single.json";
    std::ostringstream log;
    ASSERT_EQ(cmd_eval(*config_, {{}, path, EvalSplit::Test, {}, out}, log), 0);
    const auto j = json::parse(slurp(out));
    EXPECT_TRUE(j.at("silhouette").is_null());
    EXPECT_TRUE(j.at("feature_silhouette").is_null());
    EXPECT_EQ(j.at("n").get<std::size_t>(), rows.size());
}

TEST_F(Corpus, ModelShapeMismatchIsRejected) {
    auto c = *config_;
    c.model.share_params = true;
    std::ostringstream log;
    EXPECT_THROW(cmd_eval(c, {}, log), ConfigError);
    auto j = json::parse(slurp(config_->checkpoint_path()));
    j["config"]["schema_version"] = 99;
    const auto bad = dir_->path() / "bad_ckpt.json";
    model::write_text_file(bad, j.dump());
    EXPECT_THROW(cmd_eval(*config_, {bad, {}, EvalSplit::Test, {}, {}}, log), ConfigError);
}

// ---------------------------------------------------------------- screen

TEST_F(Corpus, ScreenEmitsOneVerdictPerChannel) {
    auto spec = config_->synthetic_spec();
    spec.rng_seed = 99;
    const auto file = signal::generate_discharge(spec, 501, 5, 0);
    const auto path = dir_->path() / "shot.json";
    signal::write_discharge_file(path, file);
    const auto v = screen(*config_, {path, {}, {}});
    ASSERT_EQ(v.size(), 5u);
    for (const auto &c : v) {
        ASSERT_TRUE(c.p_normal.has_value()) << c.reason;
        EXPECT_GE(*c.p_normal, 0.0);
        EXPECT_LE(*c.p_normal, 1.0);
        EXPECT_EQ(c.verdict, *c.p_normal > 0.5 ? "normal" : "anomaly");
    }
    const auto j = json::parse(verdicts_to_json(v));
    EXPECT_EQ(j.size(), 5u);
    EXPECT_TRUE(j.at(0).contains("channel"));
    EXPECT_FALSE(j.at(0).contains("reason"));
}

TEST_F(Corpus, EmptyAndShortChannelsAreUnscreenable) {
    auto spec = config_->synthetic_spec();
    auto file = signal::generate_discharge(spec, 502, 3, 0);
    auto first = file.channels.begin();
    first->second.clear();
    const auto path = dir_->path() / "short.json";
    signal::write_discharge_file(path, file);
    const auto v = screen(*config_, {path, {}, {}});
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0].verdict, "unscreenable");
    EXPECT_FALSE(v[0].p_normal.has_value());
    EXPECT_EQ(v[0].reason, "empty channel");

    auto relaxed = *config_;
    relaxed.hankel.d_h = 5000; // longer than any channel
    const auto w = screen(relaxed, {path, {}, {}});
    for (std::size_t i = 1; i < w.size(); ++i) {
        EXPECT_EQ(w[i].verdict, "unscreenable");
        EXPECT_NE(w[i].reason.find("Hankel minimum"), std::string::npos) << w[i].reason;
    }
}

// ---------------------------------------------------------------- verify

TEST(Verify, CliExitCodes) {
    TempDir dir("verify");
    fs::copy_file(koopq::testing::fixture("verify_default.json"), dir.path() / "ok.json");
    fs::copy_file(koopq::testing::fixture("verify_perturbed.json"), dir.path() / "bad.json");
    EXPECT_EQ(run_cli("verify --config " + (dir.path() / "ok.json").string()), 0);
    const auto report = json::parse(slurp(dir.path() / "verify_work" / "verify.json"));
    EXPECT_TRUE(report.at("all_pass").get<bool>());
    EXPECT_EQ(report.at("checks").size(), 9u);

    EXPECT_EQ(run_cli("verify --config " + (dir.path() / "bad.json").string()), 5);
    const auto bad = json::parse(slurp(dir.path() / "verify_work" / "verify.json"));
    EXPECT_FALSE(bad.at("all_pass").get<bool>());
    std::vector<std::string> names, names_ok;
    for (const auto &c : bad.at("checks")) names.push_back(c.at("name"));
    for (const auto &c : report.at("checks")) names_ok.push_back(c.at("name"));
    EXPECT_EQ(names, names_ok);
}

TEST(Cli, ConfigErrorsExitTwo) {
    TempDir dir("cli");
    EXPECT_EQ(run_cli("verify --config " + (dir.path() / "missing.json").string()), 2);
    {
        std::ofstream f(dir.path() / "bad.json");
        f << R"({"verify":{"colour":1}})";
    }
    EXPECT_EQ(run_cli("verify --config " + (dir.path() / "bad.json").string()), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("train --config " + (dir.path() / "bad.json").string() + " --baseline cnn"), 2);
}

TEST(Cli, GenerateHonoursOverrides) {
    TempDir dir("cligen");
    {
        std::ofstream f(dir.path() / "c.json");
        f << R"({"synthetic":{"n_records":20,"t_min":2000,"t_max":2100}})";
    }
    const auto cfg = (dir.path() / "c.json").string();
    ASSERT_EQ(run_cli("generate --config " + cfg + " --seed 5"), 0);
    const auto a = slurp(dir.path() / "data" / "manifest.jsonl");
    ASSERT_EQ(run_cli("generate --config " + cfg + " --seed 6"), 0);
    EXPECT_NE(slurp(dir.path() / "data" / "manifest.jsonl"), a);
    ASSERT_EQ(run_cli("generate --config " + cfg + " --seed 5"), 0);
    EXPECT_EQ(slurp(dir.path() / "data" / "manifest.jsonl"), a);
    // No feature table yet: a data error.
    EXPECT_EQ(run_cli("train --config " + cfg + " --epochs 1"), 3);
}

} // namespace
