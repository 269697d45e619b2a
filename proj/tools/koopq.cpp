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
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "koopq/errors.hpp"
#include "koopq/pipeline/commands.hpp"
#include "koopq/pipeline/config.hpp"

namespace {

using namespace koopq::pipeline;

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> epochs;
    std::optional<std::string> baseline;
};

void add_common(CLI::App *cmd, CommonArgs &args) {
    cmd->add_option("--config", args.config, "pipeline config (JSON)")->required();
    cmd->add_option("--seed", args.seed, "override every seed");
    cmd->add_option("--epochs", args.epochs, "override training epochs");
    cmd->add_option("--baseline", args.baseline, "baseline model: none | mln");
}

PipelineConfig load(const CommonArgs &args) {
    auto config = load_config(args.config);
    Overrides o;
    o.seed = args.seed;
    o.epochs = args.epochs;
    if (args.baseline) o.baseline = baseline_from_string(*args.baseline);
    apply(config, o);
    return config;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"koopq: Koopman residual features and parallel quantum classifiers"};
    app.require_subcommand(1);

    CommonArgs args;
    auto *generate = app.add_subcommand("generate", "write a synthetic dataset manifest");
    auto *extract = app.add_subcommand("extract", "compute residual features and the scaler");
    auto *train = app.add_subcommand("train", "train the PQNN (and optional baseline)");
    auto *eval = app.add_subcommand("eval", "evaluate a checkpoint");
    auto *screen = app.add_subcommand("screen", "classify every channel of a discharge file");
    auto *verify = app.add_subcommand("verify", "run the isomorphism verification suite");
    for (auto *cmd : {generate, extract, train, eval, screen, verify}) add_common(cmd, args);

    std::optional<std::string> checkpoint;
    std::optional<std::string> features;
    std::optional<std::string> latents;
    std::optional<std::string> output;
    std::string split = "test";
    eval->add_option("--checkpoint", checkpoint, "checkpoint path");
    eval->add_option("--features", features, "feature CSV to evaluate in full");
    eval->add_option("--split", split, "train | test | all")->check(
        CLI::IsMember({"train", "test", "all"}));
    eval->add_option("--latents", latents, "write latent vectors as CSV");
    eval->add_option("--output", output, "metrics JSON path");

    std::string input;
    screen->add_option("--input", input, "discharge JSON file")->required();
    screen->add_option("--checkpoint", checkpoint, "checkpoint path");
    screen->add_option("--output", output, "verdict JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(koopq::ErrorKind::Config);
    }

    return run_guarded(
        [&]() -> int {
            const auto config = load(args);
            if (generate->parsed()) return cmd_generate(config, std::cout);
            if (extract->parsed()) return cmd_extract(config, std::cerr);
            if (train->parsed()) return cmd_train(config, std::cout);
            if (eval->parsed()) {
                EvalOptions o;
                if (checkpoint) o.checkpoint = *checkpoint;
                if (features) o.features = *features;
                if (latents) o.latents = *latents;
                if (output) o.output = *output;
                o.split = eval_split_from_string(split);
                return cmd_eval(config, o, std::cout);
            }
            if (screen->parsed()) {
                ScreenOptions o;
                o.input = input;
                if (checkpoint) o.checkpoint = *checkpoint;
                if (output) o.output = *output;
                return cmd_screen(config, o, std::cout);
            }
            return cmd_verify(config, std::cout);
        },
        std::cerr);
}
