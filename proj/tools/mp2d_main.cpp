// mp2d command-line tool: generate topic-shift ConvQA dialogues from a
// knowledge graph and evaluate segmentation/detection predictions.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mp2d/cli.hpp"
#include "mp2d/errors.hpp"

namespace {

std::string env_or_empty(const char* name) {
    const char* value = std::getenv(name);
    return value ? std::string(value) : std::string{};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mp2d: topic-shift dialogue generation and evaluation"};
    app.require_subcommand(1);

    mp2d::RunConfig config;
    config.api_key = env_or_empty("MP2D_API_KEY");
    config.chat_base_url = env_or_empty("MP2D_BASE_URL");

    std::string config_path;
    std::string generator_name = "STUB";

    auto* generate = app.add_subcommand("generate", "Generate dialogues from a knowledge graph");
    auto* opt_graph = generate->add_option("--graph", config.graph_path, "Graph JSONL path");
    auto* opt_corpus = generate->add_option("--corpus", config.corpus_path,
                                            "Local corpus (JSONL file or directory of .txt)");
    auto* opt_remote = generate->add_option("--remote-base-url", config.remote_base_url,
                                            "Wiki-style API base URL");
    auto* opt_out = generate->add_option("--out", config.output_path,
                                         "Output JSONL path (default stdout)");
    auto* opt_n = generate->add_option("--n", config.n_dialogues, "Number of dialogues");
    auto* opt_seed = generate->add_option("--seed", config.seed, "Run seed (64-bit)");
    auto* opt_topics = generate->add_option("--max-topics", config.max_topics,
                                            "Maximum topics per dialogue");
    auto* opt_generator = generate->add_option("--generator", generator_name,
                                               "Question generator: STUB or LLM");
    auto* opt_model = generate->add_option("--model", config.model_name,
                                           "Chat model name (LLM generator)");
    auto* opt_conc = generate->add_option("--concurrency", config.concurrency,
                                          "Worker threads");
    generate->add_option("--config", config_path, "key=value config file");

    std::string gold_path, pred_path, out_path, dialogues_path;
    bool macro = false;

    auto* eval_seg = app.add_subcommand("eval-seg", "Score topic segmentation predictions");
    eval_seg->add_option("--gold", gold_path, "Gold dialogue JSONL")->required();
    eval_seg->add_option("--pred", pred_path, "Predictions JSONL with pred_labels")->required();
    eval_seg->add_flag("--macro", macro, "Macro-average across dialogues");
    eval_seg->add_option("--out", out_path, "Report path (default stdout)");

    auto* eval_detect = app.add_subcommand("eval-detect", "Score topic shift detection predictions");
    eval_detect->add_option("--gold", gold_path, "Gold dialogue JSONL")->required();
    eval_detect->add_option("--pred", pred_path, "Predictions JSONL with pred_shifts")->required();
    eval_detect->add_flag("--macro", macro, "Macro-average across dialogues");
    eval_detect->add_option("--out", out_path, "Report path (default stdout)");

    auto* stats = app.add_subcommand("stats", "Dataset statistics for a dialogue JSONL");
    stats->add_option("--in", dialogues_path, "Dialogue JSONL path")->required();
    stats->add_option("--out", out_path, "Report path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            config.generator = mp2d::generator_kind_from_string(generator_name);
            if (!config_path.empty()) {
                // Precedence: CLI flags beat file entries beat defaults.
                for (const auto& [key, value] : mp2d::read_config_file(config_path)) {
                    const bool set_on_cli =
                        (key == "graph" && opt_graph->count()) ||
                        (key == "corpus" && opt_corpus->count()) ||
                        (key == "remote-base-url" && opt_remote->count()) ||
                        (key == "out" && opt_out->count()) ||
                        (key == "n" && opt_n->count()) ||
                        (key == "seed" && opt_seed->count()) ||
                        (key == "max-topics" && opt_topics->count()) ||
                        (key == "generator" && opt_generator->count()) ||
                        (key == "model" && opt_model->count()) ||
                        (key == "concurrency" && opt_conc->count());
                    if (!set_on_cli) mp2d::apply_config_entry(config, key, value);
                }
            }
            return mp2d::cmd_generate(config, std::cerr);
        }
        if (eval_seg->parsed()) {
            return mp2d::cmd_eval_seg(gold_path, pred_path, macro, out_path, std::cerr);
        }
        if (eval_detect->parsed()) {
            return mp2d::cmd_eval_detect(gold_path, pred_path, macro, out_path, std::cerr);
        }
        if (stats->parsed()) {
            return mp2d::cmd_stats(dialogues_path, out_path, std::cerr);
        }
    } catch (const mp2d::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
