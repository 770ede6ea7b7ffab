#include "mp2d/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "mp2d/errors.hpp"
#include "mp2d/eval.hpp"
#include "mp2d/pipeline.hpp"
#include "mp2d/qgen.hpp"
#include "mp2d/retrieval.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

GeneratorKind generator_kind_from_string(const std::string& name) {
    const std::string lower = to_lower(name);
    if (lower == "stub") return GeneratorKind::Stub;
    if (lower == "llm") return GeneratorKind::Llm;
    throw ConfigError("unknown generator '" + name + "' (expected STUB or LLM)");
}

void validate(const RunConfig& config) {
    if (config.graph_path.empty()) {
        throw ConfigError("--graph is required");
    }
    const bool local = !config.corpus_path.empty();
    const bool remote = !config.remote_base_url.empty();
    if (local == remote) {
        throw ConfigError("exactly one retrieval source must be configured: "
                          "--corpus or --remote-base-url");
    }
    if (config.n_dialogues < 1) throw ConfigError("--n must be >= 1");
    if (config.max_topics < 2) throw ConfigError("--max-topics must be >= 2");
    if (config.concurrency < 1) throw ConfigError("--concurrency must be >= 1");
    if (config.generator == GeneratorKind::Llm) {
        if (config.model_name.empty()) {
            throw ConfigError("generator LLM requires --model");
        }
        if (config.api_key.empty()) {
            throw ConfigError("generator LLM requires the MP2D_API_KEY environment variable");
        }
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file " + path + " line " + std::to_string(line_no) +
                              ": expected key=value");
        }
        entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return entries;
}

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const auto parsed = std::stoull(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has a non-integer value: " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const int parsed = std::stoi(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has a non-integer value: " + value);
    }
}

} // namespace

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "graph") config.graph_path = value;
    else if (key == "corpus") config.corpus_path = value;
    else if (key == "remote-base-url") config.remote_base_url = value;
    else if (key == "out") config.output_path = value;
    else if (key == "n") config.n_dialogues = parse_int(key, value);
    else if (key == "seed") config.seed = parse_u64(key, value);
    else if (key == "max-topics") config.max_topics = parse_int(key, value);
    else if (key == "generator") config.generator = generator_kind_from_string(value);
    else if (key == "model") config.model_name = value;
    else if (key == "concurrency") config.concurrency = parse_int(key, value);
    else throw ConfigError("unknown config key: " + key);
}

namespace {

std::unique_ptr<Retriever> make_retriever(const RunConfig& config) {
    if (!config.corpus_path.empty()) {
        return std::make_unique<LocalRetriever>(LocalRetriever::open(config.corpus_path));
    }
    WikiConfig wiki;
    wiki.base_url = config.remote_base_url;
    return std::make_unique<WikiRetriever>(std::move(wiki));
}

std::unique_ptr<QuestionGenerator> make_generator(const RunConfig& config) {
    if (config.generator == GeneratorKind::Stub) {
        return std::make_unique<StubGenerator>();
    }
    ChatConfig chat;
    chat.base_url = config.chat_base_url.empty() ? "https://api.openai.com/v1"
                                                 : config.chat_base_url;
    chat.model = config.model_name;
    chat.api_key = config.api_key;
    return std::make_unique<LlmGenerator>(ChatClient(std::move(chat)));
}

void write_json_output(const nlohmann::ordered_json& payload, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file: " + out_path);
    out << payload.dump(2) << '\n';
}

} // namespace

int cmd_generate(const RunConfig& config, std::ostream& log) {
    validate(config);

    std::ifstream graph_in(config.graph_path);
    if (!graph_in) throw ConfigError("cannot open graph file: " + config.graph_path);
    const LoadResult loaded = load_graph(graph_in);
    if (loaded.duplicates_dropped > 0 || loaded.self_loops_dropped > 0) {
        log << "graph load: dropped " << loaded.duplicates_dropped << " duplicate and "
            << loaded.self_loops_dropped << " self-loop triplet(s)\n";
    }
    log << "graph: " << loaded.graph.size() << " triplets\n";

    const auto retriever = make_retriever(config);
    const auto generator = make_generator(config);

    GenerateOptions options;
    options.seed = config.seed;
    options.n_dialogues = config.n_dialogues;
    options.max_topics = config.max_topics;
    options.concurrency = config.concurrency;
    options.meta.model = config.model_name;

    GenerateSummary summary;
    if (config.output_path.empty() || config.output_path == "-") {
        summary = generate_dialogues(loaded.graph, *retriever, *generator, options, std::cout);
    } else {
        std::ofstream out(config.output_path);
        if (!out) throw ConfigError("cannot open output file: " + config.output_path);
        summary = generate_dialogues(loaded.graph, *retriever, *generator, options, out);
    }

    log << "dialogues written: " << summary.written << "/" << summary.requested
        << "; walks sampled: " << summary.walks_sampled
        << ", skipped: " << summary.walks_skipped << '\n';
    if (summary.degraded()) {
        log << "degraded run: more than half of the sampled walks were skipped\n";
        for (const auto& entity : summary.skipped_entities) {
            log << "  skipped walk at entity: " << entity << '\n';
        }
        return 1;
    }
    return 0;
}

int cmd_eval_seg(const std::string& gold_path, const std::string& pred_path, bool macro,
                 const std::string& out_path, std::ostream& log) {
    const MetricsReport report = eval_segmentation_files(gold_path, pred_path, macro);
    write_json_output(report_to_json(report), out_path);
    log << "segmentation: " << report.instances << " dialogue(s) scored\n";
    return 0;
}

int cmd_eval_detect(const std::string& gold_path, const std::string& pred_path, bool macro,
                    const std::string& out_path, std::ostream& log) {
    const MetricsReport report = eval_detection_files(gold_path, pred_path, macro);
    write_json_output(report_to_json(report), out_path);
    log << "detection: " << report.instances << " dialogue(s) scored\n";
    return 0;
}

int cmd_stats(const std::string& dialogues_path, const std::string& out_path,
              std::ostream& log) {
    const DatasetStats stats = stats_from_file(dialogues_path);
    write_json_output(stats_to_json(stats), out_path);
    log << "stats: " << stats.dialogues << " dialogue(s)\n";
    return 0;
}

} // namespace mp2d
