#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mp2d {

enum class GeneratorKind { Stub, Llm };

GeneratorKind generator_kind_from_string(const std::string& name);

/// Everything a generation run needs. Validated before use: exactly one
/// retrieval source, n >= 1, max_topics >= 2, concurrency >= 1, and the
/// LLM generator requires a model name plus MP2D_API_KEY.
struct RunConfig {
    std::string graph_path;
    std::string corpus_path;
    std::string remote_base_url; // wiki-style API base
    std::string output_path;     // empty or "-" means stdout
    int n_dialogues = 1;
    std::uint64_t seed = 0;
    int max_topics = 4;
    GeneratorKind generator = GeneratorKind::Stub;
    std::string model_name;
    int concurrency = 1;
    std::string api_key;       // env MP2D_API_KEY
    std::string chat_base_url; // env MP2D_BASE_URL
};

void validate(const RunConfig& config); // throws ConfigError

/// key=value lines; blank lines and '#' comments are skipped. Keys use the
/// long flag names (graph, corpus, remote-base-url, out, n, seed,
/// max-topics, generator, model, concurrency).
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Applies one config-file entry. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

// Subcommand bodies. Human-readable logging goes to `log` (stderr in the
// binary); machine output goes to the configured file or stdout. Returns
// the process exit code: 0 ok, 1 degraded completion, 2 bad input/config.
int cmd_generate(const RunConfig& config, std::ostream& log);
int cmd_eval_seg(const std::string& gold_path, const std::string& pred_path, bool macro,
                 const std::string& out_path, std::ostream& log);
int cmd_eval_detect(const std::string& gold_path, const std::string& pred_path, bool macro,
                    const std::string& out_path, std::ostream& log);
int cmd_stats(const std::string& dialogues_path, const std::string& out_path,
              std::ostream& log);

} // namespace mp2d
