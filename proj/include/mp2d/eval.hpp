#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mp2d/postproc.hpp"

namespace mp2d {

/// Gold and predicted per-turn segment labels for one dialogue.
/// Labels start at 0, are non-decreasing and step by at most 1.
struct SegmentationInstance {
    std::vector<int> gold_labels;
    std::vector<int> pred_labels;
};

/// Gold and predicted per-turn shift verdicts for one dialogue.
/// The first turn is never a gold shift.
struct DetectionInstance {
    std::vector<bool> gold;
    std::vector<bool> pred;
};

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double exact_match = 0.0;
    std::optional<double> turn_accuracy; // detection only
    std::size_t instances = 0;
};

/// Boundary-based segmentation scoring: a boundary is a turn t >= 1 with
/// label[t] > label[t-1]. P/R/F1 are micro-averaged over boundary sets
/// (macro averages per-instance scores instead); exact match is the
/// fraction of instances whose whole label sequence is correct.
MetricsReport seg_metrics(const std::vector<SegmentationInstance>& instances,
                          bool macro = false);

/// Per-turn shift detection scoring with shift=true as the positive class.
MetricsReport detect_metrics(const std::vector<DetectionInstance>& instances,
                             bool macro = false);

/// Sentence-level BLEU-4: geometric mean of clipped 1..4-gram precisions
/// times the brevity penalty (closest reference length, ties toward the
/// shorter reference). Tokens are lowercased whitespace splits with
/// punctuation detached into separate tokens. No smoothing: any zero
/// n-gram precision (including a <4-token candidate) scores 0.
double bleu4(const std::string& candidate, const std::vector<std::string>& references);

/// BLEU tokenization, exposed for the evaluation tooling.
std::vector<std::string> bleu_tokenize(const std::string& text);

struct DatasetStats {
    std::uint64_t dialogues = 0;
    std::uint64_t turns = 0;
    double avg_topics = 0.0;
    double avg_tokens_per_turn = 0.0;
    std::uint64_t unique_tokens = 0;
};

/// Corpus statistics over finalized dialogues: dialogue and turn counts,
/// mean distinct topics per dialogue, mean whitespace tokens per turn
/// (question + answer) and the number of unique lowercased tokens.
DatasetStats dataset_stats(const std::vector<Dialogue>& dialogues);

nlohmann::ordered_json stats_to_json(const DatasetStats& stats);
nlohmann::ordered_json report_to_json(const MetricsReport& report);

// File-level wrappers used by the CLI. Gold files use the dialogue JSONL
// schema; prediction files are JSONL rows {"id", "pred_labels": [...]}
// (segmentation) or {"id", "pred_shifts": [...]} (detection). Rows are
// joined by id; gold ids missing from the predictions raise a
// ValidationError listing them.
MetricsReport eval_segmentation_files(const std::string& gold_path,
                                      const std::string& pred_path, bool macro = false);
MetricsReport eval_detection_files(const std::string& gold_path,
                                   const std::string& pred_path, bool macro = false);
DatasetStats stats_from_file(const std::string& dialogues_path);

} // namespace mp2d
