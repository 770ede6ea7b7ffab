#include "mp2d/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

namespace {

double safe_ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Zero-prediction convention: precision (recall) is 0, not undefined,
// when nothing is predicted (gold is empty); keeps averages total.
double f1_of(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

void validate_labels(const std::vector<int>& labels, const char* which) {
    if (labels.empty()) {
        throw ValidationError(std::string(which) + " labels are empty");
    }
    if (labels.front() != 0) {
        throw ValidationError(std::string(which) + " labels must start at 0");
    }
    for (std::size_t t = 1; t < labels.size(); ++t) {
        const int step = labels[t] - labels[t - 1];
        if (step < 0 || step > 1) {
            throw ValidationError(std::string(which) +
                                  " labels must be non-decreasing with steps of at most 1");
        }
    }
}

std::set<std::size_t> boundaries_of(const std::vector<int>& labels) {
    std::set<std::size_t> boundaries;
    for (std::size_t t = 1; t < labels.size(); ++t) {
        if (labels[t] > labels[t - 1]) boundaries.insert(t);
    }
    return boundaries;
}

struct PrCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0;
};

PrCounts boundary_counts(const SegmentationInstance& instance) {
    const auto gold = boundaries_of(instance.gold_labels);
    const auto pred = boundaries_of(instance.pred_labels);
    PrCounts counts;
    for (std::size_t b : pred) {
        if (gold.count(b)) ++counts.tp;
        else ++counts.fp;
    }
    for (std::size_t b : gold) {
        if (!pred.count(b)) ++counts.fn;
    }
    return counts;
}

} // namespace

MetricsReport seg_metrics(const std::vector<SegmentationInstance>& instances, bool macro) {
    if (instances.empty()) throw ValidationError("seg_metrics: no instances");

    MetricsReport report;
    report.instances = instances.size();
    PrCounts total;
    double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
    std::size_t exact = 0;

    for (const auto& instance : instances) {
        if (instance.gold_labels.size() != instance.pred_labels.size()) {
            throw ValidationError("segmentation instance has mismatched label lengths");
        }
        validate_labels(instance.gold_labels, "gold");
        validate_labels(instance.pred_labels, "pred");

        const PrCounts counts = boundary_counts(instance);
        total.tp += counts.tp;
        total.fp += counts.fp;
        total.fn += counts.fn;
        const double p = safe_ratio(counts.tp, counts.tp + counts.fp);
        const double r = safe_ratio(counts.tp, counts.tp + counts.fn);
        p_sum += p;
        r_sum += r;
        f_sum += f1_of(p, r);
        if (instance.pred_labels == instance.gold_labels) ++exact;
    }

    if (macro) {
        const auto n = static_cast<double>(instances.size());
        report.precision = p_sum / n;
        report.recall = r_sum / n;
        report.f1 = f_sum / n;
    } else {
        report.precision = safe_ratio(total.tp, total.tp + total.fp);
        report.recall = safe_ratio(total.tp, total.tp + total.fn);
        report.f1 = f1_of(report.precision, report.recall);
    }
    report.exact_match = static_cast<double>(exact) / static_cast<double>(instances.size());
    return report;
}

MetricsReport detect_metrics(const std::vector<DetectionInstance>& instances, bool macro) {
    if (instances.empty()) throw ValidationError("detect_metrics: no instances");

    MetricsReport report;
    report.instances = instances.size();
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0, acc_sum = 0.0;
    std::size_t exact = 0;

    for (const auto& instance : instances) {
        if (instance.gold.size() != instance.pred.size()) {
            throw ValidationError("detection instance has mismatched lengths");
        }
        if (instance.gold.empty()) {
            throw ValidationError("detection instance is empty");
        }
        if (instance.gold.front()) {
            throw ValidationError("first turn cannot be a gold topic shift");
        }
        std::uint64_t itp = 0, ifp = 0, ifn = 0, itn = 0;
        for (std::size_t t = 0; t < instance.gold.size(); ++t) {
            const bool g = instance.gold[t];
            const bool p = instance.pred[t];
            if (g && p) ++itp;
            else if (!g && p) ++ifp;
            else if (g && !p) ++ifn;
            else ++itn;
        }
        tp += itp;
        fp += ifp;
        fn += ifn;
        tn += itn;
        const double p = safe_ratio(itp, itp + ifp);
        const double r = safe_ratio(itp, itp + ifn);
        p_sum += p;
        r_sum += r;
        f_sum += f1_of(p, r);
        acc_sum += safe_ratio(itp + itn, instance.gold.size());
        if (instance.gold == instance.pred) ++exact;
    }

    if (macro) {
        const auto n = static_cast<double>(instances.size());
        report.precision = p_sum / n;
        report.recall = r_sum / n;
        report.f1 = f_sum / n;
        report.turn_accuracy = acc_sum / n;
    } else {
        report.precision = safe_ratio(tp, tp + fp);
        report.recall = safe_ratio(tp, tp + fn);
        report.f1 = f1_of(report.precision, report.recall);
        report.turn_accuracy = safe_ratio(tp + tn, tp + fp + fn + tn);
    }
    report.exact_match = static_cast<double>(exact) / static_cast<double>(instances.size());
    return report;
}

// ---- BLEU-4 ----

std::vector<std::string> bleu_tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        const auto byte = static_cast<unsigned char>(c);
        if (std::isspace(byte)) {
            flush();
        } else if (std::ispunct(byte)) {
            flush();
            tokens.emplace_back(1, c);
        } else {
            current.push_back(static_cast<char>(std::tolower(byte)));
        }
    }
    flush();
    return tokens;
}

namespace {

using NgramCounts = std::unordered_map<std::string, std::uint64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
    NgramCounts counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (std::size_t j = 0; j < n; ++j) {
            if (j) key += '\x1F';
            key += tokens[i + j];
        }
        ++counts[key];
    }
    return counts;
}

} // namespace

double bleu4(const std::string& candidate, const std::vector<std::string>& references) {
    const auto cand = bleu_tokenize(candidate);
    if (cand.empty() || references.empty()) return 0.0;

    std::vector<std::vector<std::string>> refs;
    refs.reserve(references.size());
    for (const auto& r : references) refs.push_back(bleu_tokenize(r));

    double log_precision_sum = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto cand_counts = count_ngrams(cand, n);
        std::uint64_t total = 0, clipped = 0;
        for (const auto& [ngram, count] : cand_counts) total += count;
        if (total == 0) return 0.0; // candidate shorter than n tokens

        NgramCounts max_ref_counts;
        for (const auto& ref : refs) {
            for (const auto& [ngram, count] : count_ngrams(ref, n)) {
                auto& best = max_ref_counts[ngram];
                best = std::max(best, count);
            }
        }
        for (const auto& [ngram, count] : cand_counts) {
            const auto it = max_ref_counts.find(ngram);
            if (it != max_ref_counts.end()) {
                clipped += std::min<std::uint64_t>(count, it->second);
            }
        }
        if (clipped == 0) return 0.0; // no smoothing
        log_precision_sum += std::log(static_cast<double>(clipped) / static_cast<double>(total));
    }

    // Closest reference length; ties go to the shorter reference.
    const auto c = cand.size();
    std::size_t r = refs.front().size();
    for (const auto& ref : refs) {
        const auto diff = [&](std::size_t len) {
            return len > c ? len - c : c - len;
        };
        if (diff(ref.size()) < diff(r) || (diff(ref.size()) == diff(r) && ref.size() < r)) {
            r = ref.size();
        }
    }
    const double brevity =
        c < r ? std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c)) : 1.0;
    return brevity * std::exp(log_precision_sum / 4.0);
}

// ---- dataset statistics ----

DatasetStats dataset_stats(const std::vector<Dialogue>& dialogues) {
    if (dialogues.empty()) throw ValidationError("dataset_stats: no dialogues");

    DatasetStats stats;
    stats.dialogues = dialogues.size();
    std::uint64_t topic_sum = 0;
    std::uint64_t token_sum = 0;
    std::unordered_set<std::string> vocabulary;

    for (const auto& dialogue : dialogues) {
        stats.turns += dialogue.turns.size();
        const std::set<int> distinct(dialogue.segment_labels.begin(),
                                     dialogue.segment_labels.end());
        topic_sum += distinct.size();
        for (const auto& turn : dialogue.turns) {
            for (const auto& token : whitespace_tokens(turn.question)) {
                ++token_sum;
                vocabulary.insert(to_lower(token));
            }
            for (const auto& token : whitespace_tokens(turn.answer)) {
                ++token_sum;
                vocabulary.insert(to_lower(token));
            }
        }
    }
    stats.avg_topics = static_cast<double>(topic_sum) / static_cast<double>(stats.dialogues);
    stats.avg_tokens_per_turn =
        stats.turns == 0 ? 0.0
                         : static_cast<double>(token_sum) / static_cast<double>(stats.turns);
    stats.unique_tokens = vocabulary.size();
    return stats;
}

nlohmann::ordered_json stats_to_json(const DatasetStats& stats) {
    return {{"dialogues", stats.dialogues},
            {"turns", stats.turns},
            {"avg_topics", stats.avg_topics},
            {"avg_tokens_per_turn", stats.avg_tokens_per_turn},
            {"unique_tokens", stats.unique_tokens}};
}

nlohmann::ordered_json report_to_json(const MetricsReport& report) {
    nlohmann::ordered_json j{{"precision", report.precision},
                             {"recall", report.recall},
                             {"f1", report.f1},
                             {"exact_match", report.exact_match}};
    if (report.turn_accuracy) j["turn_accuracy"] = *report.turn_accuracy;
    j["instances"] = report.instances;
    return j;
}

// ---- file-level wrappers ----

namespace {

nlohmann::json parse_pred_line(const std::string& line, std::size_t line_no) {
    try {
        return nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid prediction record: ") + e.what(), line_no);
    }
}

std::unordered_map<std::string, nlohmann::json> load_pred_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open prediction file: " + path);
    std::unordered_map<std::string, nlohmann::json> by_id;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (trim(line).empty()) continue;
        auto record = parse_pred_line(line, line_no);
        if (!record.is_object() || !record.contains("id") || !record["id"].is_string()) {
            throw ParseError("prediction record needs a string 'id' field", line_no);
        }
        const std::string id = record["id"].get<std::string>();
        by_id[id] = std::move(record);
    }
    if (by_id.empty()) throw ValidationError("prediction file is empty: " + path);
    return by_id;
}

[[noreturn]] void throw_missing_ids(const std::vector<std::string>& missing) {
    std::string message = "prediction file is missing ids:";
    for (const auto& id : missing) message += ' ' + id;
    throw ValidationError(message);
}

std::vector<bool> bools_from_json(const nlohmann::json& array, const std::string& id) {
    // Accept JSON booleans as well as 0/1 numerals.
    std::vector<bool> out;
    for (const auto& value : array) {
        if (value.is_boolean()) {
            out.push_back(value.get<bool>());
        } else if (value.is_number_integer()) {
            out.push_back(value.get<int>() != 0);
        } else {
            throw ValidationError("pred_shifts for " + id + " must hold booleans or 0/1");
        }
    }
    return out;
}

} // namespace

MetricsReport eval_segmentation_files(const std::string& gold_path,
                                      const std::string& pred_path, bool macro) {
    const auto gold = load_dialogue_file(gold_path);
    if (gold.empty()) throw ValidationError("gold file is empty: " + gold_path);
    auto preds = load_pred_file(pred_path);

    std::vector<SegmentationInstance> instances;
    std::vector<std::string> missing;
    for (const auto& dialogue : gold) {
        const auto it = preds.find(dialogue.id);
        if (it == preds.end()) {
            missing.push_back(dialogue.id);
            continue;
        }
        if (!it->second.contains("pred_labels")) {
            throw ValidationError("prediction for " + dialogue.id + " lacks pred_labels");
        }
        instances.push_back(SegmentationInstance{
            dialogue.segment_labels,
            it->second["pred_labels"].get<std::vector<int>>()});
    }
    if (!missing.empty()) throw_missing_ids(missing);
    return seg_metrics(instances, macro);
}

MetricsReport eval_detection_files(const std::string& gold_path,
                                   const std::string& pred_path, bool macro) {
    const auto gold = load_dialogue_file(gold_path);
    if (gold.empty()) throw ValidationError("gold file is empty: " + gold_path);
    auto preds = load_pred_file(pred_path);

    std::vector<DetectionInstance> instances;
    std::vector<std::string> missing;
    for (const auto& dialogue : gold) {
        const auto it = preds.find(dialogue.id);
        if (it == preds.end()) {
            missing.push_back(dialogue.id);
            continue;
        }
        if (!it->second.contains("pred_shifts")) {
            throw ValidationError("prediction for " + dialogue.id + " lacks pred_shifts");
        }
        DetectionInstance instance;
        for (const auto& turn : dialogue.turns) instance.gold.push_back(turn.is_topic_shift);
        instance.pred = bools_from_json(it->second["pred_shifts"], dialogue.id);
        instances.push_back(std::move(instance));
    }
    if (!missing.empty()) throw_missing_ids(missing);
    return detect_metrics(instances, macro);
}

DatasetStats stats_from_file(const std::string& dialogues_path) {
    const auto dialogues = load_dialogue_file(dialogues_path);
    return dataset_stats(dialogues);
}

} // namespace mp2d
