#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mp2d/qgen.hpp"

namespace mp2d {

struct GeneratorMeta {
    std::string generator; // "stub" or "llm"
    std::string model;     // empty for the stub
    std::uint64_t seed = 0;
};

/// A finalized dialogue ready for serialization. segment_labels[t] is the
/// 0-based topic segment of turn t.
struct Dialogue {
    std::string id;
    std::vector<QATurn> turns;
    std::vector<std::string> entities;
    std::vector<int> segment_labels;
    GeneratorMeta meta;
};

/// Removes one leading "A:" or "B:" plus following spaces, then trims
/// outer whitespace. Applied once, never recursively.
std::string strip_speaker_prefix(const std::string& question);

/// Strips speaker prefixes from every question, derives segment labels
/// from topic indices, assigns a content-hash id and attaches metadata.
Dialogue finalize_dialogue(const RawDialogue& raw, const GeneratorMeta& meta);

const char* to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& s);

nlohmann::ordered_json dialogue_to_json(const Dialogue& dialogue);
Dialogue dialogue_from_json(const nlohmann::json& j);

/// One dialogue per line, fields in schema order.
void write_dialogue_line(std::ostream& out, const Dialogue& dialogue);

/// Reads a dialogue JSONL file; '#' lines and blank lines are skipped.
/// Throws ParseError with the line number on malformed rows.
std::vector<Dialogue> load_dialogue_file(const std::string& path);

} // namespace mp2d
