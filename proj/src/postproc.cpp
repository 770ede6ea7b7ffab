#include "mp2d/postproc.hpp"

#include <fstream>
#include <ostream>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

std::string strip_speaker_prefix(const std::string& question) {
    std::string out = question;
    if (out.size() >= 2 && (out[0] == 'A' || out[0] == 'B') && out[1] == ':') {
        std::size_t i = 2;
        while (i < out.size() && out[i] == ' ') ++i;
        out = out.substr(i);
    }
    return trim(out);
}

namespace {

std::string content_fingerprint(const Dialogue& d) {
    std::string canon;
    for (const auto& entity : d.entities) canon += entity + '\x1E';
    for (const auto& turn : d.turns) {
        canon += turn.question + '\x1F' + turn.answer + '\x1F' +
                 std::to_string(turn.topic_index) + '\x1F' +
                 (turn.is_topic_shift ? '1' : '0') + '\x1F' +
                 to_string(turn.source_kind) + '\x1E';
    }
    canon += d.meta.generator + '\x1F' + d.meta.model + '\x1F' +
             std::to_string(d.meta.seed);
    return to_hex16(fnv1a64(canon));
}

} // namespace

Dialogue finalize_dialogue(const RawDialogue& raw, const GeneratorMeta& meta) {
    Dialogue dialogue;
    dialogue.turns = raw.turns;
    dialogue.entities = raw.entities;
    dialogue.meta = meta;
    dialogue.segment_labels.reserve(raw.turns.size());
    for (auto& turn : dialogue.turns) {
        turn.question = strip_speaker_prefix(turn.question);
        dialogue.segment_labels.push_back(turn.topic_index - 1);
    }
    dialogue.id = content_fingerprint(dialogue);
    return dialogue;
}

const char* to_string(SourceKind kind) {
    return kind == SourceKind::RelationSentence ? "relation_sentence" : "passage_sentence";
}

SourceKind source_kind_from_string(const std::string& s) {
    if (s == "relation_sentence") return SourceKind::RelationSentence;
    if (s == "passage_sentence") return SourceKind::PassageSentence;
    throw ValidationError("unknown source_kind: " + s);
}

nlohmann::ordered_json dialogue_to_json(const Dialogue& dialogue) {
    nlohmann::ordered_json j;
    j["id"] = dialogue.id;
    j["entities"] = dialogue.entities;
    auto turns = nlohmann::ordered_json::array();
    for (const auto& turn : dialogue.turns) {
        nlohmann::ordered_json t;
        t["question"] = turn.question;
        t["answer"] = turn.answer;
        t["topic_index"] = turn.topic_index;
        t["is_topic_shift"] = turn.is_topic_shift;
        t["source_kind"] = to_string(turn.source_kind);
        turns.push_back(std::move(t));
    }
    j["turns"] = std::move(turns);
    j["segment_labels"] = dialogue.segment_labels;
    j["meta"] = {{"generator", dialogue.meta.generator},
                 {"model", dialogue.meta.model},
                 {"seed", dialogue.meta.seed}};
    return j;
}

Dialogue dialogue_from_json(const nlohmann::json& j) {
    Dialogue dialogue;
    dialogue.id = j.at("id").get<std::string>();
    dialogue.entities = j.at("entities").get<std::vector<std::string>>();
    for (const auto& t : j.at("turns")) {
        QATurn turn;
        turn.question = t.at("question").get<std::string>();
        turn.answer = t.at("answer").get<std::string>();
        turn.topic_index = t.at("topic_index").get<int>();
        turn.is_topic_shift = t.at("is_topic_shift").get<bool>();
        turn.source_kind = source_kind_from_string(t.at("source_kind").get<std::string>());
        dialogue.turns.push_back(std::move(turn));
    }
    dialogue.segment_labels = j.at("segment_labels").get<std::vector<int>>();
    if (j.contains("meta")) {
        const auto& meta = j["meta"];
        dialogue.meta.generator = meta.value("generator", std::string{});
        dialogue.meta.model = meta.value("model", std::string{});
        dialogue.meta.seed = meta.value("seed", std::uint64_t{0});
    }
    if (dialogue.segment_labels.size() != dialogue.turns.size()) {
        throw ValidationError("dialogue " + dialogue.id +
                              ": segment_labels length differs from turn count");
    }
    return dialogue;
}

void write_dialogue_line(std::ostream& out, const Dialogue& dialogue) {
    out << dialogue_to_json(dialogue).dump() << '\n';
}

std::vector<Dialogue> load_dialogue_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open dialogue file: " + path);
    std::vector<Dialogue> dialogues;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (trim(line).empty()) continue;
        try {
            dialogues.push_back(dialogue_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid dialogue record: ") + e.what(), line_no);
        }
    }
    return dialogues;
}

} // namespace mp2d
