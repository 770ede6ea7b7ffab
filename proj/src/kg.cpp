#include "mp2d/kg.hpp"

#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

namespace {

std::string require_field(const nlohmann::json& record, const char* name,
                          std::size_t line) {
    const auto it = record.find(name);
    if (it == record.end() || !it->is_string()) {
        throw ParseError(std::string("missing or non-string field '") + name + "'", line);
    }
    std::string value = trim(it->get<std::string>());
    if (value.empty()) {
        throw ParseError(std::string("empty field '") + name + "'", line);
    }
    return value;
}

} // namespace

const std::vector<std::size_t>& KnowledgeGraph::outgoing_indices(
    const std::string& entity) const {
    static const std::vector<std::size_t> kNone;
    const auto it = subject_index_.find(entity);
    return it == subject_index_.end() ? kNone : it->second;
}

bool KnowledgeGraph::contains(const Triplet& t) const {
    for (std::size_t i : outgoing_indices(t.subject)) {
        const Triplet& have = triplets_[i];
        if (have.relation_label == t.relation_label && have.object == t.object) {
            return true;
        }
    }
    return false;
}

void KnowledgeGraph::add(Triplet t) {
    subject_index_[t.subject].push_back(triplets_.size());
    triplets_.push_back(std::move(t));
}

LoadResult load_graph(std::istream& source) {
    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (trim(line).empty()) continue;

        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!record.is_object()) {
            throw ParseError("record is not a JSON object", line_no);
        }

        Triplet t;
        t.subject = require_field(record, "subject", line_no);
        t.relation_label = require_field(record, "relation_label", line_no);
        t.object = require_field(record, "object", line_no);
        t.relation_sentence = require_field(record, "relation_sentence", line_no);

        if (t.subject == t.object) {
            ++result.self_loops_dropped;
            continue;
        }
        if (result.graph.contains(t)) {
            ++result.duplicates_dropped;
            continue;
        }
        result.graph.add(std::move(t));
    }

    if (result.graph.empty()) {
        throw ValidationError("graph is empty after load");
    }
    return result;
}

std::vector<Triplet> outgoing(const KnowledgeGraph& graph, const std::string& entity) {
    std::vector<Triplet> out;
    for (std::size_t i : graph.outgoing_indices(entity)) {
        out.push_back(graph.triplets()[i]);
    }
    return out;
}

Walk sample_walk(const KnowledgeGraph& graph, Rng& rng, int max_topics) {
    if (graph.empty()) throw ValidationError("sample_walk: graph is empty");
    if (max_topics < 2) throw ValidationError("sample_walk: max_topics must be >= 2");

    const auto& triplets = graph.triplets();
    const Triplet& start = triplets[rng.uniform_below(triplets.size())];

    Walk walk;
    walk.entities = {start.subject, start.object};
    walk.relation_sentences = {start.relation_sentence};

    std::unordered_set<std::string> visited(walk.entities.begin(), walk.entities.end());

    while (static_cast<int>(walk.entities.size()) < max_topics) {
        std::vector<std::size_t> candidates;
        for (std::size_t i : graph.outgoing_indices(walk.entities.back())) {
            if (!visited.count(triplets[i].object)) candidates.push_back(i);
        }
        if (candidates.empty()) break;
        const Triplet& next = triplets[candidates[rng.uniform_below(candidates.size())]];
        walk.entities.push_back(next.object);
        walk.relation_sentences.push_back(next.relation_sentence);
        visited.insert(next.object);
    }
    return walk;
}

} // namespace mp2d
