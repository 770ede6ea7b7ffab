#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "mp2d/rng.hpp"

namespace mp2d {

/// One knowledge-graph edge. The relation sentence is a full-sentence
/// narrative of the relation, richer than the short label.
struct Triplet {
    std::string subject;
    std::string relation_label;
    std::string object;
    std::string relation_sentence;
};

/// Entity-centric graph, immutable after load and safe for concurrent reads.
class KnowledgeGraph {
public:
    const std::vector<Triplet>& triplets() const { return triplets_; }
    bool empty() const { return triplets_.empty(); }
    std::size_t size() const { return triplets_.size(); }

    /// Indices of triplets whose subject equals `entity`, in load order.
    const std::vector<std::size_t>& outgoing_indices(const std::string& entity) const;

    /// True when (subject, relation_label, object) is already present.
    bool contains(const Triplet& t) const;

    /// Appends a triplet, indexing it under its subject. Caller enforces
    /// the no-duplicate and no-self-loop invariants.
    void add(Triplet t);

private:
    std::vector<Triplet> triplets_;
    std::unordered_map<std::string, std::vector<std::size_t>> subject_index_;
};

struct LoadResult {
    KnowledgeGraph graph;
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

/// Reads line-delimited JSON records with fields subject, relation_label,
/// object, relation_sentence. Lines beginning with '#' and blank lines are
/// skipped. Duplicates and self-loops are dropped and counted. Throws
/// ParseError (with line number) on malformed records and ValidationError
/// when the resulting graph is empty.
LoadResult load_graph(std::istream& source);

/// All triplets with the given subject, in load order.
std::vector<Triplet> outgoing(const KnowledgeGraph& graph, const std::string& entity);

/// Alternating entity / relation-sentence path sampled from the graph.
/// relation_sentences[i] narrates the edge entities[i] -> entities[i+1].
struct Walk {
    std::vector<std::string> entities;
    std::vector<std::string> relation_sentences;
};

/// Samples a finite walk: start triplet uniform over all triplets, then
/// repeatedly a uniform choice among outgoing triplets of the last entity
/// whose object is not yet in the walk. Stops when no such triplet exists
/// or the entity count reaches max_topics. Entities never repeat.
Walk sample_walk(const KnowledgeGraph& graph, Rng& rng, int max_topics);

} // namespace mp2d
