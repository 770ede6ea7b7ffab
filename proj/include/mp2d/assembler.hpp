#pragma once

#include <string>
#include <vector>

#include "mp2d/kg.hpp"
#include "mp2d/retrieval.hpp"
#include "mp2d/rng.hpp"

namespace mp2d {

/// Truncated passages interleaved with the walk's relation sentences:
/// passages[i] covers walk entity i, relation_sentences[i] bridges
/// passages[i] and passages[i+1].
struct MultiPassage {
    std::vector<TruncatedPassage> passages;
    std::vector<std::string> relation_sentences;
    std::string walk_id;
};

/// Retrieves and truncates a passage per walk entity, in walk order, and
/// copies the relation sentences. Throws SkipWalkError naming the first
/// entity whose passage is missing; TransportError propagates.
MultiPassage build_multipassage(const Walk& walk, Retriever& retriever, Rng& rng,
                                std::string walk_id = {});

} // namespace mp2d
