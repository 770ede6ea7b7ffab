#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mp2d/kg.hpp"
#include "mp2d/postproc.hpp"
#include "mp2d/qgen.hpp"
#include "mp2d/retrieval.hpp"

namespace mp2d {

struct GenerateOptions {
    std::uint64_t seed = 0;
    int n_dialogues = 1;
    int max_topics = 4;
    int concurrency = 1;
    // Walks whose entities lack passages are skipped and resampled from the
    // same per-dialogue stream; after this many attempts the slot is dropped.
    int max_walk_attempts = 32;
    // Attached to every dialogue; generator kind and per-dialogue seed are
    // filled in by the pipeline, the model name comes from the caller.
    GeneratorMeta meta;
};

struct GenerateSummary {
    int requested = 0;
    int written = 0;
    std::uint64_t walks_sampled = 0;
    std::uint64_t walks_skipped = 0;
    std::vector<std::string> skipped_entities; // one entry per skipped walk

    bool degraded() const { return walks_skipped * 2 > walks_sampled; }
};

/// Generates n dialogues and writes them as JSONL in ordinal order. Each
/// dialogue's random stream is seeded with derive_seed(seed, ordinal), so
/// the output bytes are identical for any concurrency level.
GenerateSummary generate_dialogues(const KnowledgeGraph& graph, Retriever& retriever,
                                   QuestionGenerator& generator,
                                   const GenerateOptions& options, std::ostream& out);

} // namespace mp2d
