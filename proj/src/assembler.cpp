#include "mp2d/assembler.hpp"

#include "mp2d/errors.hpp"

namespace mp2d {

MultiPassage build_multipassage(const Walk& walk, Retriever& retriever, Rng& rng,
                                std::string walk_id) {
    MultiPassage mp;
    mp.walk_id = std::move(walk_id);
    mp.relation_sentences = walk.relation_sentences;
    mp.passages.reserve(walk.entities.size());
    for (const auto& entity : walk.entities) {
        Passage passage;
        try {
            passage = retriever.retrieve(entity);
        } catch (const NotFoundError&) {
            throw SkipWalkError(entity);
        }
        mp.passages.push_back(truncate(passage, rng));
    }
    return mp;
}

} // namespace mp2d
