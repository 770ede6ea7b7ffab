#include "mp2d/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "mp2d/assembler.hpp"
#include "mp2d/errors.hpp"
#include "mp2d/rng.hpp"

namespace mp2d {

GenerateSummary generate_dialogues(const KnowledgeGraph& graph, Retriever& retriever,
                                   QuestionGenerator& generator,
                                   const GenerateOptions& options, std::ostream& out) {
    if (options.n_dialogues < 1) {
        throw ConfigError("n_dialogues must be >= 1");
    }
    if (options.max_topics < 2) {
        throw ConfigError("max_topics must be >= 2");
    }
    if (options.concurrency < 1) {
        throw ConfigError("concurrency must be >= 1");
    }

    const int n = options.n_dialogues;
    std::vector<std::optional<std::string>> lines(static_cast<std::size_t>(n));

    GenerateSummary summary;
    summary.requested = n;
    std::mutex summary_mutex;

    std::atomic<int> next_ordinal{0};
    std::exception_ptr first_failure;
    std::mutex failure_mutex;

    auto work = [&](int ordinal) {
        const std::uint64_t dialogue_seed =
            derive_seed(options.seed, static_cast<std::uint64_t>(ordinal));
        Rng rng(dialogue_seed);
        std::uint64_t sampled = 0;
        std::vector<std::string> skipped;

        for (int attempt = 0; attempt < options.max_walk_attempts; ++attempt) {
            const Walk walk = sample_walk(graph, rng, options.max_topics);
            ++sampled;
            MultiPassage mp;
            try {
                mp = build_multipassage(walk, retriever, rng,
                                        std::to_string(ordinal) + ":" +
                                            std::to_string(attempt));
            } catch (const SkipWalkError& e) {
                skipped.push_back(e.entity());
                continue;
            }
            const RawDialogue raw = dialogue_from_multipassage(mp, generator);
            GeneratorMeta meta = options.meta;
            meta.generator = generator.name();
            meta.seed = dialogue_seed;
            const Dialogue dialogue = finalize_dialogue(raw, meta);
            std::ostringstream line;
            write_dialogue_line(line, dialogue);
            lines[static_cast<std::size_t>(ordinal)] = line.str();
            break;
        }

        std::lock_guard<std::mutex> lock(summary_mutex);
        summary.walks_sampled += sampled;
        summary.walks_skipped += skipped.size();
        summary.skipped_entities.insert(summary.skipped_entities.end(), skipped.begin(),
                                        skipped.end());
    };

    auto worker = [&] {
        for (;;) {
            const int ordinal = next_ordinal.fetch_add(1);
            if (ordinal >= n) return;
            try {
                work(ordinal);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!first_failure) first_failure = std::current_exception();
                return;
            }
        }
    };

    const int workers = std::min(options.concurrency, n);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_failure) std::rethrow_exception(first_failure);

    for (const auto& line : lines) {
        if (line) {
            out << *line;
            ++summary.written;
        }
    }
    return summary;
}

} // namespace mp2d
