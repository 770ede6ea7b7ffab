#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "mp2d/http.hpp"
#include "mp2d/rng.hpp"

namespace mp2d {

/// A retrieved passage: the queried entity plus its sentences in
/// source-document order.
struct Passage {
    std::string entity;
    std::vector<std::string> sentences;
};

/// A prefix of a Passage, cut to k = min(m, random(3,6)) sentences.
struct TruncatedPassage {
    std::string entity;
    std::vector<std::string> sentences;
};

/// Splits raw passage text into sentences. Breaks after '.', '!' or '?'
/// followed by whitespace and an uppercase letter, or at end of text;
/// never inside a known abbreviation (Mr., Mrs., Dr., St., e.g., i.e.,
/// etc., vs., Inc., Jr., Sr., U.S.). Terminal punctuation stays attached.
std::vector<std::string> segment_sentences(const std::string& text);

using SentenceSegmenter = std::function<std::vector<std::string>(const std::string&)>;

/// Keeps the first k = min(m, draw) sentences where draw is uniform over
/// {3,4,5,6}. Always consumes exactly one draw.
TruncatedPassage truncate(const Passage& passage, Rng& rng);

/// Maps an entity name to its passage. Implementations throw NotFoundError
/// when the entity has no passage and TransportError on remote failure.
class Retriever {
public:
    virtual ~Retriever() = default;
    virtual Passage retrieve(const std::string& query) = 0;
};

/// Corpus-backed retriever. Accepts either a JSONL file with fields
/// `entity`, `text`, or a directory of <percent-encoded entity>.txt files.
/// Lookup is exact-match first, then case-insensitive. Immutable after
/// construction and safe for concurrent reads.
class LocalRetriever : public Retriever {
public:
    /// Auto-detects directory vs JSONL from the filesystem.
    static LocalRetriever open(const std::string& path,
                               SentenceSegmenter segmenter = segment_sentences);

    static LocalRetriever from_jsonl(const std::string& path,
                                     SentenceSegmenter segmenter = segment_sentences);
    static LocalRetriever from_directory(const std::string& path,
                                         SentenceSegmenter segmenter = segment_sentences);

    Passage retrieve(const std::string& query) override;

    std::size_t size() const { return texts_.size(); }

private:
    explicit LocalRetriever(SentenceSegmenter segmenter)
        : segmenter_(std::move(segmenter)) {}

    void insert(const std::string& entity, std::string text);

    SentenceSegmenter segmenter_;
    std::unordered_map<std::string, std::string> texts_;
    std::unordered_map<std::string, std::string> lower_to_entity_;
};

struct WikiConfig {
    std::string base_url; // e.g. http://host:port/w/api.php
    double timeout_sec = 10.0;
    std::string user_agent = "mp2d/0.1";
    RetryPolicy retry{};
    int max_in_flight = 4;
};

/// Wiki-style HTTP retriever: search action first, then the plaintext
/// extract of the first result page. Safe for concurrent calls; in-flight
/// requests are bounded by max_in_flight.
class WikiRetriever : public Retriever {
public:
    explicit WikiRetriever(WikiConfig config,
                           SentenceSegmenter segmenter = segment_sentences);
    ~WikiRetriever() override;

    Passage retrieve(const std::string& query) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace mp2d
