#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mp2d/assembler.hpp"
#include "mp2d/http.hpp"

namespace mp2d {

enum class SourceKind { PassageSentence, RelationSentence };

/// One question-answer turn. Relation-sentence turns are the topic shift
/// turns and open the next topic's segment.
struct QATurn {
    std::string question;
    std::string answer;
    int topic_index = 1; // 1-based
    bool is_topic_shift = false;
    SourceKind source_kind = SourceKind::PassageSentence;
};

struct RawDialogue {
    std::vector<QATurn> turns;
    std::vector<std::string> entities;
    std::string walk_id;
};

/// Input for generating one question: the dialogue so far, the answer the
/// question must lead to, and (on topic shift turns only) the topic pair.
struct PromptContext {
    std::vector<std::pair<std::string, std::string>> history;
    std::string target_answer;
    std::optional<std::pair<std::string, std::string>> shift; // (current, next)
};

/// Renders the fill-in-the-blank question-generation prompt. The topic
/// change line appears exactly when ctx.shift is set.
std::string render_prompt(const PromptContext& ctx);

class QuestionGenerator {
public:
    virtual ~QuestionGenerator() = default;
    virtual std::string generate(const PromptContext& ctx) = 0;
    virtual std::string name() const = 0;
};

/// Deterministic offline generator: "What can you tell me about " plus the
/// first 5 whitespace tokens of the target answer, punctuation-stripped,
/// plus "?". Part of the contract so golden outputs are reproducible.
class StubGenerator : public QuestionGenerator {
public:
    std::string generate(const PromptContext& ctx) override;
    std::string name() const override { return "stub"; }
};

struct ChatConfig {
    std::string base_url; // e.g. http://host:port/v1
    std::string model;
    std::string api_key;
    double timeout_sec = 60.0;
    RetryPolicy retry{};
    int max_in_flight = 4;
};

/// Chat-completion client. POSTs {model, messages:[{role:"user",...}],
/// temperature: 0} to <base>/chat/completions with bearer auth and returns
/// the first choice's text. Safe for concurrent use with bounded in-flight
/// requests.
class ChatClient {
public:
    explicit ChatClient(ChatConfig config);
    ~ChatClient();

    ChatClient(ChatClient&&) noexcept;
    ChatClient& operator=(ChatClient&&) noexcept;

    /// Throws TransportError after retry exhaustion and
    /// EmptyGenerationError on a blank completion.
    std::string complete(const std::string& prompt);

    const ChatConfig& config() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// LLM-backed generator: renders the prompt and asks the chat endpoint.
class LlmGenerator : public QuestionGenerator {
public:
    explicit LlmGenerator(ChatClient client) : client_(std::move(client)) {}

    std::string generate(const PromptContext& ctx) override {
        return client_.complete(render_prompt(ctx));
    }
    std::string name() const override { return "llm"; }

private:
    ChatClient client_;
};

/// Auto-regressive passage-to-dialogue conversion: one question per passage
/// sentence, then a topic shift turn per relation sentence. Generation
/// failures rethrow as GenerationError carrying the failing turn index.
RawDialogue dialogue_from_multipassage(const MultiPassage& mp, QuestionGenerator& generator);

} // namespace mp2d
