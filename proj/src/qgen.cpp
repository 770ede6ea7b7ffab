#include "mp2d/qgen.hpp"

#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

std::string render_prompt(const PromptContext& ctx) {
    std::string prompt =
        "You are an automatic assistant that generates appropriate question based on "
        "the predefined answer. Generate a single question that is most suitable for "
        "the given dialogue history and target answer.\n"
        "Please fill in only [BLANK] in the next dialogue.\n";
    if (ctx.shift) {
        prompt += "Note that the conversation topic has changed into " + ctx.shift->second +
                  " from " + ctx.shift->first + ".\n";
    }
    prompt += "\nSTART\n";
    for (const auto& [question, answer] : ctx.history) {
        prompt += "A: " + question + "\n";
        prompt += "B: " + answer + "\n";
    }
    prompt += "A: [BLANK]\n";
    prompt += "B: " + ctx.target_answer + "\n";
    prompt += "END\n";
    return prompt;
}

std::string StubGenerator::generate(const PromptContext& ctx) {
    std::string lead;
    int kept = 0;
    for (const auto& token : whitespace_tokens(ctx.target_answer)) {
        const std::string bare = strip_punctuation(token);
        if (bare.empty()) continue;
        if (!lead.empty()) lead += ' ';
        lead += bare;
        if (++kept == 5) break;
    }
    return "What can you tell me about " + lead + "?";
}

// ---- chat-completion client ----

struct ChatClient::Impl {
    ChatConfig config;
    UrlParts url;
    std::counting_semaphore<0x7FFFFFFF> in_flight;

    explicit Impl(ChatConfig cfg)
        : config(std::move(cfg)),
          url(parse_base_url(config.base_url)),
          in_flight(std::max(1, config.max_in_flight)) {}
};

ChatClient::ChatClient(ChatConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
ChatClient::~ChatClient() = default;
ChatClient::ChatClient(ChatClient&&) noexcept = default;
ChatClient& ChatClient::operator=(ChatClient&&) noexcept = default;

const ChatConfig& ChatClient::config() const { return impl_->config; }

std::string ChatClient::complete(const std::string& prompt) {
    // Temperature 0, single completion: generation must be reproducible.
    const nlohmann::json body = {
        {"model", impl_->config.model},
        {"messages", nlohmann::json::array({nlohmann::json{
                         {"role", "user"}, {"content", prompt}}})},
        {"temperature", 0},
    };
    const std::string payload = body.dump();
    const std::string path = impl_->url.path + "/chat/completions";

    std::string last_failure = "no attempt made";
    for (int attempt = 1; attempt <= impl_->config.retry.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(backoff_delay(impl_->config.retry, attempt - 1));
        }
        httplib::Client client(impl_->url.origin);
        client.set_connection_timeout(std::chrono::duration<double>(impl_->config.timeout_sec));
        client.set_read_timeout(std::chrono::duration<double>(impl_->config.timeout_sec));
        httplib::Headers headers;
        if (!impl_->config.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + impl_->config.api_key);
        }

        impl_->in_flight.acquire();
        auto response = client.Post(path, headers, payload, "application/json");
        impl_->in_flight.release();

        if (!response) {
            last_failure = "connection error: " + httplib::to_string(response.error());
            continue;
        }
        if (response->status / 100 != 2) {
            last_failure = "HTTP status " + std::to_string(response->status);
            continue;
        }

        std::string content;
        try {
            const auto parsed = nlohmann::json::parse(response->body);
            const auto& choices = parsed.value("choices", nlohmann::json::array());
            if (!choices.empty()) {
                const auto& first = choices[0];
                if (first.contains("message") && first["message"].contains("content")) {
                    content = first["message"]["content"].get<std::string>();
                } else if (first.contains("text")) {
                    content = first["text"].get<std::string>();
                }
            }
        } catch (const nlohmann::json::exception& e) {
            last_failure = std::string("invalid JSON body: ") + e.what();
            continue;
        }
        if (trim(content).empty()) {
            throw EmptyGenerationError("chat endpoint returned an empty completion");
        }
        return trim(content);
    }
    throw TransportError("POST " + impl_->url.origin + path + " failed after " +
                         std::to_string(impl_->config.retry.max_attempts) +
                         " attempts; last failure: " + last_failure);
}

// ---- passage-to-dialogue ----

RawDialogue dialogue_from_multipassage(const MultiPassage& mp, QuestionGenerator& generator) {
    RawDialogue dialogue;
    dialogue.walk_id = mp.walk_id;
    dialogue.entities.reserve(mp.passages.size());
    for (const auto& passage : mp.passages) dialogue.entities.push_back(passage.entity);

    PromptContext ctx;
    auto generate_turn = [&](const std::string& answer, int topic_index, SourceKind kind,
                             std::optional<std::pair<std::string, std::string>> shift) {
        ctx.target_answer = answer;
        ctx.shift = std::move(shift);
        std::string question;
        try {
            question = generator.generate(ctx);
        } catch (const Error& e) {
            throw GenerationError(e.what(), dialogue.turns.size());
        }
        QATurn turn;
        turn.question = question;
        turn.answer = answer;
        turn.topic_index = topic_index;
        turn.is_topic_shift = kind == SourceKind::RelationSentence;
        turn.source_kind = kind;
        dialogue.turns.push_back(turn);
        ctx.history.emplace_back(question, answer);
    };

    const std::size_t n = mp.passages.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int topic = static_cast<int>(i) + 1;
        for (const auto& sentence : mp.passages[i].sentences) {
            generate_turn(sentence, topic, SourceKind::PassageSentence, std::nullopt);
        }
        if (i + 1 < n) {
            // The bridge turn answers with R_i and carries the shift
            // instruction; it opens topic i+2's segment.
            generate_turn(mp.relation_sentences[i], topic + 1, SourceKind::RelationSentence,
                          std::make_pair(mp.passages[i].entity, mp.passages[i + 1].entity));
        }
    }
    return dialogue;
}

} // namespace mp2d
