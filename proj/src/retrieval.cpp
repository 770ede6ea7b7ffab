#include "mp2d/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <semaphore>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

const std::vector<std::string>& abbreviations() {
    static const std::vector<std::string> kAbbrev = {
        "Mr.", "Mrs.", "Dr.", "St.", "e.g.", "i.e.", "etc.",
        "vs.", "Inc.", "Jr.", "Sr.", "U.S.",
    };
    return kAbbrev;
}

// The non-whitespace token ending at position i, with leading quote/bracket
// characters removed so "(e.g." still matches the abbreviation list.
std::string token_ending_at(const std::string& text, std::size_t i) {
    std::size_t start = i;
    while (start > 0 && !is_space(text[start - 1])) --start;
    while (start <= i && !is_alpha(text[start])) ++start;
    return text.substr(start, i - start + 1);
}

bool ends_known_abbreviation(const std::string& text, std::size_t i) {
    const std::string token = token_ending_at(text, i);
    const auto& list = abbreviations();
    return std::find(list.begin(), list.end(), token) != list.end();
}

} // namespace

std::vector<std::string> segment_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;

        std::size_t j = i + 1;
        while (j < text.size() && is_space(text[j])) ++j;
        const bool at_end = j == text.size();
        const bool ws_then_upper = j > i + 1 && j < text.size() && is_upper(text[j]);
        if (!at_end && !ws_then_upper) continue;
        if (c == '.' && ends_known_abbreviation(text, i)) continue;

        const std::string sentence = trim(text.substr(start, i - start + 1));
        if (!sentence.empty()) sentences.push_back(sentence);
        start = j;
        i = j - 1;
    }
    if (start < text.size()) {
        const std::string tail = trim(text.substr(start));
        if (!tail.empty()) sentences.push_back(tail);
    }
    return sentences;
}

TruncatedPassage truncate(const Passage& passage, Rng& rng) {
    const int draw = rng.uniform_int(3, 6);
    const std::size_t k = std::min(passage.sentences.size(),
                                   static_cast<std::size_t>(draw));
    TruncatedPassage out;
    out.entity = passage.entity;
    out.sentences.assign(passage.sentences.begin(),
                         passage.sentences.begin() + static_cast<long>(k));
    return out;
}

// ---- local retriever ----

LocalRetriever LocalRetriever::open(const std::string& path, SentenceSegmenter segmenter) {
    if (std::filesystem::is_directory(path)) {
        return from_directory(path, std::move(segmenter));
    }
    return from_jsonl(path, std::move(segmenter));
}

LocalRetriever LocalRetriever::from_jsonl(const std::string& path,
                                          SentenceSegmenter segmenter) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus file: " + path);

    LocalRetriever retriever(std::move(segmenter));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (trim(line).empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!record.is_object() || !record.contains("entity") ||
            !record["entity"].is_string() || !record.contains("text") ||
            !record["text"].is_string()) {
            throw ParseError("corpus record needs string fields 'entity' and 'text'",
                             line_no);
        }
        retriever.insert(trim(record["entity"].get<std::string>()),
                         record["text"].get<std::string>());
    }
    return retriever;
}

LocalRetriever LocalRetriever::from_directory(const std::string& path,
                                              SentenceSegmenter segmenter) {
    if (!std::filesystem::is_directory(path)) {
        throw ConfigError("corpus directory does not exist: " + path);
    }
    LocalRetriever retriever(std::move(segmenter));
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        retriever.insert(percent_decode(file.stem().string()), buffer.str());
    }
    return retriever;
}

void LocalRetriever::insert(const std::string& entity, std::string text) {
    if (entity.empty()) return;
    if (texts_.emplace(entity, std::move(text)).second) {
        lower_to_entity_.emplace(to_lower(entity), entity);
    }
}

Passage LocalRetriever::retrieve(const std::string& query) {
    auto it = texts_.find(query);
    if (it == texts_.end()) {
        const auto lower_it = lower_to_entity_.find(to_lower(query));
        if (lower_it != lower_to_entity_.end()) {
            it = texts_.find(lower_it->second);
        }
    }
    if (it == texts_.end()) throw NotFoundError(query);

    Passage passage;
    passage.entity = it->first;
    passage.sentences = segmenter_(it->second);
    if (passage.sentences.empty()) throw NotFoundError(query);
    return passage;
}

// ---- wiki-style remote retriever ----

struct WikiRetriever::Impl {
    WikiConfig config;
    UrlParts url;
    SentenceSegmenter segmenter;
    std::counting_semaphore<0x7FFFFFFF> in_flight;

    Impl(WikiConfig cfg, SentenceSegmenter seg)
        : config(std::move(cfg)),
          url(parse_base_url(config.base_url)),
          segmenter(std::move(seg)),
          in_flight(std::max(1, config.max_in_flight)) {}

    nlohmann::json get_json(const std::string& path_query) {
        std::string last_failure = "no attempt made";
        for (int attempt = 1; attempt <= config.retry.max_attempts; ++attempt) {
            if (attempt > 1) {
                std::this_thread::sleep_for(backoff_delay(config.retry, attempt - 1));
            }
            httplib::Client client(url.origin);
            client.set_connection_timeout(std::chrono::duration<double>(config.timeout_sec));
            client.set_read_timeout(std::chrono::duration<double>(config.timeout_sec));
            client.set_default_headers({{"User-Agent", config.user_agent}});

            in_flight.acquire();
            auto response = client.Get(path_query);
            in_flight.release();

            if (!response) {
                last_failure = "connection error: " + httplib::to_string(response.error());
                continue;
            }
            if (response->status / 100 != 2) {
                last_failure = "HTTP status " + std::to_string(response->status);
                continue;
            }
            try {
                return nlohmann::json::parse(response->body);
            } catch (const nlohmann::json::exception& e) {
                last_failure = std::string("invalid JSON body: ") + e.what();
            }
        }
        throw TransportError("GET " + url.origin + path_query + " failed after " +
                             std::to_string(config.retry.max_attempts) +
                             " attempts; last failure: " + last_failure);
    }
};

WikiRetriever::WikiRetriever(WikiConfig config, SentenceSegmenter segmenter)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(segmenter))) {}

WikiRetriever::~WikiRetriever() = default;

Passage WikiRetriever::retrieve(const std::string& query) {
    // Search action; the first returned page disambiguates the entity.
    const auto search = impl_->get_json(
        impl_->url.path + "?action=query&list=search&format=json&srlimit=1&srsearch=" +
        percent_encode(query));
    const auto& hits = search.value("query", nlohmann::json::object())
                           .value("search", nlohmann::json::array());
    if (!hits.is_array() || hits.empty() || !hits[0].contains("title")) {
        throw NotFoundError(query);
    }
    const auto title = hits[0]["title"].get<std::string>();

    // Extract action; only the leading plaintext extract is used.
    const auto page = impl_->get_json(
        impl_->url.path +
        "?action=query&prop=extracts&explaintext=1&format=json&redirects=1&titles=" +
        percent_encode(title));
    std::string extract;
    const auto pages = page.value("query", nlohmann::json::object())
                           .value("pages", nlohmann::json::object());
    for (const auto& [_, value] : pages.items()) {
        if (value.contains("extract") && value["extract"].is_string()) {
            extract = value["extract"].get<std::string>();
            break;
        }
    }
    if (trim(extract).empty()) throw NotFoundError(query);

    Passage passage;
    passage.entity = query;
    passage.sentences = impl_->segmenter(extract);
    if (passage.sentences.empty()) throw NotFoundError(query);
    return passage;
}

} // namespace mp2d
