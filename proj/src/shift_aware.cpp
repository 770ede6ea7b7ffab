#include "mp2d/shift_aware.hpp"

#include <unordered_set>

#include "mp2d/errors.hpp"
#include "mp2d/text.hpp"

namespace mp2d {

namespace {

// Fixed 50-word stopword list; covers the function words and question
// scaffolding that would otherwise make every follow-up look on-topic.
const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> kStopwords = {
        "a",     "an",    "the",   "is",    "are",   "was",   "were",  "be",
        "been",  "being", "am",    "do",    "does",  "did",   "have",  "has",
        "had",   "what",  "who",   "which", "when",  "where", "why",   "how",
        "can",   "could", "will",  "would", "shall", "should","may",   "might",
        "must",  "of",    "to",    "in",    "on",    "at",    "by",    "for",
        "with",  "from",  "about", "as",    "and",   "or",    "but",   "not",
        "it",    "this",
    };
    return kStopwords;
}

std::unordered_set<std::string> content_tokens(const std::string& text) {
    std::unordered_set<std::string> tokens;
    for (const auto& raw : whitespace_tokens(text)) {
        const std::string token = strip_punctuation(to_lower(raw));
        if (token.empty() || stopwords().count(token)) continue;
        tokens.insert(token);
    }
    return tokens;
}

} // namespace

bool LexicalDetector::is_shift(const std::vector<HistoryTurn>& history,
                               const std::string& new_question) {
    if (history.empty()) return false;
    const auto question_tokens = content_tokens(new_question);
    if (question_tokens.empty()) return false;

    const std::size_t window = std::min<std::size_t>(2, history.size());
    for (std::size_t i = history.size() - window; i < history.size(); ++i) {
        for (const auto& token : content_tokens(history[i].first)) {
            if (question_tokens.count(token)) return false;
        }
        for (const auto& token : content_tokens(history[i].second)) {
            if (question_tokens.count(token)) return false;
        }
    }
    return true;
}

ShiftVerdict detect_shift(ShiftDetector& detector, const std::vector<HistoryTurn>& history,
                          const std::string& new_question) {
    if (trim(new_question).empty()) {
        throw ValidationError("detect_shift: new_question is empty");
    }
    return ShiftVerdict{detector.is_shift(history, new_question), detector.name()};
}

std::string augment_responder_input(const MultiPassage& passages,
                                    const std::vector<HistoryTurn>& history,
                                    const std::string& question,
                                    const ShiftVerdict& verdict) {
    std::string prompt = "Passages:\n";
    for (std::size_t i = 0; i < passages.passages.size(); ++i) {
        prompt += '[' + passages.passages[i].entity + "] ";
        for (std::size_t s = 0; s < passages.passages[i].sentences.size(); ++s) {
            if (s) prompt += ' ';
            prompt += passages.passages[i].sentences[s];
        }
        prompt += '\n';
        if (i < passages.relation_sentences.size()) {
            prompt += passages.relation_sentences[i] + '\n';
        }
    }
    prompt += "\nHistory:\n";
    for (const auto& [q, a] : history) {
        prompt += "A: " + q + '\n';
        prompt += "B: " + a + '\n';
    }
    if (verdict.is_shift) {
        prompt += "Note: the topic has shifted in this turn.\n";
    }
    prompt += "A: " + question + '\n';
    prompt += "B: [BLANK]\n";
    return prompt;
}

} // namespace mp2d
