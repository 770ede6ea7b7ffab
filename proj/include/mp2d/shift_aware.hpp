#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mp2d/assembler.hpp"

namespace mp2d {

struct ShiftVerdict {
    bool is_shift = false;
    std::string detector_name;
};

using HistoryTurn = std::pair<std::string, std::string>; // (question, answer)

/// Decides whether the newest question starts a new topic given the
/// dialogue so far.
class ShiftDetector {
public:
    virtual ~ShiftDetector() = default;
    virtual bool is_shift(const std::vector<HistoryTurn>& history,
                          const std::string& new_question) = 0;
    virtual std::string name() const = 0;
};

/// Baseline detector: flags a shift when the new question shares zero
/// content tokens (lowercased, punctuation-stripped, 50 fixed stopwords
/// removed) with the last two history turns. Empty history is never a
/// shift.
class LexicalDetector : public ShiftDetector {
public:
    bool is_shift(const std::vector<HistoryTurn>& history,
                  const std::string& new_question) override;
    std::string name() const override { return "lexical"; }
};

ShiftVerdict detect_shift(ShiftDetector& detector, const std::vector<HistoryTurn>& history,
                          const std::string& new_question);

/// Responder prompt carrying the multi-passage content, the history, the
/// question, and — only on a shift verdict — one fixed note line.
std::string augment_responder_input(const MultiPassage& passages,
                                    const std::vector<HistoryTurn>& history,
                                    const std::string& question,
                                    const ShiftVerdict& verdict);

} // namespace mp2d
