#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revcue/collocation.hpp"
#include "revcue/cue_lexicon.hpp"
#include "revcue/preprocess.hpp"

namespace revcue {

/// Half-open token index range [begin, end).
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const TokenSpan&) const = default;
};

struct CueMatch {
    TokenSpan span;
    CueCategory category;
    std::string phrase; // the lexicon phrase that matched
};

enum class LintSeverity { Info, Advice };

struct LintFinding {
    std::string rule; // "coherence-cue", "modal-request", "missing-rationale"
    LintSeverity severity = LintSeverity::Info;
    TokenSpan span;
    std::optional<CueCategory> category; // present iff rule is cue-related
    std::string message;
};

struct LintReport {
    std::string comment_id;
    std::vector<std::string> tokens;
    std::vector<LintFinding> findings;
    std::set<CueCategory> cue_categories_present;
    std::size_t code_refs = 0;             // CODETOK occurrences
    std::size_t code_cue_collocations = 0; // cue words inside a code window
    std::size_t modal_requests = 0;
    bool rationale_flag = false;
};

struct LintConfig {
    PreprocessConfig preprocess;
    CollocationConfig collocation;
    std::vector<std::string> modal_words = {
        "should", "may", "might", "could", "would",
        "must", "shall", "please", "maybe",
    };
    // Categories whose mere presence counts as a rationale signal.
    std::set<CueCategory> rationale_categories = {
        CueCategory::Causality, CueCategory::Hypothesis, CueCategory::Contrast,
    };
};

/// All cue phrase occurrences: single words plus greedy longest-match
/// multi-word phrases over consecutive tokens, resolved longest-first then
/// leftmost.
std::vector<CueMatch> detect_cues(const TokenStream& stream, const CueLexicon& lexicon);

/// Occurrences of modal/request verbs (one-token spans).
std::vector<TokenSpan> detect_modal_requests(const TokenStream& stream,
                                             const LintConfig& config = {});

/// Preprocesses one comment and evaluates every rule.
/// rationale_flag = (code_cue_collocations >= 1) or (a rationale category is
/// present among the detected cues).
LintReport lint(const Comment& comment, const CueLexicon& lexicon, const LintConfig& config = {});

std::string lint_report_to_json(const LintReport& report);

/// One diagnostic line per finding: `<id>:tok<begin>: <severity>: <message>`.
std::vector<std::string> format_findings(const LintReport& report);

} // namespace revcue
