#include "revcue/linter.hpp"

#include <algorithm>

#include "json.hpp"

namespace revcue {

namespace {

const char* severity_name(LintSeverity severity) {
    return severity == LintSeverity::Info ? "info" : "advice";
}

std::string join_tokens(const TokenStream& stream, const TokenSpan& span) {
    std::string out;
    for (std::size_t i = span.begin; i < span.end; ++i) {
        if (i > span.begin) out.push_back(' ');
        out += stream.tokens[i];
    }
    return out;
}

} // namespace

std::vector<CueMatch> detect_cues(const TokenStream& stream, const CueLexicon& lexicon) {
    std::vector<CueMatch> matches;
    const auto& tokens = stream.tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::vector<std::size_t>* candidates = lexicon.entries_starting_with(tokens[i]);
        if (!candidates) {
            ++i;
            continue;
        }
        bool matched = false;
        for (const std::size_t entry_index : *candidates) { // longest first
            const auto& phrase_tokens = lexicon.phrase_tokens(entry_index);
            if (i + phrase_tokens.size() > tokens.size()) continue;
            if (!std::equal(phrase_tokens.begin(), phrase_tokens.end(), tokens.begin() + i)) {
                continue;
            }
            matches.push_back(CueMatch{TokenSpan{i, i + phrase_tokens.size()},
                                       lexicon.entry(entry_index).category,
                                       lexicon.entry(entry_index).phrase});
            i += phrase_tokens.size();
            matched = true;
            break;
        }
        if (!matched) ++i;
    }
    return matches;
}

std::vector<TokenSpan> detect_modal_requests(const TokenStream& stream,
                                             const LintConfig& config) {
    std::vector<TokenSpan> spans;
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        if (std::find(config.modal_words.begin(), config.modal_words.end(), stream.tokens[i]) !=
            config.modal_words.end()) {
            spans.push_back(TokenSpan{i, i + 1});
        }
    }
    return spans;
}

LintReport lint(const Comment& comment, const CueLexicon& lexicon, const LintConfig& config) {
    LintReport report;
    report.comment_id = comment.id;

    const TokenStream stream = preprocess(comment, config.preprocess);
    report.tokens = stream.tokens;

    const auto cues = detect_cues(stream, lexicon);
    const auto modals = detect_modal_requests(stream, config);

    for (const auto& cue : cues) {
        report.cue_categories_present.insert(cue.category);
        LintFinding finding;
        finding.rule = "coherence-cue";
        finding.severity = LintSeverity::Info;
        finding.span = cue.span;
        finding.category = cue.category;
        finding.message = std::string("coherence cue \"") + cue.phrase + "\" (" +
                          to_string(cue.category) + ")";
        report.findings.push_back(std::move(finding));
    }
    for (const auto& span : modals) {
        LintFinding finding;
        finding.rule = "modal-request";
        finding.severity = LintSeverity::Info;
        finding.span = span;
        finding.message = "modal request verb \"" + join_tokens(stream, span) + "\"";
        report.findings.push_back(std::move(finding));
    }
    report.modal_requests = modals.size();

    report.code_refs = static_cast<std::size_t>(
        std::count(stream.tokens.begin(), stream.tokens.end(), kCodeToken));

    // Same window rule as the collocation engine, restricted to single-word
    // cues.
    const auto& single = lexicon.single_word_set();
    for (const auto& partner : extract_pairs(stream, config.collocation)) {
        if (single.contains(partner)) ++report.code_cue_collocations;
    }

    bool category_signal = false;
    for (const auto category : report.cue_categories_present) {
        if (config.rationale_categories.contains(category)) {
            category_signal = true;
            break;
        }
    }
    report.rationale_flag = report.code_cue_collocations >= 1 || category_signal;

    if (!report.rationale_flag) {
        LintFinding finding;
        finding.rule = "missing-rationale";
        finding.severity = LintSeverity::Advice;
        finding.span = TokenSpan{0, 0};
        finding.message =
            "no rationale signal: no coherence cue near a code reference and no "
            "causal/conditional/contrast wording";
        report.findings.push_back(std::move(finding));
    }
    return report;
}

std::string lint_report_to_json(const LintReport& report) {
    using nlohmann::json;
    json j;
    j["comment_id"] = report.comment_id;
    j["tokens"] = report.tokens;
    j["code_refs"] = report.code_refs;
    j["code_cue_collocations"] = report.code_cue_collocations;
    j["modal_requests"] = report.modal_requests;
    j["rationale_flag"] = report.rationale_flag;
    json categories = json::array();
    for (const auto category : report.cue_categories_present) {
        categories.push_back(to_string(category));
    }
    j["cue_categories"] = std::move(categories);
    json findings = json::array();
    for (const auto& finding : report.findings) {
        json f;
        f["rule"] = finding.rule;
        f["severity"] = severity_name(finding.severity);
        f["span"] = {finding.span.begin, finding.span.end};
        if (finding.category) f["category"] = to_string(*finding.category);
        f["message"] = finding.message;
        findings.push_back(std::move(f));
    }
    j["findings"] = std::move(findings);
    return j.dump(2) + "\n";
}

std::vector<std::string> format_findings(const LintReport& report) {
    std::vector<std::string> lines;
    lines.reserve(report.findings.size());
    for (const auto& finding : report.findings) {
        lines.push_back(report.comment_id + ":tok" + std::to_string(finding.span.begin) + ": " +
                        severity_name(finding.severity) + ": " + finding.message);
    }
    return lines;
}

} // namespace revcue
