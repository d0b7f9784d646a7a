#include "doctest.h"

#include <algorithm>

#include "revcue/linter.hpp"

using namespace revcue;

namespace {

TokenStream stream_of(std::vector<std::string> tokens) {
    TokenStream s;
    s.comment_id = "c";
    s.project = "p";
    s.tokens = std::move(tokens);
    return s;
}

} // namespace

TEST_CASE("detect_cues: greedy longest match, leftmost") {
    const auto& lex = CueLexicon::builtin();

    // "for example" wins over the single-word "for".
    const auto multi = detect_cues(stream_of({"for", "example", "CODETOK"}), lex);
    REQUIRE(multi.size() == 1);
    CHECK(multi[0].span == TokenSpan{0, 2});
    CHECK(multi[0].category == CueCategory::Exemplification);
    CHECK(multi[0].phrase == "for example");

    const auto single = detect_cues(stream_of({"because"}), lex);
    REQUIRE(single.size() == 1);
    CHECK(single[0].span == TokenSpan{0, 1});
    CHECK(single[0].category == CueCategory::Causality);

    CHECK(detect_cues(stream_of({"banana", "apple"}), lex).empty());

    // Four-token phrase.
    const auto long_phrase = detect_cues(stream_of({"on", "the", "other", "hand"}), lex);
    REQUIRE(long_phrase.size() == 1);
    CHECK(long_phrase[0].span == TokenSpan{0, 4});
    CHECK(long_phrase[0].category == CueCategory::Contrast);

    // A broken phrase falls back to its single-word parts.
    const auto partial = detect_cues(stream_of({"for", "banana", "example"}), lex);
    REQUIRE(partial.size() == 1);
    CHECK(partial[0].phrase == "for");

    // Consumed tokens are not reused by overlapping matches.
    const auto seq = detect_cues(stream_of({"as", "well", "as"}), lex);
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].phrase == "as well");
    CHECK(seq[0].span == TokenSpan{0, 2});
    CHECK(seq[1].phrase == "as");
    CHECK(seq[1].span == TokenSpan{2, 3});
}

TEST_CASE("detect_modal_requests") {
    const auto with_modal = detect_modal_requests(stream_of({"you", "should", "rename",
                                                             "CODETOK"}));
    REQUIRE(with_modal.size() == 1);
    CHECK(with_modal[0] == TokenSpan{1, 2});

    CHECK(detect_modal_requests(stream_of({"please"})).size() == 1);
    CHECK(detect_modal_requests(stream_of({"i", "renamed", "it"})).empty());

    LintConfig config;
    config.modal_words = {"want"};
    CHECK(detect_modal_requests(stream_of({"should", "want"}), config).size() == 1);
}

TEST_CASE("lint: canonical rationale-bearing comment") {
    const Comment comment{
        "canonical", "p",
        "I don't think we need 2 ways to call get_partner_whitelabel_config as market_id is "
        "None by default"};
    const LintReport report = lint(comment, CueLexicon::builtin());

    CHECK(report.code_refs >= 2);
    CHECK(report.cue_categories_present.contains(CueCategory::Causality));
    CHECK(report.code_cue_collocations >= 1); // "as" sits between two code tokens
    CHECK(report.rationale_flag);

    // The "as" finding exists with the right span (token index 10).
    const bool has_as_cue =
        std::any_of(report.findings.begin(), report.findings.end(), [](const LintFinding& f) {
            return f.rule == "coherence-cue" && f.span == TokenSpan{10, 11} &&
                   f.category == CueCategory::Causality;
        });
    CHECK(has_as_cue);
}

TEST_CASE("lint: cue-free comment") {
    const LintReport report = lint(Comment{"c", "p", "fix this"}, CueLexicon::builtin());
    CHECK(report.code_refs == 0);
    CHECK(report.code_cue_collocations == 0);
    CHECK(report.cue_categories_present.empty());
    CHECK(!report.rationale_flag);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].rule == "missing-rationale");
    CHECK(report.findings[0].severity == LintSeverity::Advice);
}

TEST_CASE("lint: category signal without code collocation") {
    const LintReport report =
        lint(Comment{"c", "p", "should work because PATHTOK changed"}, CueLexicon::builtin());
    CHECK(report.code_refs == 0);
    CHECK(report.code_cue_collocations == 0);
    CHECK(report.cue_categories_present.contains(CueCategory::Causality));
    CHECK(report.rationale_flag);
    CHECK(report.modal_requests == 1); // "should"
}

TEST_CASE("lint: flag formula hand-trace") {
    const auto& lex = CueLexicon::builtin();
    struct Case {
        const char* message;
        bool expected_flag;
    };
    // Hand-traced against: flag = (cue-code collocation >= 1) or
    // (Causality/Hypothesis/Contrast cue present).
    const std::vector<Case> cases = {
        {"fix this", false},
        {"rename get_config", false},                    // code, no cue
        {"rename get_config because it shadows", true},  // cue next to code
        {"because reasons", true},                       // Causality category
        {"if unsure, ask", true},                        // Hypothesis category
        {"however, no", true},                           // Contrast category
        {"also fine", false},                            // Similarity alone: no flag
        {"for example banana", false},                   // Exemplification alone: no flag
        {"actually no", false},                          // Clarification alone: no flag
        {"also fine near get_config also", true},        // Similarity cue inside code window
        {"please rename it", false},                     // modal alone: no flag
        {"should work because PATHTOK changed", true},
    };
    for (const auto& c : cases) {
        INFO(c.message);
        CHECK(lint(Comment{"c", "p", c.message}, lex).rationale_flag == c.expected_flag);
    }
}

TEST_CASE("lint: collocation counting matches extract_pairs on cue words") {
    const auto& lex = CueLexicon::builtin();
    const LintConfig config;
    const Comment comment{"c", "p",
                          "rename foo_bar as baz_qux because it shadows x_y so fix stuff"};
    const LintReport report = lint(comment, lex, config);

    const TokenStream stream = preprocess(comment, config.preprocess);
    std::size_t expected = 0;
    for (const auto& word : extract_pairs(stream, config.collocation)) {
        if (lex.single_word_set().contains(word)) ++expected;
    }
    CHECK(report.code_cue_collocations == expected);
    CHECK(expected >= 2);
}

TEST_CASE("lint: finding spans match the triggering tokens") {
    const auto& lex = CueLexicon::builtin();
    const Comment comment{"c", "p", "please fix because for example get_config fails"};
    const LintReport report = lint(comment, lex);
    for (const auto& finding : report.findings) {
        REQUIRE(finding.span.end >= finding.span.begin);
        REQUIRE(finding.span.end <= report.tokens.size());
        CHECK((finding.category.has_value() == (finding.rule == "coherence-cue")));
        if (finding.rule == "coherence-cue") {
            std::string phrase;
            for (std::size_t i = finding.span.begin; i < finding.span.end; ++i) {
                if (i > finding.span.begin) phrase += ' ';
                phrase += report.tokens[i];
            }
            CHECK(lex.lookup(phrase).has_value());
        }
    }
}

TEST_CASE("lint report JSON and diagnostics") {
    const LintReport report =
        lint(Comment{"c1", "p", "rename get_config because it shadows"}, CueLexicon::builtin());
    const std::string json = lint_report_to_json(report);
    CHECK(json.find("\"rationale_flag\": true") != std::string::npos);
    CHECK(json.find("coherence-cue") != std::string::npos);

    const auto lines = format_findings(report);
    CHECK(lines.size() == report.findings.size());
    for (const auto& line : lines) {
        CHECK(line.rfind("c1:tok", 0) == 0);
    }
}
