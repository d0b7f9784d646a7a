#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "revcue/analytics.hpp"
#include "revcue/collocation.hpp"
#include "revcue/cue_lexicon.hpp"
#include "revcue/linter.hpp"
#include "revcue/preprocess.hpp"

#include "support/generators.hpp"

namespace testsupport {

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    bool ok = true;
    std::string failure;

    void fail(std::size_t case_index, const std::string& detail) {
        if (!ok) return;
        ok = false;
        failure = "case " + std::to_string(case_index) + ": " + detail;
    }
};

inline std::string dump_tokens(const std::vector<std::string>& tokens) {
    std::string out = "[";
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ", ";
        out += tokens[i];
    }
    return out + "]";
}

// extract_pairs == brute-force double loop, as multisets.
inline PropertyResult prop_oracle_equivalence(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"oracle equivalence (extract_pairs vs brute force)"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const bool with_breaks = chance(rng, 0.3);
        const revcue::TokenStream stream = random_stream(rng, 50, with_breaks);
        revcue::CollocationConfig config;
        config.window = 1 + static_cast<int>(pick_index(rng, 3));
        auto got = revcue::extract_pairs(stream, config);
        auto want = oracle_pairs(stream, config.window, config.excluded_articles);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) {
            result.fail(c, "mismatch on " + dump_tokens(stream.tokens));
        }
    }
    result.cases = cases;
    return result;
}

// preprocess(render(preprocess(m))) == preprocess(m).
inline PropertyResult prop_preprocess_idempotent(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"preprocessing idempotence"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        revcue::PreprocessConfig config;
        config.sentence_boundaries = chance(rng, 0.5);
        config.collapse_code_lines = chance(rng, 0.7);
        const revcue::Comment comment{"c", "p", random_message(rng)};
        const revcue::TokenStream once = revcue::preprocess(comment, config);
        const revcue::Comment again{"c", "p", revcue::render_tokens(once)};
        const revcue::TokenStream twice = revcue::preprocess(again, config);
        if (once != twice) {
            result.fail(c, "message <" + comment.message + "> tokens " +
                               dump_tokens(once.tokens) + " vs " + dump_tokens(twice.tokens));
        }
    }
    result.cases = cases;
    return result;
}

// No output token matches the URI or path detectors.
inline PropertyResult prop_placeholder_soundness(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"placeholder soundness"};
    Rng rng(seed);
    const revcue::PreprocessConfig config;
    for (std::size_t c = 0; c < cases; ++c) {
        const revcue::Comment comment{"c", "p", random_message(rng)};
        const revcue::TokenStream stream = revcue::preprocess(comment, config);
        for (const auto& token : stream.tokens) {
            if (revcue::looks_like_uri(token, config) || revcue::looks_like_path(token)) {
                result.fail(c, "token <" + token + "> from <" + comment.message + ">");
                break;
            }
        }
    }
    result.cases = cases;
    return result;
}

// Plain-word messages keep their word multiset (lowercased, ends stripped).
inline PropertyResult prop_no_stopword_loss(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"no stop-word loss"};
    Rng rng(seed);
    const revcue::PreprocessConfig config;
    for (std::size_t c = 0; c < cases; ++c) {
        // Pool limited to natural words that no detector can fire on.
        std::vector<std::string> words;
        std::string message;
        const std::size_t n = pick_index(rng, 30);
        for (std::size_t i = 0; i < n; ++i) {
            std::string w = chance(rng, 0.5)
                                ? plain_words()[pick_index(rng, plain_words().size())]
                                : cue_words()[pick_index(rng, cue_words().size())];
            words.push_back(w);
            if (chance(rng, 0.25)) w += ".";
            if (chance(rng, 0.1)) w = "(" + w;
            if (!message.empty()) message.push_back(' ');
            message += w;
        }
        const revcue::TokenStream stream =
            revcue::preprocess(revcue::Comment{"c", "p", message}, config);
        std::vector<std::string> got = stream.tokens;
        std::sort(got.begin(), got.end());
        std::sort(words.begin(), words.end());
        if (got != words) {
            result.fail(c, "message <" + message + "> lost or changed words");
        }
    }
    result.cases = cases;
    return result;
}

// Any partition of a corpus, merged, equals the sequential table.
inline PropertyResult prop_additivity_partition(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"additivity / partition invariance"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = pick_index(rng, 20);
        std::vector<revcue::TokenStream> corpus;
        for (std::size_t i = 0; i < n; ++i) {
            auto s = random_stream(rng, 30);
            s.project = "p";
            corpus.push_back(std::move(s));
        }
        revcue::CollocationConfig config;
        config.dedup_per_comment = chance(rng, 0.3);

        const revcue::CollocationTable whole = revcue::build_table(corpus, "p", config);

        revcue::CollocationTable merged;
        merged.project = "p";
        merged.config_fingerprint = whole.config_fingerprint;
        std::size_t start = 0;
        while (start < corpus.size()) {
            const std::size_t len = 1 + pick_index(rng, corpus.size() - start);
            const std::span<const revcue::TokenStream> part(corpus.data() + start, len);
            revcue::merge_tables(merged, revcue::build_table(part, "p", config));
            start += len;
        }
        if (merged.counts != whole.counts || merged.total_pairs != whole.total_pairs ||
            merged.excluded_pairs != whole.excluded_pairs) {
            result.fail(c, "partition merge diverged from sequential table");
        }
    }
    result.cases = cases;
    return result;
}

// rank() never emits a count below the filter; filter 0 loses nothing.
inline PropertyResult prop_filter_soundness(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"frequency filter soundness"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        revcue::CollocationTable table;
        table.project = "p";
        const std::size_t n = pick_index(rng, 40);
        for (std::size_t i = 0; i < n; ++i) {
            table.counts["w" + std::to_string(i)] = pick_index(rng, 30);
        }
        const std::uint64_t min_frequency = pick_index(rng, 15);
        const auto ranked = revcue::rank(table, min_frequency);
        for (const auto& [word, count] : ranked.ranked) {
            if (count < min_frequency) {
                result.fail(c, "count below filter for " + word);
                break;
            }
        }
        if (revcue::rank(table, 0).ranked.size() != table.counts.size()) {
            result.fail(c, "filter 0 dropped words");
        }
        for (std::size_t i = 1; i < ranked.ranked.size(); ++i) {
            const auto& prev = ranked.ranked[i - 1];
            const auto& cur = ranked.ranked[i];
            if (prev.second < cur.second ||
                (prev.second == cur.second && prev.first >= cur.first)) {
                result.fail(c, "ordering violated");
                break;
            }
        }
    }
    result.cases = cases;
    return result;
}

// Enlarging the window never decreases any word's count.
inline PropertyResult prop_window_monotonicity(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"window monotonicity"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const revcue::TokenStream stream = random_stream(rng, 40);
        revcue::CollocationConfig narrow, wide;
        narrow.window = 1 + static_cast<int>(pick_index(rng, 3));
        wide.window = narrow.window + 1 + static_cast<int>(pick_index(rng, 2));

        std::map<std::string, std::size_t> narrow_counts, wide_counts;
        for (const auto& w : revcue::extract_pairs(stream, narrow)) ++narrow_counts[w];
        for (const auto& w : revcue::extract_pairs(stream, wide)) ++wide_counts[w];
        for (const auto& [word, count] : narrow_counts) {
            if (wide_counts[word] < count) {
                result.fail(c, "count for " + word + " decreased with a wider window");
                break;
            }
        }
    }
    result.cases = cases;
    return result;
}

// Adding lexicon entries never decreases an inclusion rate.
inline PropertyResult prop_monotone_lexicon_growth(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"monotone lexicon growth"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        revcue::RankedCollocations ranked;
        ranked.project = "p";
        const std::size_t n = 1 + pick_index(rng, 60);
        for (std::size_t i = 0; i < n; ++i) {
            ranked.ranked.emplace_back("w" + std::to_string(i), 100 - i);
        }

        std::string base_tsv, extended_tsv;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string line = "w" + std::to_string(i) + "\tCausality\n";
            const bool in_base = chance(rng, 0.3);
            if (in_base) base_tsv += line;
            if (in_base || chance(rng, 0.3)) extended_tsv += line;
        }
        base_tsv += "zzz-base\tContrast\n"; // keep both lexicons non-empty
        extended_tsv += "zzz-base\tContrast\n";

        const auto base = revcue::CueLexicon::from_string(base_tsv);
        const auto extended = revcue::CueLexicon::from_string(extended_tsv);
        const std::size_t k = 1 + pick_index(rng, 80);
        const auto rate_base = revcue::inclusion_rate(ranked, base, k);
        const auto rate_extended = revcue::inclusion_rate(ranked, extended, k);
        if (rate_extended.rate < rate_base.rate) {
            result.fail(c, "rate decreased when the lexicon grew");
        }
    }
    result.cases = cases;
    return result;
}

// lint is a pure function of (message, lexicon version, config).
inline PropertyResult prop_lint_determinism(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"lint determinism"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const revcue::Comment comment{"c", "p", random_message(rng)};
        const auto& lexicon = revcue::CueLexicon::builtin();
        const revcue::LintConfig config;
        const std::string a = revcue::lint_report_to_json(revcue::lint(comment, lexicon, config));
        const std::string b = revcue::lint_report_to_json(revcue::lint(comment, lexicon, config));
        if (a != b) result.fail(c, "lint produced different reports for the same input");
    }
    result.cases = cases;
    return result;
}

// Appending unrelated text never removes findings or clears the flag.
inline PropertyResult prop_lint_monotone_append(std::size_t cases, std::uint64_t seed) {
    PropertyResult result{"monotone lint detection"};
    Rng rng(seed);
    // Suffix words that are not cues, not modals, and trigger no detector.
    static const std::vector<std::string> neutral = {"banana", "apple", "kiwi", "melon",
                                                     "grape"};
    for (std::size_t c = 0; c < cases; ++c) {
        const std::string base = random_message(rng);
        std::string suffix;
        const std::size_t extra = 1 + pick_index(rng, 4);
        for (std::size_t i = 0; i < extra; ++i) {
            suffix += ' ';
            suffix += neutral[pick_index(rng, neutral.size())];
        }
        const auto& lexicon = revcue::CueLexicon::builtin();
        revcue::LintConfig config;
        // With line collapse on, appended text can un-collapse the final
        // line, which may shift code tokens; findings must still survive,
        // but the flag is only guaranteed monotone without collapsing.
        config.preprocess.collapse_code_lines = chance(rng, 0.5);
        const auto before = revcue::lint(revcue::Comment{"c", "p", base}, lexicon, config);
        const auto after =
            revcue::lint(revcue::Comment{"c", "p", base + suffix}, lexicon, config);

        if (!config.preprocess.collapse_code_lines && before.rationale_flag &&
            !after.rationale_flag) {
            result.fail(c, "rationale flag cleared by appended text");
            continue;
        }
        // Every cue/modal finding survives with the same span.
        std::size_t matched = 0;
        for (const auto& finding : before.findings) {
            if (finding.rule == "missing-rationale") continue;
            bool found = false;
            for (const auto& later : after.findings) {
                if (later.rule == finding.rule && later.span == finding.span &&
                    later.message == finding.message) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                result.fail(c, "finding lost after append: " + finding.message);
                break;
            }
            ++matched;
        }
        (void)matched;
    }
    result.cases = cases;
    return result;
}

inline std::vector<PropertyResult> run_all_properties(std::size_t cases, std::uint64_t seed) {
    return {
        prop_oracle_equivalence(cases, seed + 1),
        prop_preprocess_idempotent(cases, seed + 2),
        prop_placeholder_soundness(cases, seed + 3),
        prop_no_stopword_loss(cases, seed + 4),
        prop_additivity_partition(cases, seed + 5),
        prop_filter_soundness(cases, seed + 6),
        prop_window_monotonicity(cases, seed + 7),
        prop_monotone_lexicon_growth(cases, seed + 8),
        prop_lint_determinism(cases, seed + 9),
        prop_lint_monotone_append(cases, seed + 10),
    };
}

} // namespace testsupport
