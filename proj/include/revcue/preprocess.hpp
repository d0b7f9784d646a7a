#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace revcue {

// Placeholder tokens substituted for non-natural-language spans. Word tokens
// are lowercased, so the uppercase placeholders never collide with them.
inline constexpr const char* kCodeToken = "CODETOK";
inline constexpr const char* kUrlToken = "URLTOK";
inline constexpr const char* kPathToken = "PATHTOK";

bool is_placeholder(std::string_view token);

/// One review message, the raw input unit.
struct Comment {
    std::string id;
    std::string project;
    std::string message;
};

/// Ordered lowercase tokens of a preprocessed comment. Placeholders keep
/// their fixed uppercase spelling. `sentence_breaks` holds indices i meaning
/// "a sentence boundary lies between tokens i-1 and i"; populated only when
/// PreprocessConfig::sentence_boundaries is on.
struct TokenStream {
    std::string comment_id;
    std::string project;
    std::vector<std::string> tokens;
    std::vector<std::size_t> sentence_breaks;

    bool operator==(const TokenStream&) const = default;
};

struct CodeDetectConfig {
    bool backticks = true;     // `span` -> CODETOK
    bool snake_case = true;    // underscore touching a letter
    bool camel_case = true;    // lowercase head, >= 2 capitalized humps
    bool call_parens = true;   // identifier immediately followed by (...)
    bool dotted_chain = true;  // ident.ident.ident (>= 2 dots)
    // Language literals replaced wherever they occur; matched case-insensitively
    // so the replacement survives lowercasing.
    std::vector<std::string> literals = {"None", "null", "true", "false", "nullptr"};

    bool operator==(const CodeDetectConfig&) const = default;
};

struct PreprocessConfig {
    // A line is dropped when its leading token is `<key>:` (case-insensitive).
    std::vector<std::string> signature_keys = {
        "Author-Id", "Signed-off-by", "Change-Id",
        "Reviewed-by", "Tested-by", "Reviewed-on",
    };
    // Also drop whole-line review votes such as "Verified+1" or
    // "Code-Review+2" (capitalized label, +/- score, nothing else).
    bool strip_vote_lines = true;

    std::vector<std::string> uri_schemes = {"http", "https", "ftp", "ssh", "git"};
    CodeDetectConfig code;

    // Replace a line whose tokens are mostly CODETOK with a single CODETOK.
    bool collapse_code_lines = true;
    double code_line_threshold = 0.8;

    // Record sentence boundaries (after ., ! or ?) so collocation windows can
    // stop at them. Off by default: windows span the whole comment.
    bool sentence_boundaries = false;

    bool operator==(const PreprocessConfig&) const = default;
};

/// Removes signature/footer lines; every other line is preserved verbatim.
std::string strip_signatures(std::string_view message, const PreprocessConfig& config);

/// Replaces URIs, then filesystem paths, then source-code spans with their
/// placeholder tokens. Placeholders are emitted whitespace-delimited and are
/// never re-substituted.
std::string substitute_placeholders(std::string_view message, const PreprocessConfig& config);

/// Whitespace tokenization: strips leading/trailing ASCII punctuation from
/// word tokens (internal apostrophes/hyphens survive), lowercases word
/// tokens, passes placeholders through, drops empties. No stop-word removal,
/// no stemming.
TokenStream tokenize(std::string_view message, const PreprocessConfig& config);

/// strip_signatures -> substitute_placeholders -> tokenize. Malformed UTF-8
/// bytes are replaced with U+FFFD and reported into `warnings` when given.
TokenStream preprocess(const Comment& comment, const PreprocessConfig& config,
                       std::vector<std::string>* warnings = nullptr);

/// Renders a TokenStream back to preprocessable text, one token per line;
/// recorded sentence breaks become bare "." lines. preprocess(render_tokens(s))
/// reproduces s exactly.
std::string render_tokens(const TokenStream& stream);

// Detector predicates, exposed for the placeholder-soundness checks.
bool looks_like_uri(std::string_view token, const PreprocessConfig& config);
bool looks_like_path(std::string_view token);

} // namespace revcue
