#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace revcue {

/// The six coherence functionalities a cue phrase can signal.
enum class CueCategory {
    Causality,
    Contrast,
    Exemplification,
    Clarification,
    Similarity,
    Hypothesis,
};

const char* to_string(CueCategory category);

/// Parses a category name (case-insensitive). Empty optional for unknown names.
std::optional<CueCategory> parse_category(std::string_view name);

struct CueEntry {
    std::string phrase;   // lowercase, single-spaced
    CueCategory category;
    bool single_word;     // true iff phrase contains no space
};

/// Immutable vocabulary of coherence cue phrases, each mapped to exactly one
/// category. Loaded once, then safe for concurrent reads.
class CueLexicon {
public:
    /// Loads a lexicon from a `phrase<TAB>category` file. `#` lines are
    /// comments; a `# version: <id>` comment names the lexicon version.
    /// Throws ParseError on malformed lines, duplicates, unknown categories,
    /// or an empty lexicon.
    static CueLexicon load(const std::string& path);

    /// Same format as load(), from an in-memory string. `source_name` is used
    /// in error messages; `fallback_version` applies when the text carries no
    /// version directive.
    static CueLexicon from_string(std::string_view text,
                                  const std::string& source_name = "<string>",
                                  const std::string& fallback_version = "unversioned");

    /// The lexicon compiled into the library (data/cue_lexicon.tsv).
    static const CueLexicon& builtin();

    /// Case-insensitive exact match on the whole phrase. No substring logic.
    std::optional<CueCategory> lookup(std::string_view word) const;

    bool contains(std::string_view phrase) const { return lookup(phrase).has_value(); }

    /// Phrases of all entries with single_word = true.
    const std::unordered_set<std::string>& single_word_set() const { return single_words_; }

    const std::vector<CueEntry>& entries() const { return entries_; }
    const std::string& version() const { return version_; }

    std::size_t size() const { return entries_.size(); }
    std::size_t single_word_count() const { return single_words_.size(); }

    /// Token count of the longest phrase; 1 for a purely single-word lexicon.
    std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

    /// Index used by the linter's longest-match scan: first token of a phrase
    /// -> entry indices, longest phrase first (ties: lexicographic).
    const std::vector<std::size_t>* entries_starting_with(std::string_view first_token) const;

    /// Tokenized form of entry i's phrase (split on single spaces).
    const std::vector<std::string>& phrase_tokens(std::size_t entry_index) const {
        return phrase_tokens_[entry_index];
    }

    const CueEntry& entry(std::size_t entry_index) const { return entries_[entry_index]; }

private:
    void add_entry(std::string phrase, CueCategory category, std::size_t line);
    void build_index();

    std::vector<CueEntry> entries_;
    std::vector<std::vector<std::string>> phrase_tokens_;
    std::unordered_map<std::string, std::size_t> by_phrase_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_first_token_;
    std::unordered_set<std::string> single_words_;
    std::size_t max_phrase_tokens_ = 1;
    std::string version_ = "unversioned";
};

} // namespace revcue
