#include "revcue/cue_lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "revcue/errors.hpp"

namespace revcue {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Lowercase, trim, collapse internal whitespace runs to single spaces.
std::string normalize_phrase(std::string_view raw) {
    std::string lowered = to_lower(trim(raw));
    std::string out;
    out.reserve(lowered.size());
    bool in_space = false;
    for (char c : lowered) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

} // namespace

const char* to_string(CueCategory category) {
    switch (category) {
    case CueCategory::Causality: return "Causality";
    case CueCategory::Contrast: return "Contrast";
    case CueCategory::Exemplification: return "Exemplification";
    case CueCategory::Clarification: return "Clarification";
    case CueCategory::Similarity: return "Similarity";
    case CueCategory::Hypothesis: return "Hypothesis";
    }
    return "?";
}

std::optional<CueCategory> parse_category(std::string_view name) {
    const std::string lowered = to_lower(trim(name));
    if (lowered == "causality") return CueCategory::Causality;
    if (lowered == "contrast") return CueCategory::Contrast;
    if (lowered == "exemplification") return CueCategory::Exemplification;
    if (lowered == "clarification") return CueCategory::Clarification;
    if (lowered == "similarity") return CueCategory::Similarity;
    if (lowered == "hypothesis") return CueCategory::Hypothesis;
    return std::nullopt;
}

void CueLexicon::add_entry(std::string phrase, CueCategory category, std::size_t line) {
    if (by_phrase_.contains(phrase)) {
        throw ParseError("duplicate phrase \"" + phrase + "\"", line);
    }
    const bool single = phrase.find(' ') == std::string::npos;
    by_phrase_.emplace(phrase, entries_.size());
    if (single) single_words_.insert(phrase);
    entries_.push_back(CueEntry{std::move(phrase), category, single});
}

void CueLexicon::build_index() {
    phrase_tokens_.clear();
    phrase_tokens_.reserve(entries_.size());
    by_first_token_.clear();
    max_phrase_tokens_ = 1;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        std::vector<std::string> toks;
        std::istringstream ss(entries_[i].phrase);
        std::string t;
        while (ss >> t) toks.push_back(t);
        max_phrase_tokens_ = std::max(max_phrase_tokens_, toks.size());
        by_first_token_[toks.front()].push_back(i);
        phrase_tokens_.push_back(std::move(toks));
    }
    // Longest phrase first so the matcher's first hit is the greedy one.
    for (auto& [first, ids] : by_first_token_) {
        std::sort(ids.begin(), ids.end(), [this](std::size_t a, std::size_t b) {
            if (phrase_tokens_[a].size() != phrase_tokens_[b].size())
                return phrase_tokens_[a].size() > phrase_tokens_[b].size();
            return entries_[a].phrase < entries_[b].phrase;
        });
    }
}

CueLexicon CueLexicon::from_string(std::string_view text, const std::string& source_name,
                                   const std::string& fallback_version) {
    CueLexicon lex;
    lex.version_ = fallback_version;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool version_seen = false;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            static constexpr std::string_view kVersionKey = "# version:";
            if (!version_seen && trimmed.size() > kVersionKey.size() &&
                to_lower(trimmed.substr(0, kVersionKey.size())) == kVersionKey) {
                lex.version_ = trim(trimmed.substr(kVersionKey.size()));
                version_seen = true;
            }
            continue;
        }

        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(source_name + ": expected phrase<TAB>category", line_no);
        }
        const std::string phrase = normalize_phrase(line.substr(0, tab));
        if (phrase.empty()) {
            throw ParseError(source_name + ": empty phrase", line_no);
        }
        const auto category = parse_category(line.substr(tab + 1));
        if (!category) {
            throw ParseError(source_name + ": unknown category \"" + trim(line.substr(tab + 1)) +
                                 "\"",
                             line_no);
        }
        lex.add_entry(phrase, *category, line_no);
    }

    if (lex.entries_.empty()) {
        throw ParseError(source_name + ": empty lexicon");
    }
    lex.build_index();
    return lex;
}

CueLexicon CueLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open lexicon file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

namespace detail {
// Defined in the generated default_lexicon.cpp.
const char* default_lexicon_text();
} // namespace detail

const CueLexicon& CueLexicon::builtin() {
    static const CueLexicon lex =
        from_string(detail::default_lexicon_text(), "<builtin>", "builtin");
    return lex;
}

std::optional<CueCategory> CueLexicon::lookup(std::string_view word) const {
    const auto it = by_phrase_.find(to_lower(word));
    if (it == by_phrase_.end()) return std::nullopt;
    return entries_[it->second].category;
}

const std::vector<std::size_t>* CueLexicon::entries_starting_with(
    std::string_view first_token) const {
    const auto it = by_first_token_.find(std::string(first_token));
    if (it == by_first_token_.end()) return nullptr;
    return &it->second;
}

} // namespace revcue
