#include "revcue/preprocess.hpp"

#include <algorithm>
#include <string>

namespace revcue {

namespace {

constexpr std::size_t npos = std::string_view::npos;

bool ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool ascii_alnum(char c) { return ascii_alpha(c) || ascii_digit(c); }
bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool word_char(char c) { return ascii_alnum(c) || c == '_'; }

char ascii_lower(char c) { return ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
    }
    return true;
}

std::string_view trim_view(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && ascii_space(s[b])) ++b;
    while (e > b && ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

// "Verified+1" / "Code-Review-2": capitalized label, score, nothing else.
bool is_vote_line(std::string_view trimmed) {
    const std::size_t sep = trimmed.find_last_of("+-");
    if (sep == std::string_view::npos || sep == 0 || sep + 1 >= trimmed.size()) return false;
    if (!ascii_upper(trimmed[0])) return false;
    for (std::size_t i = 1; i < sep; ++i) {
        if (!ascii_alpha(trimmed[i]) && trimmed[i] != '-') return false;
    }
    for (std::size_t i = sep + 1; i < trimmed.size(); ++i) {
        if (!ascii_digit(trimmed[i])) return false;
    }
    return true;
}

bool path_char(char c) {
    return ascii_alnum(c) || c == '_' || c == '.' || c == '-' || c == '~' || c == '+' ||
           c == '%' || c == '/';
}

// Trailing sentence punctuation never belongs to a detected span.
std::string_view trim_span_tail(std::string_view run) {
    while (!run.empty()) {
        const char c = run.back();
        if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?') {
            run.remove_suffix(1);
        } else {
            break;
        }
    }
    return run;
}

bool has_file_extension(std::string_view run) {
    const std::size_t dot = run.rfind('.');
    if (dot == npos || dot + 1 >= run.size()) return false;
    const std::string_view ext = run.substr(dot + 1);
    if (ext.size() > 6) return false;
    return std::all_of(ext.begin(), ext.end(), ascii_alnum) && ext.find('/') == npos;
}

// A path span: contains '/', at least one alphanumeric, and either two or
// more separators or a file extension on the last segment.
std::size_t match_path_run(std::string_view run) {
    run = trim_span_tail(run);
    if (run.find('/') == npos) return 0;
    if (std::none_of(run.begin(), run.end(), ascii_alnum)) return 0;
    const auto slashes = static_cast<std::size_t>(std::count(run.begin(), run.end(), '/'));
    if (slashes >= 2 || has_file_extension(run)) return run.size();
    return 0;
}

struct Matcher {
    const PreprocessConfig& cfg;
    std::vector<std::string> lowered_literals;

    explicit Matcher(const PreprocessConfig& config) : cfg(config) {
        lowered_literals.reserve(cfg.code.literals.size());
        for (const auto& lit : cfg.code.literals) lowered_literals.push_back(lower_copy(lit));
    }

    std::size_t match_uri(std::string_view text, std::size_t i) const {
        for (const auto& scheme : cfg.uri_schemes) {
            const std::size_t head = scheme.size() + 3;
            if (i + head > text.size()) continue;
            if (!iequals(text.substr(i, scheme.size()), scheme)) continue;
            if (text.substr(i + scheme.size(), 3) != "://") continue;
            std::size_t end = i + head;
            if (end >= text.size() || ascii_space(text[end])) continue; // bare scheme
            while (end < text.size() && !ascii_space(text[end])) ++end;
            return end;
        }
        return 0;
    }

    std::size_t match_path(std::string_view text, std::size_t i) const {
        std::size_t end = i;
        while (end < text.size() && path_char(text[end])) ++end;
        const std::size_t len = match_path_run(text.substr(i, end - i));
        return len ? i + len : 0;
    }

    std::size_t match_backtick(std::string_view text, std::size_t i) const {
        if (!cfg.code.backticks || text[i] != '`') return 0;
        std::size_t j = i + 1;
        while (j < text.size() && text[j] != '`' && text[j] != '\n') ++j;
        if (j >= text.size() || text[j] != '`' || j == i + 1) return 0;
        return j + 1;
    }

    // identifier (dots/colons allowed inside) immediately followed by a
    // balanced, whitespace-free parenthesized span.
    std::size_t match_call(std::string_view text, std::size_t i) const {
        if (!cfg.code.call_parens) return 0;
        if (!ascii_alpha(text[i]) && text[i] != '_') return 0;
        std::size_t j = i;
        while (j < text.size() &&
               (word_char(text[j]) || text[j] == '.' || text[j] == ':')) {
            ++j;
        }
        if (j >= text.size() || text[j] != '(') return 0;
        int depth = 0;
        const std::size_t limit = std::min(text.size(), j + 200);
        for (std::size_t k = j; k < limit; ++k) {
            const char c = text[k];
            if (ascii_space(c)) return 0;
            if (c == '(') ++depth;
            if (c == ')') {
                --depth;
                if (depth == 0) return k + 1;
            }
        }
        return 0;
    }

    // ident.ident.ident with at least two dots and nonempty segments.
    std::size_t match_dotted(std::string_view text, std::size_t i) const {
        if (!cfg.code.dotted_chain || !word_char(text[i])) return 0;
        std::size_t end = i;
        while (end < text.size() && (word_char(text[end]) || text[end] == '.')) ++end;
        std::string_view run = text.substr(i, end - i);
        while (!run.empty() && run.back() == '.') run.remove_suffix(1);
        if (run.empty()) return 0;
        std::size_t dots = 0;
        bool segment_empty = true;
        for (const char c : run) {
            if (c == '.') {
                if (segment_empty) return 0;
                ++dots;
                segment_empty = true;
            } else {
                segment_empty = false;
            }
        }
        if (segment_empty || dots < 2) return 0;
        return i + run.size();
    }

    bool is_snake(std::string_view word) const {
        if (!cfg.code.snake_case || word.find('_') == npos) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (word[i] != '_') continue;
            if ((i > 0 && ascii_alpha(word[i - 1])) ||
                (i + 1 < word.size() && ascii_alpha(word[i + 1]))) {
                return true;
            }
        }
        return false;
    }

    bool is_camel(std::string_view word) const {
        if (!cfg.code.camel_case || word.empty()) return false;
        if (!(word[0] >= 'a' && word[0] <= 'z')) return false;
        std::size_t humps = 0;
        for (const char c : word) {
            if (!ascii_alnum(c)) return false;
            if (ascii_upper(c)) ++humps;
        }
        return humps >= 2;
    }

    bool is_literal(std::string_view word) const {
        const std::string lowered = lower_copy(word);
        return std::find(lowered_literals.begin(), lowered_literals.end(), lowered) !=
               lowered_literals.end();
    }
};

std::string collapse_code_lines(std::string_view text, const PreprocessConfig& cfg) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);

        std::size_t tokens = 0, code = 0;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && ascii_space(line[i])) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !ascii_space(line[j])) ++j;
            ++tokens;
            if (line.substr(i, j - i) == kCodeToken) ++code;
            i = j;
        }

        if (tokens > 0 && static_cast<double>(code) >=
                              cfg.code_line_threshold * static_cast<double>(tokens)) {
            out.append(kCodeToken);
        } else {
            out.append(line);
        }
        if (eol == text.size()) break;
        out.push_back('\n');
        pos = eol + 1;
    }
    return out;
}

// Replaces invalid UTF-8 sequences with U+FFFD, counting replacements.
std::string sanitize_utf8(std::string_view in, std::size_t* replaced) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(in.size());
    std::size_t bad = 0;
    std::size_t i = 0;
    const auto cont = [&](std::size_t k) {
        return i + k < in.size() &&
               (static_cast<unsigned char>(in[i + k]) & 0xC0u) == 0x80u;
    };
    while (i < in.size()) {
        const auto b = static_cast<unsigned char>(in[i]);
        std::size_t len = 0;
        if (b < 0x80u) {
            len = 1;
        } else if (b >= 0xC2u && b <= 0xDFu && cont(1)) {
            len = 2;
        } else if (b == 0xE0u && cont(1) && cont(2) &&
                   static_cast<unsigned char>(in[i + 1]) >= 0xA0u) {
            len = 3;
        } else if (b >= 0xE1u && b <= 0xECu && cont(1) && cont(2)) {
            len = 3;
        } else if (b == 0xEDu && cont(1) && cont(2) &&
                   static_cast<unsigned char>(in[i + 1]) <= 0x9Fu) {
            len = 3;
        } else if ((b == 0xEEu || b == 0xEFu) && cont(1) && cont(2)) {
            len = 3;
        } else if (b == 0xF0u && cont(1) && cont(2) && cont(3) &&
                   static_cast<unsigned char>(in[i + 1]) >= 0x90u) {
            len = 4;
        } else if (b >= 0xF1u && b <= 0xF3u && cont(1) && cont(2) && cont(3)) {
            len = 4;
        } else if (b == 0xF4u && cont(1) && cont(2) && cont(3) &&
                   static_cast<unsigned char>(in[i + 1]) <= 0x8Fu) {
            len = 4;
        }
        if (len == 0) {
            out.append(kReplacement);
            ++bad;
            ++i;
        } else {
            out.append(in.substr(i, len));
            i += len;
        }
    }
    if (replaced) *replaced = bad;
    return out;
}

} // namespace

bool is_placeholder(std::string_view token) {
    return token == kCodeToken || token == kUrlToken || token == kPathToken;
}

std::string strip_signatures(std::string_view message, const PreprocessConfig& config) {
    std::string out;
    out.reserve(message.size());
    bool first = true;
    std::size_t pos = 0;
    while (pos <= message.size()) {
        const std::size_t eol = std::min(message.find('\n', pos), message.size());
        const std::string_view line = message.substr(pos, eol - pos);
        const std::string_view trimmed = trim_view(line);

        bool drop = false;
        if (!trimmed.empty()) {
            std::size_t sp = 0;
            while (sp < trimmed.size() && !ascii_space(trimmed[sp])) ++sp;
            const std::string_view lead = trimmed.substr(0, sp);
            if (!lead.empty() && lead.back() == ':') {
                const std::string_view key = lead.substr(0, lead.size() - 1);
                for (const auto& k : config.signature_keys) {
                    if (iequals(key, k)) {
                        drop = true;
                        break;
                    }
                }
            }
            if (!drop && config.strip_vote_lines && is_vote_line(trimmed)) drop = true;
        }

        if (!drop) {
            if (!first) out.push_back('\n');
            out.append(line);
            first = false;
        }
        if (eol == message.size()) break;
        pos = eol + 1;
    }
    return out;
}

std::string substitute_placeholders(std::string_view message, const PreprocessConfig& config) {
    const Matcher m(config);
    std::string out;
    out.reserve(message.size() + 16);
    std::size_t i = 0;
    const std::size_t n = message.size();

    const auto emit_placeholder = [&](std::string_view token, std::size_t continue_at) {
        if (!out.empty() && !ascii_space(out.back())) out.push_back(' ');
        out.append(token);
        i = continue_at;
        if (i < n && !ascii_space(message[i])) out.push_back(' ');
    };

    while (i < n) {
        const char c = message[i];
        if (ascii_space(c)) {
            out.push_back(c);
            ++i;
            continue;
        }
        if (const std::size_t end = m.match_uri(message, i)) {
            emit_placeholder(kUrlToken, end);
            continue;
        }
        if (const std::size_t end = m.match_backtick(message, i)) {
            emit_placeholder(kCodeToken, end);
            continue;
        }
        if (const std::size_t end = m.match_path(message, i)) {
            emit_placeholder(kPathToken, end);
            continue;
        }
        if (const std::size_t end = m.match_call(message, i)) {
            emit_placeholder(kCodeToken, end);
            continue;
        }
        if (const std::size_t end = m.match_dotted(message, i)) {
            emit_placeholder(kCodeToken, end);
            continue;
        }
        if (word_char(c)) {
            std::size_t end = i;
            while (end < n && word_char(message[end])) ++end;
            const std::string_view word = message.substr(i, end - i);
            if (m.is_snake(word) || m.is_camel(word) || m.is_literal(word)) {
                emit_placeholder(kCodeToken, end);
            } else {
                out.append(word);
                i = end;
            }
            continue;
        }
        out.push_back(c);
        ++i;
    }

    if (config.collapse_code_lines) return collapse_code_lines(out, config);
    return out;
}

TokenStream tokenize(std::string_view message, const PreprocessConfig& config) {
    TokenStream stream;
    bool pending_break = false;
    std::size_t i = 0;
    const std::size_t n = message.size();
    while (i < n) {
        while (i < n && ascii_space(message[i])) ++i;
        if (i >= n) break;
        std::size_t j = i;
        while (j < n && !ascii_space(message[j])) ++j;
        std::string_view chunk = message.substr(i, j - i);
        const char tail = chunk.back();
        i = j;

        std::string_view core = chunk;
        // ASCII punctuation is stripped from the ends only; multibyte UTF-8
        // sequences count as letters.
        while (!core.empty() && static_cast<unsigned char>(core.front()) < 0x80u &&
               !ascii_alnum(core.front())) {
            core.remove_prefix(1);
        }
        while (!core.empty() && static_cast<unsigned char>(core.back()) < 0x80u &&
               !ascii_alnum(core.back())) {
            core.remove_suffix(1);
        }

        if (!core.empty()) {
            if (config.sentence_boundaries && pending_break && !stream.tokens.empty()) {
                stream.sentence_breaks.push_back(stream.tokens.size());
            }
            pending_break = false;
            if (is_placeholder(core)) {
                stream.tokens.emplace_back(core);
            } else {
                stream.tokens.push_back(lower_copy(core));
            }
        }
        if (config.sentence_boundaries && (tail == '.' || tail == '!' || tail == '?')) {
            pending_break = true;
        }
    }
    return stream;
}

TokenStream preprocess(const Comment& comment, const PreprocessConfig& config,
                       std::vector<std::string>* warnings) {
    std::size_t replaced = 0;
    const std::string clean = sanitize_utf8(comment.message, &replaced);
    if (replaced > 0 && warnings) {
        warnings->push_back("comment " + comment.id + ": replaced " + std::to_string(replaced) +
                            " invalid UTF-8 byte(s)");
    }
    const std::string stripped = strip_signatures(clean, config);
    const std::string substituted = substitute_placeholders(stripped, config);
    TokenStream stream = tokenize(substituted, config);
    stream.comment_id = comment.id;
    stream.project = comment.project;
    return stream;
}

std::string render_tokens(const TokenStream& stream) {
    std::string out;
    std::size_t next_break = 0;
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        // A bare "." line recreates the sentence break on re-preprocessing.
        if (next_break < stream.sentence_breaks.size() &&
            stream.sentence_breaks[next_break] == i) {
            if (!out.empty()) out.push_back('\n');
            out.push_back('.');
            ++next_break;
        }
        if (!out.empty()) out.push_back('\n');
        out.append(stream.tokens[i]);
    }
    return out;
}

bool looks_like_uri(std::string_view token, const PreprocessConfig& config) {
    const Matcher m(config);
    return !token.empty() && m.match_uri(token, 0) != 0;
}

bool looks_like_path(std::string_view token) {
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (!path_char(token[i])) continue;
        std::size_t end = i;
        while (end < token.size() && path_char(token[end])) ++end;
        if (match_path_run(token.substr(i, end - i)) > 0) return true;
        i = end;
    }
    return false;
}

} // namespace revcue
