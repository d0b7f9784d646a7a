#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "revcue/preprocess.hpp"

namespace revcue {

enum class CorpusFormat { Jsonl, Csv };

/// Picks the format from a file extension (.csv -> Csv, anything else Jsonl).
CorpusFormat corpus_format_from_path(const std::string& path);
std::optional<CorpusFormat> parse_corpus_format(const std::string& name);

/// Streaming corpus reader.
///
/// JSONL: one object per line with string fields id, project, message; other
/// fields are ignored. CSV: RFC-4180 with header `id,project,message`
/// (quoted fields may span lines). Malformed records are skipped and
/// counted; duplicate ids count as malformed. finish() enforces the
/// corpus-quality gate: more than 10% malformed records aborts.
class CommentReader {
public:
    CommentReader(const std::string& path, CorpusFormat format);

    /// Next well-formed comment. False at end of file.
    bool next(Comment& out);

    /// Validates the malformed-record ratio; throws CorpusQualityError.
    /// Call after the last next().
    void finish() const;

    std::size_t accepted() const { return accepted_; }
    std::size_t malformed() const { return malformed_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::string& path() const { return path_; }

private:
    bool next_jsonl(Comment& out);
    bool next_csv(Comment& out);
    bool read_csv_record(std::vector<std::string>& fields);
    bool validate(Comment& candidate);

    std::string path_;
    CorpusFormat format_;
    std::ifstream in_;
    std::size_t line_ = 0;
    std::size_t accepted_ = 0;
    std::size_t malformed_ = 0;
    bool csv_header_checked_ = false;
    std::unordered_set<std::string> seen_ids_;
    std::vector<std::string> warnings_;
};

/// Reads a whole corpus, applying the quality gate.
std::vector<Comment> read_corpus(const std::string& path, CorpusFormat format,
                                 std::vector<std::string>* warnings = nullptr);

struct ProjectEntry {
    std::string name;
    std::string source;
    std::size_t comments = 0;
};

struct CorpusManifest {
    std::vector<ProjectEntry> projects; // sorted by name
    int format_version = 1;
};

CorpusManifest build_manifest(const std::vector<Comment>& comments, const std::string& source);
std::string manifest_to_json(const CorpusManifest& manifest);

/// Writes comments as corpus JSONL (one object per line).
void write_corpus_jsonl(const std::vector<Comment>& comments, const std::string& path);

} // namespace revcue
