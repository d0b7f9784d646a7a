#include "revcue/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json.hpp"

#include "csv_util.hpp"
#include "revcue/errors.hpp"

namespace revcue {

using nlohmann::json;

CorpusFormat corpus_format_from_path(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == "csv") return CorpusFormat::Csv;
    }
    return CorpusFormat::Jsonl;
}

std::optional<CorpusFormat> parse_corpus_format(const std::string& name) {
    if (name == "jsonl") return CorpusFormat::Jsonl;
    if (name == "csv") return CorpusFormat::Csv;
    return std::nullopt;
}

CommentReader::CommentReader(const std::string& path, CorpusFormat format)
    : path_(path), format_(format), in_(path, std::ios::binary) {
    if (!in_) {
        throw IoError("cannot open corpus file: " + path);
    }
    // Tolerate a UTF-8 byte-order mark.
    char bom[3] = {};
    in_.read(bom, 3);
    if (in_.gcount() != 3 || bom[0] != '\xEF' || bom[1] != '\xBB' || bom[2] != '\xBF') {
        in_.clear();
        in_.seekg(0);
    }
}

bool CommentReader::validate(Comment& candidate) {
    if (candidate.id.empty() || candidate.project.empty()) return false;
    if (!seen_ids_.insert(candidate.id).second) return false; // duplicate id
    return true;
}

bool CommentReader::next_jsonl(Comment& out) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue; // blank

        json record = json::parse(line, nullptr, false);
        Comment candidate;
        bool ok = record.is_object() && record.contains("id") && record["id"].is_string() &&
                  record.contains("project") && record["project"].is_string() &&
                  record.contains("message") && record["message"].is_string();
        if (ok) {
            candidate.id = record["id"].get<std::string>();
            candidate.project = record["project"].get<std::string>();
            candidate.message = record["message"].get<std::string>();
            ok = validate(candidate);
        }
        if (!ok) {
            ++malformed_;
            if (warnings_.size() < 50) {
                warnings_.push_back(path_ + ":" + std::to_string(line_) +
                                    ": skipped malformed record");
            }
            continue;
        }
        ++accepted_;
        out = std::move(candidate);
        return true;
    }
    return false;
}

bool CommentReader::next_csv(Comment& out) {
    std::vector<std::string> fields;
    std::size_t consumed = 0;
    if (!csv_header_checked_) {
        if (!csv::read_record(in_, fields, consumed)) {
            throw ParseError(path_ + ": missing CSV header");
        }
        line_ += consumed;
        if (fields != std::vector<std::string>{"id", "project", "message"}) {
            throw ParseError(path_ + ": CSV header must be id,project,message", 1);
        }
        csv_header_checked_ = true;
    }
    while (csv::read_record(in_, fields, consumed)) {
        const std::size_t record_line = line_ + 1;
        line_ += consumed;
        if (fields.size() == 1 && fields[0].empty()) continue; // blank line

        Comment candidate;
        bool ok = fields.size() == 3;
        if (ok) {
            candidate.id = std::move(fields[0]);
            candidate.project = std::move(fields[1]);
            candidate.message = std::move(fields[2]);
            ok = validate(candidate);
        }
        if (!ok) {
            ++malformed_;
            if (warnings_.size() < 50) {
                warnings_.push_back(path_ + ":" + std::to_string(record_line) +
                                    ": skipped malformed record");
            }
            continue;
        }
        ++accepted_;
        out = std::move(candidate);
        return true;
    }
    return false;
}

bool CommentReader::next(Comment& out) {
    return format_ == CorpusFormat::Jsonl ? next_jsonl(out) : next_csv(out);
}

void CommentReader::finish() const {
    const std::size_t total = accepted_ + malformed_;
    if (total > 0 && malformed_ * 10 > total) {
        throw CorpusQualityError(path_ + ": " + std::to_string(malformed_) + " of " +
                                 std::to_string(total) +
                                 " records malformed (more than 10%)");
    }
}

std::vector<Comment> read_corpus(const std::string& path, CorpusFormat format,
                                 std::vector<std::string>* warnings) {
    CommentReader reader(path, format);
    std::vector<Comment> comments;
    Comment comment;
    while (reader.next(comment)) comments.push_back(std::move(comment));
    reader.finish();
    if (warnings) {
        warnings->insert(warnings->end(), reader.warnings().begin(), reader.warnings().end());
    }
    return comments;
}

CorpusManifest build_manifest(const std::vector<Comment>& comments, const std::string& source) {
    std::map<std::string, std::size_t> counts;
    for (const auto& comment : comments) ++counts[comment.project];
    CorpusManifest manifest;
    for (const auto& [name, count] : counts) {
        manifest.projects.push_back(ProjectEntry{name, source, count});
    }
    return manifest;
}

std::string manifest_to_json(const CorpusManifest& manifest) {
    json j;
    j["format_version"] = manifest.format_version;
    json projects = json::array();
    for (const auto& entry : manifest.projects) {
        projects.push_back({{"name", entry.name},
                            {"source", entry.source},
                            {"comments", entry.comments}});
    }
    j["projects"] = std::move(projects);
    return j.dump(2) + "\n";
}

void write_corpus_jsonl(const std::vector<Comment>& comments, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& comment : comments) {
        json record;
        record["id"] = comment.id;
        record["project"] = comment.project;
        record["message"] = comment.message;
        out << record.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace revcue
