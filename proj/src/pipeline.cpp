#include "revcue/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"

#include "csv_util.hpp"
#include "revcue/errors.hpp"

namespace revcue {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (const char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

json preprocess_to_json(const PreprocessConfig& config) {
    json j;
    j["signature_keys"] = config.signature_keys;
    j["strip_vote_lines"] = config.strip_vote_lines;
    j["uri_schemes"] = config.uri_schemes;
    j["code_detection"] = {{"backticks", config.code.backticks},
                           {"snake_case", config.code.snake_case},
                           {"camel_case", config.code.camel_case},
                           {"call_parens", config.code.call_parens},
                           {"dotted_chain", config.code.dotted_chain},
                           {"literals", config.code.literals}};
    j["collapse_code_lines"] = config.collapse_code_lines;
    j["code_line_threshold"] = config.code_line_threshold;
    j["sentence_boundaries"] = config.sentence_boundaries;
    return j;
}

void write_text(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::string table_csv(const CollocationTable& table) {
    // Full table in rank order (no frequency filter).
    const RankedCollocations full = rank(table, 0);
    std::string out = "word,count\n";
    for (const auto& [word, count] : full.ranked) {
        out += csv::escape(word);
        out.push_back(',');
        out += std::to_string(count);
        out.push_back('\n');
    }
    return out;
}

std::string table_json(const CollocationTable& table, const RankedCollocations& ranked) {
    json j;
    j["project"] = table.project;
    j["config_fingerprint"] = table.config_fingerprint;
    j["min_frequency"] = ranked.min_frequency;
    j["total_pairs"] = table.total_pairs;
    j["excluded_pairs"] = table.excluded_pairs;
    json words = json::array();
    for (const auto& [word, count] : ranked.ranked) {
        words.push_back({{"word", word}, {"count", count}});
    }
    j["ranked"] = std::move(words);
    return j.dump(2) + "\n";
}

std::string ranked_csv(const RankedCollocations& ranked) {
    std::string out = "rank,word,count\n";
    for (std::size_t i = 0; i < ranked.ranked.size(); ++i) {
        out += std::to_string(i + 1);
        out.push_back(',');
        out += csv::escape(ranked.ranked[i].first);
        out.push_back(',');
        out += std::to_string(ranked.ranked[i].second);
        out.push_back('\n');
    }
    return out;
}

struct WorkerOutput {
    std::map<std::string, CollocationTable> tables;
    std::map<std::string, std::size_t> comment_counts;
    std::vector<std::string> warnings;
};

void process_range(const RunConfig& config, const std::vector<Comment>& comments,
                   std::size_t begin, std::size_t end, WorkerOutput& out) {
    for (std::size_t i = begin; i < end; ++i) {
        const Comment& comment = comments[i];
        const TokenStream stream = preprocess(comment, config.preprocess, &out.warnings);
        auto [it, inserted] = out.tables.try_emplace(comment.project);
        if (inserted) {
            it->second.project = comment.project;
            it->second.config_fingerprint = collocation_fingerprint(config.collocation);
        }
        add_stream(it->second, stream, config.collocation);
        ++out.comment_counts[comment.project];
    }
}

} // namespace

std::string run_config_to_json(const RunConfig& config) {
    json j;
    j["lexicon"] = config.lexicon_path.empty() ? "builtin" : config.lexicon_path;
    j["preprocess"] = preprocess_to_json(config.preprocess);
    j["collocation"] = {{"window", config.collocation.window},
                        {"excluded_articles", config.collocation.excluded_articles},
                        {"dedup_per_comment", config.collocation.dedup_per_comment}};
    j["min_frequency"] = config.min_frequency;
    j["ks"] = config.ks;
    j["intersection_k"] = config.intersection_k;
    // Fixed behavior, stated explicitly: tokens are never stemmed and stop
    // words are never removed.
    j["stemming"] = "none";
    j["stop_word_removal"] = false;
    return j.dump(2) + "\n";
}

std::string config_fingerprint(const RunConfig& config) {
    std::string fp = "window=" + std::to_string(config.collocation.window) +
                     ";min_frequency=" + std::to_string(config.min_frequency) + ";ks=";
    for (std::size_t i = 0; i < config.ks.size(); ++i) {
        if (i) fp.push_back(',');
        fp += std::to_string(config.ks[i]);
    }
    fp += ";exclude=";
    for (std::size_t i = 0; i < config.collocation.excluded_articles.size(); ++i) {
        if (i) fp.push_back(',');
        fp += config.collocation.excluded_articles[i];
    }
    fp += ";stemming=none;stop_words=retained;cfg=" + hex64(fnv1a64(run_config_to_json(config)));
    return fp;
}

std::map<std::string, std::string> project_directories(const std::vector<std::string>& projects) {
    std::vector<std::string> sorted = projects;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::map<std::string, std::string> out;
    std::set<std::string> taken;
    for (const auto& name : sorted) {
        std::string dir;
        for (const char c : name) {
            const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
            dir.push_back(safe ? c : '_');
        }
        if (dir.empty()) dir = "project";
        std::string candidate = dir;
        for (int suffix = 2; !taken.insert(candidate).second; ++suffix) {
            candidate = dir + "-" + std::to_string(suffix);
        }
        out.emplace(name, candidate);
    }
    return out;
}

RunResult analyze_corpus(const RunConfig& config, const std::vector<Comment>& comments,
                         const CueLexicon& lexicon) {
    unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, 64);
    if (comments.size() < 2 * threads) threads = 1;

    std::vector<WorkerOutput> outputs(threads);
    if (threads == 1) {
        process_range(config, comments, 0, comments.size(), outputs[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::size_t chunk = (comments.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(comments.size(), t * chunk);
            const std::size_t end = std::min(comments.size(), begin + chunk);
            pool.emplace_back(process_range, std::cref(config), std::cref(comments), begin, end,
                              std::ref(outputs[t]));
        }
        for (auto& th : pool) th.join();
    }

    RunResult result;
    std::map<std::string, CollocationTable> tables;
    std::map<std::string, std::size_t> counts;
    for (auto& output : outputs) {
        for (auto& [project, table] : output.tables) {
            auto [it, inserted] = tables.try_emplace(project, std::move(table));
            if (!inserted) merge_tables(it->second, table);
        }
        for (const auto& [project, n] : output.comment_counts) counts[project] += n;
        result.warnings.insert(result.warnings.end(), output.warnings.begin(),
                               output.warnings.end());
    }

    std::vector<std::string> names;
    for (const auto& [project, table] : tables) names.push_back(project);
    const auto directories = project_directories(names);

    std::vector<RankedCollocations> rankings;
    for (auto& [project, table] : tables) {
        ProjectResult pr;
        pr.project = project;
        pr.directory = directories.at(project);
        pr.comments = counts[project];
        pr.ranked = rank(table, config.min_frequency);
        pr.inclusion = inclusion_series(pr.ranked, lexicon, config.ks);
        rankings.push_back(pr.ranked);
        pr.table = std::move(table);
        result.projects.emplace(project, std::move(pr));
    }

    if (rankings.size() >= 2) {
        result.intersection =
            cross_project_intersection(std::span(rankings), lexicon, config.intersection_k);
    } else if (rankings.size() == 1) {
        const InclusionPoint point = inclusion_rate(rankings[0], lexicon, config.intersection_k);
        result.intersection.insert(point.hits.begin(), point.hits.end());
    }

    result.config_fingerprint = config_fingerprint(config);
    result.lexicon_version = lexicon.version();
    return result;
}

void write_collocation_artifacts(const RunConfig& config, const RunResult& result) {
    if (config.out_dir.empty()) throw IoError("output directory not set");
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create " + config.out_dir + ": " + ec.message());
    for (const auto& [project, pr] : result.projects) {
        const fs::path dir = fs::path(config.out_dir) / pr.directory;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
        write_text((dir / "collocations.csv").string(), table_csv(pr.table));
        write_text((dir / "collocations.json").string(), table_json(pr.table, pr.ranked));
        write_text((dir / "ranked.csv").string(), ranked_csv(pr.ranked));
    }
}

RunResult run_pipeline(const RunConfig& config, const std::vector<Comment>& comments) {
    if (config.out_dir.empty()) throw IoError("output directory not set");
    const CueLexicon lexicon = config.lexicon_path.empty()
                                   ? CueLexicon::builtin()
                                   : CueLexicon::load(config.lexicon_path);
    RunResult result = analyze_corpus(config, comments, lexicon);

    write_collocation_artifacts(config, result);

    std::error_code ec;
    std::vector<InclusionReport> reports;
    for (const auto& [project, pr] : result.projects) {
        const fs::path dir = fs::path(config.out_dir) / pr.directory;
        write_text((dir / "inclusion.json").string(), inclusion_report_to_json(pr.inclusion));
        emit_figure_data(std::span(&pr.inclusion, 1), (dir / "figure.csv").string(),
                         (dir / "figure.json").string());
        reports.push_back(pr.inclusion);
    }

    emit_figure_data(std::span(reports), (fs::path(config.out_dir) / "figure_data.csv").string(),
                     (fs::path(config.out_dir) / "figure_data.json").string());

    json manifest;
    manifest["format_version"] = 1;
    manifest["config_fingerprint"] = result.config_fingerprint;
    manifest["lexicon_version"] = result.lexicon_version;
    manifest["config"] = json::parse(run_config_to_json(config));
    json projects = json::array();
    for (const auto& [project, pr] : result.projects) {
        projects.push_back({{"name", project},
                            {"directory", pr.directory},
                            {"comments", pr.comments},
                            {"qualifying_words", pr.ranked.ranked.size()},
                            {"total_pairs", pr.table.total_pairs},
                            {"excluded_pairs", pr.table.excluded_pairs}});
    }
    manifest["projects"] = std::move(projects);
    json intersection = json::array();
    for (const auto& word : result.intersection) intersection.push_back(word);
    manifest["intersection"] = std::move(intersection);
    manifest["intersection_k"] = config.intersection_k;
    write_text((fs::path(config.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

    return result;
}

RunResult run_pipeline_file(const RunConfig& config, const std::string& corpus_path,
                            CorpusFormat format) {
    std::vector<std::string> warnings;
    const std::vector<Comment> comments = read_corpus(corpus_path, format, &warnings);
    RunResult result = run_pipeline(config, comments);
    result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
    return result;
}

PreprocessConfig load_preprocess_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError(path + ": not a JSON object");
    }

    PreprocessConfig config;
    try {
        if (j.contains("signature_keys")) {
            config.signature_keys = j["signature_keys"].get<std::vector<std::string>>();
        }
        if (j.contains("strip_vote_lines")) {
            config.strip_vote_lines = j["strip_vote_lines"].get<bool>();
        }
        if (j.contains("uri_schemes")) {
            config.uri_schemes = j["uri_schemes"].get<std::vector<std::string>>();
        }
        if (j.contains("code_detection")) {
            const auto& cd = j["code_detection"];
            if (cd.contains("backticks")) config.code.backticks = cd["backticks"].get<bool>();
            if (cd.contains("snake_case")) config.code.snake_case = cd["snake_case"].get<bool>();
            if (cd.contains("camel_case")) config.code.camel_case = cd["camel_case"].get<bool>();
            if (cd.contains("call_parens")) {
                config.code.call_parens = cd["call_parens"].get<bool>();
            }
            if (cd.contains("dotted_chain")) {
                config.code.dotted_chain = cd["dotted_chain"].get<bool>();
            }
            if (cd.contains("literals")) {
                config.code.literals = cd["literals"].get<std::vector<std::string>>();
            }
        }
        if (j.contains("collapse_code_lines")) {
            config.collapse_code_lines = j["collapse_code_lines"].get<bool>();
        }
        if (j.contains("code_line_threshold")) {
            config.code_line_threshold = j["code_line_threshold"].get<double>();
        }
        if (j.contains("sentence_boundaries")) {
            config.sentence_boundaries = j["sentence_boundaries"].get<bool>();
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return config;
}

} // namespace revcue
