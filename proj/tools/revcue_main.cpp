#include <atomic>
#include <csignal>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "revcue/analytics.hpp"
#include "revcue/collocation.hpp"
#include "revcue/corpus_io.hpp"
#include "revcue/cue_lexicon.hpp"
#include "revcue/errors.hpp"
#include "revcue/gerrit_client.hpp"
#include "revcue/linter.hpp"
#include "revcue/pipeline.hpp"
#include "revcue/preprocess.hpp"

namespace {

using namespace revcue;

std::atomic<bool> g_interrupted{false};

void handle_interrupt(int) { g_interrupted.store(true); }

std::vector<std::string> split_list(const std::string& spec) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(spec);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::size_t> split_sizes(const std::string& spec) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(spec)) out.push_back(std::stoull(item));
    return out;
}

// Flags shared by the corpus-analysis subcommands; mirrors RunConfig.
struct CommonOptions {
    std::string corpus;
    std::string format = "auto";
    std::string lexicon_path;
    std::string preprocess_config;
    std::string out_dir;
    int window = 2;
    std::uint64_t min_frequency = 10;
    std::string ks = "50,100,150,200";
    std::string exclude = "a,an";
    std::size_t intersection_k = 200;
    bool dedup_per_comment = false;
    bool sentence_boundaries = false;
    unsigned threads = 0;

    CorpusFormat resolved_format() const {
        if (format == "auto") return corpus_format_from_path(corpus);
        const auto parsed = parse_corpus_format(format);
        if (!parsed) throw std::invalid_argument("unknown corpus format: " + format);
        return *parsed;
    }

    RunConfig run_config() const {
        RunConfig config;
        config.lexicon_path = lexicon_path;
        if (!preprocess_config.empty()) {
            config.preprocess = load_preprocess_config(preprocess_config);
        }
        if (sentence_boundaries) config.preprocess.sentence_boundaries = true;
        config.collocation.window = window;
        config.collocation.excluded_articles = split_list(exclude);
        config.collocation.dedup_per_comment = dedup_per_comment;
        config.min_frequency = min_frequency;
        config.ks = split_sizes(ks);
        config.intersection_k = intersection_k;
        config.out_dir = out_dir;
        config.threads = threads;
        return config;
    }
};

void add_corpus_options(CLI::App* cmd, CommonOptions& opts, bool needs_out) {
    cmd->add_option("corpus", opts.corpus, "Corpus file (JSONL or CSV)")->required();
    cmd->add_option("--format", opts.format, "Corpus format: jsonl, csv, auto")
        ->capture_default_str();
    cmd->add_option("--lexicon", opts.lexicon_path,
                    "Cue lexicon file (default: built-in kd-cues-1.0)");
    cmd->add_option("--preprocess-config", opts.preprocess_config,
                    "JSON file overriding preprocessing defaults");
    auto* out = cmd->add_option("--out,-o", opts.out_dir, "Output directory");
    if (needs_out) out->required();
    cmd->add_option("--window", opts.window, "Collocation window distance")
        ->capture_default_str();
    cmd->add_option("--min-frequency", opts.min_frequency,
                    "Drop words collocated fewer times than this")
        ->capture_default_str();
    cmd->add_option("--ks", opts.ks, "Top-K list for inclusion rates")->capture_default_str();
    cmd->add_option("--exclude", opts.exclude, "Comma-separated excluded articles")
        ->capture_default_str();
    cmd->add_option("--intersection-k", opts.intersection_k,
                    "Top-K used for the cross-project intersection")
        ->capture_default_str();
    cmd->add_flag("--dedup-per-comment", opts.dedup_per_comment,
                  "Count each partner word once per comment");
    cmd->add_flag("--sentence-boundaries", opts.sentence_boundaries,
                  "Stop collocation windows at sentence-final punctuation");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';
}

int cmd_ingest(const CommonOptions& opts, const std::string& normalized,
               const std::string& manifest_path) {
    std::vector<std::string> warnings;
    const auto comments = read_corpus(opts.corpus, opts.resolved_format(), &warnings);
    print_warnings(warnings);

    const CorpusManifest manifest = build_manifest(comments, opts.corpus);
    const std::string manifest_json = manifest_to_json(manifest);
    if (manifest_path.empty() || manifest_path == "-") {
        std::cout << manifest_json;
    } else {
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + manifest_path);
        out << manifest_json;
    }
    if (!normalized.empty()) write_corpus_jsonl(comments, normalized);
    std::cerr << "ingested " << comments.size() << " comments from " << manifest.projects.size()
              << " project(s)\n";
    return kExitOk;
}

int cmd_preprocess(const CommonOptions& opts, const std::string& out_path) {
    const RunConfig config = opts.run_config();
    CommentReader reader(opts.corpus, opts.resolved_format());

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) throw IoError("cannot write " + out_path);
        out = &file;
    }

    std::vector<std::string> warnings;
    Comment comment;
    while (reader.next(comment)) {
        const TokenStream stream = preprocess(comment, config.preprocess, &warnings);
        nlohmann::json j;
        j["id"] = stream.comment_id;
        j["project"] = stream.project;
        j["tokens"] = stream.tokens;
        if (!stream.sentence_breaks.empty()) j["sentence_breaks"] = stream.sentence_breaks;
        *out << j.dump() << '\n';
        print_warnings(warnings);
        warnings.clear();
    }
    reader.finish();
    print_warnings(reader.warnings());
    return kExitOk;
}

int cmd_collocate(const CommonOptions& opts) {
    const RunConfig config = opts.run_config();
    std::vector<std::string> warnings;
    const auto comments = read_corpus(opts.corpus, opts.resolved_format(), &warnings);
    const CueLexicon lexicon = config.lexicon_path.empty()
                                   ? CueLexicon::builtin()
                                   : CueLexicon::load(config.lexicon_path);
    const RunResult result = analyze_corpus(config, comments, lexicon);
    warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());
    print_warnings(warnings);
    write_collocation_artifacts(config, result);
    for (const auto& [project, pr] : result.projects) {
        std::cout << project << ": " << pr.comments << " comments, "
                  << pr.ranked.ranked.size() << " qualifying words, " << pr.table.total_pairs
                  << " pairs\n";
    }
    return kExitOk;
}

int cmd_report(const CommonOptions& opts) {
    const RunConfig config = opts.run_config();
    const RunResult result = run_pipeline_file(config, opts.corpus, opts.resolved_format());
    print_warnings(result.warnings);
    for (const auto& [project, pr] : result.projects) {
        std::cout << project << ": " << pr.comments << " comments, "
                  << pr.ranked.ranked.size() << " qualifying words";
        for (const auto& point : pr.inclusion.series) {
            std::cout << ", top-" << point.k << " rate " << point.rate;
        }
        std::cout << '\n';
    }
    if (!result.intersection.empty()) {
        std::cout << "intersection (top-" << config.intersection_k << "):";
        for (const auto& word : result.intersection) std::cout << ' ' << word;
        std::cout << '\n';
    }
    std::cout << "artifacts written to " << config.out_dir << '\n';
    return kExitOk;
}

int cmd_rank_of(const CommonOptions& opts, const std::string& word) {
    const RunConfig config = opts.run_config();
    std::vector<std::string> warnings;
    const auto comments = read_corpus(opts.corpus, opts.resolved_format(), &warnings);
    const CueLexicon lexicon = config.lexicon_path.empty()
                                   ? CueLexicon::builtin()
                                   : CueLexicon::load(config.lexicon_path);
    const RunResult result = analyze_corpus(config, comments, lexicon);
    warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());
    print_warnings(warnings);
    for (const auto& [project, pr] : result.projects) {
        const auto rank_entry = rank_of(pr.ranked, word);
        if (rank_entry) {
            std::cout << project << '\t' << word << '\t' << rank_entry->rank << '\t'
                      << rank_entry->total << '\n';
        } else {
            std::cout << project << '\t' << word << "\t-\t" << pr.ranked.ranked.size() << '\n';
        }
    }
    return kExitOk;
}

int cmd_lint(const std::string& input, const std::string& lexicon_path,
             const std::string& preprocess_config, const std::string& json_out, bool strict) {
    std::string text;
    std::string id = "stdin";
    if (input.empty() || input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw IoError("cannot open " + input);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        id = input;
    }

    LintConfig config;
    if (!preprocess_config.empty()) config.preprocess = load_preprocess_config(preprocess_config);
    const CueLexicon lexicon =
        lexicon_path.empty() ? CueLexicon::builtin() : CueLexicon::load(lexicon_path);

    const LintReport report = lint(Comment{id, "cli", text}, lexicon, config);
    const std::string report_json = lint_report_to_json(report);

    if (json_out == "-") {
        std::cout << report_json;
    } else {
        for (const auto& line : format_findings(report)) std::cout << line << '\n';
        std::cout << (report.rationale_flag ? "rationale: yes" : "rationale: no") << " ("
                  << report.code_refs << " code ref(s), " << report.code_cue_collocations
                  << " cue-code collocation(s), " << report.modal_requests << " modal(s))\n";
        if (!json_out.empty()) {
            std::ofstream out(json_out, std::ios::binary);
            if (!out) throw IoError("cannot write " + json_out);
            out << report_json;
        }
    }
    if (strict && !report.rationale_flag) return kExitLintStrict;
    return kExitOk;
}

int cmd_fetch(const std::string& base_url, const std::string& query, std::size_t page_size,
              std::size_t max_changes, const std::string& out_path) {
    GerritClient::Options options;
    options.page_size = page_size;
    options.max_changes = max_changes;
    options.cancelled = [] { return g_interrupted.load(); };
    std::signal(SIGINT, handle_interrupt);

    GerritClient client(base_url, options);
    const auto result = client.fetch(query);

    std::cerr << "fetched " << result.comments.size() << " comments from "
              << result.changes_seen << " changes (" << result.pages_fetched << " page(s))\n";
    if (!result.comments.empty() || result.complete) {
        write_corpus_jsonl(result.comments, out_path);
        std::cerr << "wrote " << out_path << '\n';
    }
    if (!result.complete) {
        std::cerr << "warning: partial result: "
                  << (result.error.empty() ? "cancelled" : result.error) << '\n';
        return kExitNetwork;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence-cue collocation analysis and linting for code-review comments"};
    app.require_subcommand(1);

    std::function<int()> action;

    // ingest
    {
        auto opts = std::make_shared<CommonOptions>();
        auto normalized = std::make_shared<std::string>();
        auto manifest = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("ingest", "Validate a corpus and write its manifest");
        cmd->add_option("corpus", opts->corpus, "Corpus file (JSONL or CSV)")->required();
        cmd->add_option("--format", opts->format, "Corpus format: jsonl, csv, auto")
            ->capture_default_str();
        cmd->add_option("--normalized", *normalized, "Write a normalized JSONL copy here");
        cmd->add_option("--manifest", *manifest, "Manifest output path (default: stdout)");
        cmd->callback([=, &action] { action = [=] { return cmd_ingest(*opts, *normalized, *manifest); }; });
    }
    // preprocess
    {
        auto opts = std::make_shared<CommonOptions>();
        auto out = std::make_shared<std::string>("-");
        auto* cmd = app.add_subcommand("preprocess", "Emit token streams as JSONL");
        add_corpus_options(cmd, *opts, false);
        cmd->add_option("--tokens-out", *out, "Token stream output (default: stdout)");
        cmd->callback([=, &action] { action = [=] { return cmd_preprocess(*opts, *out); }; });
    }
    // collocate
    {
        auto opts = std::make_shared<CommonOptions>();
        auto* cmd =
            app.add_subcommand("collocate", "Build per-project collocation tables and rankings");
        add_corpus_options(cmd, *opts, true);
        cmd->callback([=, &action] { action = [=] { return cmd_collocate(*opts); }; });
    }
    // report
    {
        auto opts = std::make_shared<CommonOptions>();
        auto* cmd = app.add_subcommand(
            "report", "Full pipeline: tables, rankings, inclusion rates, figure data");
        add_corpus_options(cmd, *opts, true);
        cmd->callback([=, &action] { action = [=] { return cmd_report(*opts); }; });
    }
    // rank-of
    {
        auto opts = std::make_shared<CommonOptions>();
        auto word = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("rank-of", "Rank of a word per project");
        add_corpus_options(cmd, *opts, false);
        cmd->add_option("--word", *word, "Word to look up")->required();
        cmd->callback([=, &action] { action = [=] { return cmd_rank_of(*opts, *word); }; });
    }
    // lint
    {
        auto input = std::make_shared<std::string>("-");
        auto lexicon = std::make_shared<std::string>();
        auto pp = std::make_shared<std::string>();
        auto json_out = std::make_shared<std::string>();
        auto strict = std::make_shared<bool>(false);
        auto* cmd = app.add_subcommand("lint", "Lint one comment for rationale-bearing language");
        cmd->add_option("input", *input, "Comment file, or - for stdin")->capture_default_str();
        cmd->add_option("--lexicon", *lexicon, "Cue lexicon file (default: built-in)");
        cmd->add_option("--preprocess-config", *pp, "JSON preprocessing overrides");
        cmd->add_option("--json", *json_out, "Write the JSON report here; - for stdout only");
        cmd->add_flag("--strict", *strict,
                      "Exit nonzero when no rationale signal is detected");
        cmd->callback([=, &action] {
            action = [=] { return cmd_lint(*input, *lexicon, *pp, *json_out, *strict); };
        });
    }
    // fetch
    {
        auto base = std::make_shared<std::string>();
        auto query = std::make_shared<std::string>("status:merged");
        auto page = std::make_shared<std::size_t>(100);
        auto max_changes = std::make_shared<std::size_t>(0);
        auto out = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("fetch", "Fetch review messages from a Gerrit server");
        cmd->add_option("--base-url", *base, "Server base URL, e.g. https://host/r")->required();
        cmd->add_option("--query", *query, "Change query")->capture_default_str();
        cmd->add_option("--page-size", *page, "Changes per page")->capture_default_str();
        cmd->add_option("--max-changes", *max_changes, "Stop after this many changes (0 = all)")
            ->capture_default_str();
        cmd->add_option("--out", *out, "Corpus JSONL output path")->required();
        cmd->callback([=, &action] {
            action = [=] { return cmd_fetch(*base, *query, *page, *max_changes, *out); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const CorpusQualityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCorpusQuality;
    } catch (const NetworkError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNetwork;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
