#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "revcue/analytics.hpp"
#include "revcue/collocation.hpp"
#include "revcue/corpus_io.hpp"
#include "revcue/cue_lexicon.hpp"
#include "revcue/preprocess.hpp"

namespace revcue {

/// Full configuration of a corpus run. The defaults reproduce the reference
/// settings: window distance 2 (a window of three words), frequency filter
/// 10, top-K series 50/100/150/200, articles a/an excluded, no stemming, no
/// stop-word removal.
struct RunConfig {
    std::string lexicon_path; // empty = built-in lexicon
    PreprocessConfig preprocess;
    CollocationConfig collocation;
    std::uint64_t min_frequency = 10;
    std::vector<std::size_t> ks = {50, 100, 150, 200};
    std::size_t intersection_k = 200;
    std::string out_dir;
    unsigned threads = 0; // 0 = hardware concurrency
};

/// Canonical JSON of everything that affects results (excludes out_dir and
/// threads). Used for snapshot tests and the run manifest.
std::string run_config_to_json(const RunConfig& config);

/// Readable summary plus a hash of the canonical JSON. Identical configs
/// produce identical fingerprints.
std::string config_fingerprint(const RunConfig& config);

struct ProjectResult {
    std::string project;
    std::string directory; // sanitized per-project output directory name
    std::size_t comments = 0;
    CollocationTable table;
    RankedCollocations ranked;
    InclusionReport inclusion;
};

struct RunResult {
    std::map<std::string, ProjectResult> projects;
    std::set<std::string> intersection; // cue hits common to all projects
    std::string config_fingerprint;
    std::string lexicon_version;
    std::vector<std::string> warnings;
};

/// Preprocesses and aggregates the whole corpus (deterministically, however
/// many threads are used). Does not touch the filesystem.
RunResult analyze_corpus(const RunConfig& config, const std::vector<Comment>& comments,
                         const CueLexicon& lexicon);

/// analyze_corpus plus artifact emission under config.out_dir:
///   <project>/collocations.csv  full table, rank order
///   <project>/collocations.json table + tallies + fingerprint
///   <project>/ranked.csv        frequency-filtered ranking
///   <project>/inclusion.json    inclusion-rate report
///   <project>/figure.csv        project,K,rate rows
///   figure_data.csv / figure_data.json   all projects
///   manifest.json                run manifest
/// Reruns with identical inputs are byte-identical.
RunResult run_pipeline(const RunConfig& config, const std::vector<Comment>& comments);

/// Reads the corpus file, then runs the pipeline.
RunResult run_pipeline_file(const RunConfig& config, const std::string& corpus_path,
                            CorpusFormat format);

/// Directory-safe name for a project label ('/' and friends replaced);
/// collisions get a numeric suffix in sorted-name order.
std::map<std::string, std::string> project_directories(const std::vector<std::string>& projects);

/// Reads a PreprocessConfig from a JSON file. Absent keys keep their
/// defaults; wrongly typed values raise ParseError.
PreprocessConfig load_preprocess_config(const std::string& path);

/// Writes only the per-project collocation artifacts (collocations.csv,
/// collocations.json, ranked.csv) under config.out_dir.
void write_collocation_artifacts(const RunConfig& config, const RunResult& result);

} // namespace revcue
