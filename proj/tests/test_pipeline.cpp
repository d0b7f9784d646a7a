#include "doctest.h"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "revcue/errors.hpp"
#include "revcue/pipeline.hpp"

#include "support/generators.hpp"
#include "support/temp_dir.hpp"

using namespace revcue;
namespace fs = std::filesystem;

namespace {

std::vector<Comment> two_project_corpus() {
    return {
        {"a1", "alpha", "rename get_config because it shadows x_y"},
        {"a2", "alpha", "as market_id is None by default"},
        {"a3", "alpha", "fix typo"},
        {"b1", "beta/nested", "see https://example.org and src/a/b.c if foo_bar() breaks"},
        {"b2", "beta/nested", "should work when parse(x) is cached"},
    };
}

std::map<std::string, std::string> read_tree(const std::string& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        files[fs::relative(entry.path(), root).string()] =
            testsupport::read_file(entry.path().string());
    }
    return files;
}

} // namespace

TEST_CASE("default run config matches the reference settings (snapshot)") {
    const RunConfig config;

    CHECK(config.collocation.window == 2); // window of three words
    CHECK(config.min_frequency == 10);
    CHECK(config.ks == std::vector<std::size_t>{50, 100, 150, 200});
    CHECK(config.collocation.excluded_articles == std::vector<std::string>{"a", "an"});
    CHECK(config.intersection_k == 200);

    const std::string fp = config_fingerprint(config);
    CHECK(fp.find("window=2") != std::string::npos);
    CHECK(fp.find("min_frequency=10") != std::string::npos);
    CHECK(fp.find("ks=50,100,150,200") != std::string::npos);
    CHECK(fp.find("exclude=a,an") != std::string::npos);
    CHECK(fp.find("stemming=none") != std::string::npos);
    CHECK(fp.find("stop_words=retained") != std::string::npos);

    // Frozen canonical JSON of the defaults.
    const std::string expected = R"json({
  "collocation": {
    "dedup_per_comment": false,
    "excluded_articles": [
      "a",
      "an"
    ],
    "window": 2
  },
  "intersection_k": 200,
  "ks": [
    50,
    100,
    150,
    200
  ],
  "lexicon": "builtin",
  "min_frequency": 10,
  "preprocess": {
    "code_detection": {
      "backticks": true,
      "call_parens": true,
      "camel_case": true,
      "dotted_chain": true,
      "literals": [
        "None",
        "null",
        "true",
        "false",
        "nullptr"
      ],
      "snake_case": true
    },
    "code_line_threshold": 0.8,
    "collapse_code_lines": true,
    "sentence_boundaries": false,
    "signature_keys": [
      "Author-Id",
      "Signed-off-by",
      "Change-Id",
      "Reviewed-by",
      "Tested-by",
      "Reviewed-on"
    ],
    "strip_vote_lines": true,
    "uri_schemes": [
      "http",
      "https",
      "ftp",
      "ssh",
      "git"
    ]
  },
  "stemming": "none",
  "stop_word_removal": false
}
)json";
    CHECK(run_config_to_json(config) == expected);

    // Identical configs fingerprint identically; changed configs do not.
    RunConfig changed;
    changed.min_frequency = 9;
    CHECK(config_fingerprint(RunConfig{}) == fp);
    CHECK(config_fingerprint(changed) != fp);
}

TEST_CASE("run_pipeline: artifacts, determinism, thread invariance") {
    testsupport::TempDir dir;
    const auto comments = two_project_corpus();

    RunConfig config;
    config.min_frequency = 0; // tiny corpus: keep everything ranked
    config.ks = {5, 10};
    config.intersection_k = 10;
    config.threads = 1;
    config.out_dir = dir.file("run1");
    const RunResult result = run_pipeline(config, comments);

    REQUIRE(result.projects.size() == 2);
    CHECK(result.projects.at("alpha").comments == 3);
    CHECK(result.projects.at("beta/nested").comments == 2);

    // Project labels with separators map to safe directories.
    CHECK(result.projects.at("beta/nested").directory == "beta_nested");
    for (const char* name :
         {"run1/alpha/collocations.csv", "run1/alpha/collocations.json",
          "run1/alpha/ranked.csv", "run1/alpha/inclusion.json", "run1/alpha/figure.csv",
          "run1/beta_nested/collocations.csv", "run1/figure_data.csv", "run1/figure_data.json",
          "run1/manifest.json"}) {
        INFO(name);
        CHECK(fs::exists(dir.path() / name));
    }

    // Rerun into a second directory: byte-identical tree.
    config.out_dir = dir.file("run2");
    run_pipeline(config, comments);
    CHECK(read_tree(dir.file("run1")) == read_tree(dir.file("run2")));

    // More threads: still byte-identical.
    config.threads = 4;
    config.out_dir = dir.file("run4");
    run_pipeline(config, comments);
    CHECK(read_tree(dir.file("run1")) == read_tree(dir.file("run4")));
}

TEST_CASE("run_pipeline: outputs are pure functions of inputs") {
    testsupport::TempDir dir;
    testsupport::Rng rng(99);
    std::vector<Comment> comments;
    for (int i = 0; i < 200; ++i) {
        comments.push_back(Comment{"c" + std::to_string(i), i % 3 ? "p1" : "p2",
                                   testsupport::random_message(rng)});
    }
    RunConfig config;
    config.threads = 1;
    config.out_dir = dir.file("a");
    run_pipeline(config, comments);
    config.threads = 3;
    config.out_dir = dir.file("b");
    run_pipeline(config, comments);
    CHECK(read_tree(dir.file("a")) == read_tree(dir.file("b")));
}

TEST_CASE("analyze_corpus: single project intersection and manifest fields") {
    const std::vector<Comment> comments = {{"1", "solo", "because get_cfg is None"}};
    RunConfig config;
    config.min_frequency = 0;
    config.ks = {5};
    config.intersection_k = 5;
    const RunResult result = analyze_corpus(config, comments, CueLexicon::builtin());
    REQUIRE(result.projects.size() == 1);
    CHECK(result.lexicon_version == "kd-cues-1.0");
    // Single project: intersection degenerates to its own hit set.
    CHECK(result.intersection.contains("because"));
}

TEST_CASE("project_directories: sanitization and collisions") {
    const auto dirs = project_directories({"a/b", "a_b", "x", ""});
    CHECK(dirs.at("a/b") != dirs.at("a_b"));
    CHECK(dirs.at("x") == "x");
    CHECK(!dirs.at("").empty());
}

TEST_CASE("load_preprocess_config: overrides and validation") {
    testsupport::TempDir dir;
    const auto path = dir.write("pp.json", R"({
        "signature_keys": ["X-Bot"],
        "code_detection": {"camel_case": false, "literals": ["nil"]},
        "collapse_code_lines": false,
        "sentence_boundaries": true
    })");
    const PreprocessConfig config = load_preprocess_config(path);
    CHECK(config.signature_keys == std::vector<std::string>{"X-Bot"});
    CHECK(!config.code.camel_case);
    CHECK(config.code.literals == std::vector<std::string>{"nil"});
    CHECK(!config.collapse_code_lines);
    CHECK(config.sentence_boundaries);
    CHECK(config.code.snake_case); // untouched defaults survive
    CHECK(config.strip_vote_lines);

    CHECK_THROWS_AS(load_preprocess_config(dir.write("bad.json", "[]")), ParseError);
    CHECK_THROWS_AS(load_preprocess_config(dir.write("worse.json", "{\"strip_vote_lines\": 3}")),
                    ParseError);
    CHECK_THROWS_AS(load_preprocess_config("/nonexistent.json"), IoError);
}

TEST_CASE("run_pipeline: requires an output directory") {
    RunConfig config;
    CHECK_THROWS_AS(run_pipeline(config, {}), IoError);
}
