#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revcue/preprocess.hpp"

namespace revcue {

struct CollocationConfig {
    // Maximum distance |i - j| between the code placeholder and a partner
    // word. 2 reproduces a window of three words.
    int window = 2;
    // Partner words dropped as trivial; pairs with them are tallied as
    // excluded, like placeholder partners.
    std::vector<std::string> excluded_articles = {"a", "an"};
    // Count each distinct partner at most once per comment instead of once
    // per pair instance.
    bool dedup_per_comment = false;

    bool operator==(const CollocationConfig&) const = default;
};

/// Per-project counts of words found within the window of CODETOK.
struct CollocationTable {
    std::string project;
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total_pairs = 0;    // counted + excluded
    std::uint64_t excluded_pairs = 0; // placeholder/article partners
    std::string config_fingerprint;
};

/// Rank-ordered view of a table after the frequency filter: count descending,
/// ties broken lexicographically ascending.
struct RankedCollocations {
    std::string project;
    std::vector<std::pair<std::string, std::uint64_t>> ranked;
    std::uint64_t min_frequency = 0;
};

struct WordRank {
    std::size_t rank;  // 1-based
    std::size_t total; // qualifying words
};

/// Partner words of every CODETOK occurrence, one entry per qualifying
/// (code index, partner index) pair; placeholders and excluded articles are
/// omitted. Windows do not cross stream.sentence_breaks.
std::vector<std::string> extract_pairs(const TokenStream& stream,
                                       const CollocationConfig& config = {});

struct PairStats {
    std::vector<std::string> partners;
    std::uint64_t excluded = 0;
};

/// extract_pairs plus the excluded-pair tally (placeholder and article
/// partners, one per pair instance).
PairStats extract_pair_stats(const TokenStream& stream, const CollocationConfig& config = {});

/// Aggregates pair counts over a project's comments. Throws
/// std::invalid_argument when a stream is tagged with a different project.
CollocationTable build_table(std::span<const TokenStream> streams, const std::string& project,
                             const CollocationConfig& config = {});

/// Adds one comment's pairs into an existing table (streaming use).
void add_stream(CollocationTable& table, const TokenStream& stream,
                const CollocationConfig& config = {});

/// Merges partial tables; addition is commutative so any partition of a
/// corpus merges to the sequential result.
void merge_tables(CollocationTable& into, const CollocationTable& from);

/// Applies the frequency filter and produces the deterministic ranking.
RankedCollocations rank(const CollocationTable& table, std::uint64_t min_frequency = 10);

/// 1-based position of `word` in the ranking, or empty when filtered out.
std::optional<WordRank> rank_of(const RankedCollocations& ranked, std::string_view word);

std::string collocation_fingerprint(const CollocationConfig& config);

} // namespace revcue
