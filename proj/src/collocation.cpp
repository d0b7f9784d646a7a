#include "revcue/collocation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace revcue {

namespace {

bool is_excluded_word(const std::string& token, const CollocationConfig& config) {
    return std::find(config.excluded_articles.begin(), config.excluded_articles.end(), token) !=
           config.excluded_articles.end();
}

// True when a sentence break lies strictly between positions a < b.
bool crosses_break(const std::vector<std::size_t>& breaks, std::size_t a, std::size_t b) {
    for (const std::size_t p : breaks) {
        if (p > a && p <= b) return true;
    }
    return false;
}

template <typename OnPartner, typename OnExcluded>
void scan_pairs(const TokenStream& stream, const CollocationConfig& config, OnPartner on_partner,
                OnExcluded on_excluded) {
    if (config.window < 1) throw std::invalid_argument("window distance must be >= 1");
    const auto& tokens = stream.tokens;
    const auto window = static_cast<std::size_t>(config.window);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] != kCodeToken) continue;
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(tokens.size() - 1, i + window);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            if (!stream.sentence_breaks.empty() &&
                crosses_break(stream.sentence_breaks, std::min(i, j), std::max(i, j))) {
                continue;
            }
            const std::string& partner = tokens[j];
            if (is_placeholder(partner) || is_excluded_word(partner, config)) {
                on_excluded(partner);
            } else {
                on_partner(partner);
            }
        }
    }
}

void accumulate(CollocationTable& table, const TokenStream& stream,
                const CollocationConfig& config) {
    if (!config.dedup_per_comment) {
        scan_pairs(
            stream, config,
            [&](const std::string& w) {
                ++table.counts[w];
                ++table.total_pairs;
            },
            [&](const std::string&) {
                ++table.excluded_pairs;
                ++table.total_pairs;
            });
        return;
    }
    std::unordered_set<std::string> partners;
    std::unordered_set<std::string> excluded;
    scan_pairs(
        stream, config, [&](const std::string& w) { partners.insert(w); },
        [&](const std::string& w) { excluded.insert(w); });
    for (const auto& w : partners) {
        ++table.counts[w];
        ++table.total_pairs;
    }
    table.excluded_pairs += excluded.size();
    table.total_pairs += excluded.size();
}

} // namespace

std::vector<std::string> extract_pairs(const TokenStream& stream,
                                       const CollocationConfig& config) {
    std::vector<std::string> partners;
    scan_pairs(
        stream, config, [&](const std::string& w) { partners.push_back(w); },
        [](const std::string&) {});
    return partners;
}

PairStats extract_pair_stats(const TokenStream& stream, const CollocationConfig& config) {
    PairStats stats;
    scan_pairs(
        stream, config, [&](const std::string& w) { stats.partners.push_back(w); },
        [&](const std::string&) { ++stats.excluded; });
    return stats;
}

CollocationTable build_table(std::span<const TokenStream> streams, const std::string& project,
                             const CollocationConfig& config) {
    CollocationTable table;
    table.project = project;
    table.config_fingerprint = collocation_fingerprint(config);
    for (const auto& stream : streams) {
        if (stream.project != project) {
            throw std::invalid_argument("stream for comment " + stream.comment_id +
                                        " belongs to project \"" + stream.project +
                                        "\", not \"" + project + "\"");
        }
        accumulate(table, stream, config);
    }
    return table;
}

void add_stream(CollocationTable& table, const TokenStream& stream,
                const CollocationConfig& config) {
    if (!stream.project.empty() && !table.project.empty() && stream.project != table.project) {
        throw std::invalid_argument("stream for comment " + stream.comment_id +
                                    " belongs to project \"" + stream.project + "\", not \"" +
                                    table.project + "\"");
    }
    accumulate(table, stream, config);
}

void merge_tables(CollocationTable& into, const CollocationTable& from) {
    for (const auto& [word, count] : from.counts) into.counts[word] += count;
    into.total_pairs += from.total_pairs;
    into.excluded_pairs += from.excluded_pairs;
}

RankedCollocations rank(const CollocationTable& table, std::uint64_t min_frequency) {
    RankedCollocations out;
    out.project = table.project;
    out.min_frequency = min_frequency;
    out.ranked.reserve(table.counts.size());
    for (const auto& [word, count] : table.counts) {
        if (count >= min_frequency) out.ranked.emplace_back(word, count);
    }
    std::sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::optional<WordRank> rank_of(const RankedCollocations& ranked, std::string_view word) {
    for (std::size_t i = 0; i < ranked.ranked.size(); ++i) {
        if (ranked.ranked[i].first == word) {
            return WordRank{i + 1, ranked.ranked.size()};
        }
    }
    return std::nullopt;
}

std::string collocation_fingerprint(const CollocationConfig& config) {
    std::string fp = "window=" + std::to_string(config.window) + ";exclude=";
    for (std::size_t i = 0; i < config.excluded_articles.size(); ++i) {
        if (i) fp.push_back(',');
        fp += config.excluded_articles[i];
    }
    fp += ";dedup=";
    fp += config.dedup_per_comment ? "on" : "off";
    return fp;
}

} // namespace revcue
