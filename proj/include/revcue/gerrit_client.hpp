#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "revcue/preprocess.hpp"

namespace revcue {

/// Fetches review messages through the Gerrit changes REST endpoint:
/// GET <base>/changes/?q=<query>&o=MESSAGES&n=<page>&S=<skip>.
///
/// Response bodies start with the `)]}'` anti-hijacking guard line, which is
/// stripped before JSON parsing. Paging follows `_more_changes`; changes are
/// de-duplicated by id across pages.
class GerritClient {
public:
    struct Options {
        std::size_t page_size = 100;
        std::size_t max_changes = 0;  // 0 = no limit
        int max_attempts = 5;         // per request, exponential backoff
        int backoff_initial_ms = 250; // doubles per retry
        int timeout_seconds = 30;
        // Checked between requests; true stops paging with complete=false.
        std::function<bool()> cancelled;
    };

    struct FetchResult {
        std::vector<Comment> comments;
        std::size_t changes_seen = 0;
        std::size_t pages_fetched = 0;
        bool complete = false; // false: cancelled or failed mid-paging
        std::string error;     // set when complete is false due to an error
    };

    explicit GerritClient(std::string base_url);
    GerritClient(std::string base_url, Options options);

    /// Pages through the change list for `query`, converting every review
    /// message to a Comment tagged with the change's project. Throws
    /// NetworkError when nothing could be fetched at all; mid-paging failures
    /// return the partial result flagged complete=false.
    FetchResult fetch(const std::string& query);

    const std::string& base_url() const { return base_url_; }

private:
    std::string get_page(const std::string& query, std::size_t skip, std::size_t limit);

    std::string base_url_;
    Options options_;
};

/// Strips the `)]}'` guard line if present.
std::string_view strip_gerrit_guard(std::string_view body);

} // namespace revcue
