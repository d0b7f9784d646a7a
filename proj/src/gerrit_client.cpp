#include "revcue/gerrit_client.hpp"

#include <chrono>
#include <thread>
#include <unordered_set>

#ifdef REVCUE_HAS_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "json.hpp"

#include "revcue/errors.hpp"

namespace revcue {

namespace {

using nlohmann::json;

std::string encode_query_param(std::string_view value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (const char c : value) {
        const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' || c == '~';
        if (safe) {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[(static_cast<unsigned char>(c) >> 4) & 0xF]);
            out.push_back(hex[static_cast<unsigned char>(c) & 0xF]);
        }
    }
    return out;
}

struct SplitUrl {
    std::string origin; // scheme://host[:port]
    std::string prefix; // path prefix, no trailing slash
};

SplitUrl split_base_url(const std::string& base_url) {
    SplitUrl split;
    const std::size_t scheme = base_url.find("://");
    const std::size_t path_start =
        scheme == std::string::npos ? base_url.find('/') : base_url.find('/', scheme + 3);
    if (path_start == std::string::npos) {
        split.origin = base_url;
    } else {
        split.origin = base_url.substr(0, path_start);
        split.prefix = base_url.substr(path_start);
    }
    while (!split.prefix.empty() && split.prefix.back() == '/') split.prefix.pop_back();
    return split;
}

} // namespace

std::string_view strip_gerrit_guard(std::string_view body) {
    static constexpr std::string_view kGuard = ")]}'";
    if (body.substr(0, kGuard.size()) != kGuard) return body;
    const std::size_t eol = body.find('\n');
    if (eol == std::string_view::npos) return {};
    return body.substr(eol + 1);
}

GerritClient::GerritClient(std::string base_url) : base_url_(std::move(base_url)) {}

GerritClient::GerritClient(std::string base_url, Options options)
    : base_url_(std::move(base_url)), options_(std::move(options)) {}

std::string GerritClient::get_page(const std::string& query, std::size_t skip,
                                   std::size_t limit) {
    const SplitUrl split = split_base_url(base_url_);
#ifndef REVCUE_HAS_OPENSSL
    if (split.origin.rfind("https://", 0) == 0) {
        throw NetworkError("built without TLS support; use an http:// base URL");
    }
#endif
    const std::string path = split.prefix + "/changes/?q=" + encode_query_param(query) +
                             "&o=MESSAGES&n=" + std::to_string(limit) +
                             "&S=" + std::to_string(skip);

    std::string last_error;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        if (attempt > 1) {
            const int delay = options_.backoff_initial_ms << (attempt - 2);
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        }
        httplib::Client client(split.origin);
        client.set_connection_timeout(options_.timeout_seconds, 0);
        client.set_read_timeout(options_.timeout_seconds, 0);
        auto res = client.Get(path);
        if (!res) {
            last_error = "connection failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        return res->body;
    }
    throw NetworkError(base_url_ + path + ": " + last_error + " (after " +
                       std::to_string(options_.max_attempts) + " attempts)");
}

GerritClient::FetchResult GerritClient::fetch(const std::string& query) {
    FetchResult result;
    std::unordered_set<std::string> seen_changes;
    std::size_t skip = 0;
    bool more = true;

    while (more) {
        if (options_.cancelled && options_.cancelled()) {
            result.error = "cancelled";
            return result;
        }
        if (options_.max_changes && result.changes_seen >= options_.max_changes) break;

        std::string body;
        try {
            body = get_page(query, skip, options_.page_size);
        } catch (const NetworkError& e) {
            if (result.pages_fetched == 0) throw;
            result.error = e.what();
            return result; // partial result, flagged incomplete
        }

        const json page = json::parse(strip_gerrit_guard(body), nullptr, false);
        if (!page.is_array()) {
            const std::string error = base_url_ + ": response is not a JSON change list";
            if (result.pages_fetched == 0) throw NetworkError(error);
            result.error = error;
            return result;
        }
        ++result.pages_fetched;
        if (page.empty()) break;

        more = false;
        for (const auto& change : page) {
            if (!change.is_object()) continue;
            if (change.contains("_more_changes") && change["_more_changes"].is_boolean()) {
                more = change["_more_changes"].get<bool>();
            }
            const std::string change_id =
                change.contains("id") && change["id"].is_string()
                    ? change["id"].get<std::string>()
                    : std::string();
            if (change_id.empty() || !seen_changes.insert(change_id).second) continue;
            ++result.changes_seen;
            if (options_.max_changes && result.changes_seen > options_.max_changes) {
                --result.changes_seen;
                seen_changes.erase(change_id);
                more = false;
                break;
            }
            const std::string project =
                change.contains("project") && change["project"].is_string()
                    ? change["project"].get<std::string>()
                    : "unknown";
            if (!change.contains("messages") || !change["messages"].is_array()) continue;
            for (const auto& message : change["messages"]) {
                if (!message.is_object() || !message.contains("message") ||
                    !message["message"].is_string()) {
                    continue;
                }
                const std::string message_id =
                    message.contains("id") && message["id"].is_string()
                        ? message["id"].get<std::string>()
                        : std::to_string(result.comments.size());
                result.comments.push_back(Comment{change_id + "/" + message_id, project,
                                                  message["message"].get<std::string>()});
            }
        }
        skip += page.size();
    }

    result.complete = true;
    return result;
}

} // namespace revcue
