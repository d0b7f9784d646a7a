#include "revcue/analytics.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "csv_util.hpp"
#include "revcue/errors.hpp"

namespace revcue {

namespace {

using nlohmann::json;

// Enough digits for a double to survive a text round trip bit-exactly.
std::string format_rate(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", rate);
    return buf;
}

json point_to_json(const InclusionPoint& point) {
    json j;
    j["k"] = point.k;
    j["rate"] = point.rate;
    j["hits"] = point.hits;
    if (point.short_list) j["short_list"] = true;
    return j;
}

json report_to_json_obj(const InclusionReport& report) {
    json j;
    j["project"] = report.project;
    j["lexicon_version"] = report.lexicon_version;
    json series = json::array();
    for (const auto& point : report.series) series.push_back(point_to_json(point));
    j["series"] = std::move(series);
    return j;
}

} // namespace

InclusionPoint inclusion_rate(const RankedCollocations& ranked, const CueLexicon& lexicon,
                              std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    InclusionPoint point;
    point.k = k;
    const auto& single = lexicon.single_word_set();
    const std::size_t take = std::min(k, ranked.ranked.size());
    for (std::size_t i = 0; i < take; ++i) {
        const auto& word = ranked.ranked[i].first;
        if (single.contains(word)) point.hits.push_back(word);
    }
    point.short_list = ranked.ranked.size() < k;
    point.rate = static_cast<double>(point.hits.size()) / static_cast<double>(k);
    return point;
}

InclusionReport inclusion_series(const RankedCollocations& ranked, const CueLexicon& lexicon,
                                 const std::vector<std::size_t>& ks) {
    for (std::size_t i = 1; i < ks.size(); ++i) {
        if (ks[i] <= ks[i - 1]) {
            throw std::invalid_argument("top-K values must be strictly increasing");
        }
    }
    InclusionReport report;
    report.project = ranked.project;
    report.lexicon_version = lexicon.version();
    report.series.reserve(ks.size());
    for (const std::size_t k : ks) report.series.push_back(inclusion_rate(ranked, lexicon, k));
    return report;
}

std::set<std::string> cross_project_intersection(std::span<const RankedCollocations> rankings,
                                                 const CueLexicon& lexicon, std::size_t k) {
    if (rankings.size() < 2) {
        throw std::invalid_argument("intersection needs at least two projects");
    }
    std::set<std::string> acc;
    bool first = true;
    for (const auto& ranked : rankings) {
        const InclusionPoint point = inclusion_rate(ranked, lexicon, k);
        std::set<std::string> hits(point.hits.begin(), point.hits.end());
        if (first) {
            acc = std::move(hits);
            first = false;
        } else {
            std::set<std::string> kept;
            for (const auto& w : acc) {
                if (hits.contains(w)) kept.insert(w);
            }
            acc = std::move(kept);
        }
    }
    return acc;
}

std::set<std::string> cross_project_intersection(std::span<const InclusionReport> reports,
                                                 std::size_t k) {
    if (reports.size() < 2) {
        throw std::invalid_argument("intersection needs at least two projects");
    }
    std::set<std::string> acc;
    bool first = true;
    for (const auto& report : reports) {
        const InclusionPoint* point = nullptr;
        for (const auto& p : report.series) {
            if (p.k == k) {
                point = &p;
                break;
            }
        }
        if (!point) {
            throw std::invalid_argument("report for " + report.project +
                                        " has no K=" + std::to_string(k) + " point");
        }
        std::set<std::string> hits(point->hits.begin(), point->hits.end());
        if (first) {
            acc = std::move(hits);
            first = false;
        } else {
            std::set<std::string> kept;
            for (const auto& w : acc) {
                if (hits.contains(w)) kept.insert(w);
            }
            acc = std::move(kept);
        }
    }
    return acc;
}

void emit_figure_data(std::span<const InclusionReport> reports, const std::string& csv_path,
                      const std::string& json_path) {
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw IoError("cannot write " + csv_path);
        csv << "project,K,rate\n";
        for (const auto& report : reports) {
            for (const auto& point : report.series) {
                csv << csv::escape(report.project) << ',' << point.k << ','
                    << format_rate(point.rate) << '\n';
            }
        }
        if (!csv) throw IoError("write failed: " + csv_path);
    }
    {
        json bundle;
        json arr = json::array();
        for (const auto& report : reports) arr.push_back(report_to_json_obj(report));
        bundle["reports"] = std::move(arr);
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + json_path);
        out << bundle.dump(2) << '\n';
        if (!out) throw IoError("write failed: " + json_path);
    }
}

void emit_figure_data(std::span<const InclusionReport> reports, const std::string& out_path) {
    std::string json_path = out_path;
    const std::size_t dot = json_path.rfind('.');
    if (dot != std::string::npos && json_path.find('/', dot) == std::string::npos) {
        json_path.resize(dot);
    }
    json_path += ".json";
    emit_figure_data(reports, out_path, json_path);
}

std::string inclusion_report_to_json(const InclusionReport& report) {
    return report_to_json_obj(report).dump(2) + "\n";
}

} // namespace revcue
