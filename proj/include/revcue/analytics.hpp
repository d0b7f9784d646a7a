#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "revcue/collocation.hpp"
#include "revcue/cue_lexicon.hpp"

namespace revcue {

/// Inclusion of the single-word cue vocabulary among the top-k ranked words.
/// rate = |hits| / k with k as the denominator even when fewer than k words
/// qualify (short_list marks that case). hits are listed in rank order.
struct InclusionPoint {
    std::size_t k = 0;
    double rate = 0.0;
    std::vector<std::string> hits;
    bool short_list = false;
};

struct InclusionReport {
    std::string project;
    std::vector<InclusionPoint> series;
    std::string lexicon_version;
};

InclusionPoint inclusion_rate(const RankedCollocations& ranked, const CueLexicon& lexicon,
                              std::size_t k);

/// Series over strictly increasing k values (defaults 50, 100, 150, 200).
InclusionReport inclusion_series(const RankedCollocations& ranked, const CueLexicon& lexicon,
                                 const std::vector<std::size_t>& ks = {50, 100, 150, 200});

/// Cue words hit in the top-k of every project (>= 2 rankings required).
std::set<std::string> cross_project_intersection(std::span<const RankedCollocations> rankings,
                                                 const CueLexicon& lexicon, std::size_t k);

/// Same, reading the k-point hits already stored in the reports.
std::set<std::string> cross_project_intersection(std::span<const InclusionReport> reports,
                                                 std::size_t k);

/// Writes a `project,K,rate` CSV and a JSON bundle of the full reports.
/// Rates are printed with enough digits to round-trip bit-exactly.
void emit_figure_data(std::span<const InclusionReport> reports, const std::string& csv_path,
                      const std::string& json_path);

/// Single-path convenience: writes `<out>` as CSV and `<out>` with its
/// extension swapped to .json as the bundle.
void emit_figure_data(std::span<const InclusionReport> reports, const std::string& out_path);

std::string inclusion_report_to_json(const InclusionReport& report);

} // namespace revcue
