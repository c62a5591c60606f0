#pragma once

// Size, removal and quality distributions of expert-evaluated clusters, split
// into non-concatenative (NC) and concatenative (CON) groups.

#include "morphkit/clustering.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/morph_label.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace morphkit {

enum class OriginGroup { nc, con };

std::string_view name(OriginGroup g);

/// Cluster id -> origin. Only concatenative / non_concatenative are valid.
using OriginTags = std::map<std::string, Origin, std::less<>>;

struct GroupColumn {
    std::vector<std::size_t> counts;
    std::vector<int> percentages;  // round(100 * count / total), 0 for an empty group
    std::size_t total = 0;
};

struct BinnedTable {
    std::string title;
    std::vector<std::string> labels;
    GroupColumn nc;
    GroupColumn con;

    const GroupColumn& column(OriginGroup g) const { return g == OriginGroup::nc ? nc : con; }
};

/// Percentage rounded half away from zero.
int rounded_percentage(std::size_t count, std::size_t total);

/// Bins: <10, 10-19, 20-29, 30-39, >=40 members.
BinnedTable size_distribution(const ClusterSet& clusters, const OriginTags& origins);

/// Removal percentage per (cluster, expert) record. Bins are left-open,
/// right-closed except the exact-zero bin: 0%, (0,5], (5,10], (10,20],
/// (20,30], (30,40], (40,60], (60,80], (80,100].
BinnedTable removal_distribution(std::span<const ClusterEvalRecord> records, const ClusterSet& clusters,
                                 const OriginTags& origins);

/// Rating counts, Very Good first.
BinnedTable quality_distribution(std::span<const ClusterEvalRecord> records, const OriginTags& origins);

/// Product-moment correlation. Throws Error(undefined) for a constant series
/// and Error(precondition) for mismatched or too-short inputs.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// 100 * |removed| / |members|.
double removal_percentage(const ClusterEvalRecord& record, const ClusterSet& clusters);

/// Pearson r between the quality ordinal (very_bad = 1 ... very_good = 5) and
/// the negated removal percentage, over the records of one origin group. A
/// positive value means more removals go with lower ratings.
double quality_removal_correlation(std::span<const ClusterEvalRecord> records, const ClusterSet& clusters,
                                   const OriginTags& origins, OriginGroup group);

struct AnalysisReport {
    BinnedTable size_table;
    BinnedTable removal_table;
    BinnedTable quality_table;
    /// Missing when the correlation is undefined for a group.
    std::map<OriginGroup, std::optional<double>> correlations;
};

AnalysisReport analyze_clusters(const ClusterSet& clusters, std::span<const ClusterEvalRecord> records,
                                const OriginTags& origins);

/// One section per table: section,label,nc_count,nc_pct,con_count,con_pct.
void write_report_csv(std::ostream& out, const AnalysisReport& report);

/// Aligned plain-text tables, "53% (25)" cells.
void write_report_text(std::ostream& out, const AnalysisReport& report);

/// cluster_id TAB origin.
OriginTags read_origin_tags(std::istream& in);

}  // namespace morphkit
