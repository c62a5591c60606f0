#include "morphkit/cluster_stats.hpp"

#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

namespace morphkit {

std::string_view name(OriginGroup g)
{
    return g == OriginGroup::nc ? "NC" : "CON";
}

int rounded_percentage(std::size_t count, std::size_t total)
{
    if (total == 0)
        return 0;
    return static_cast<int>(std::lround(100.0 * static_cast<double>(count) / static_cast<double>(total)));
}

namespace {

OriginGroup group_of(const OriginTags& origins, std::string_view cluster_id)
{
    auto it = origins.find(cluster_id);
    if (it == origins.end())
        throw Error(ErrorKind::precondition, "cluster " + std::string(cluster_id) + " has no origin tag");
    switch (it->second) {
    case Origin::concatenative: return OriginGroup::con;
    case Origin::non_concatenative: return OriginGroup::nc;
    case Origin::unknown: break;
    }
    throw Error(ErrorKind::precondition, "cluster " + std::string(cluster_id) + " has origin 'unknown'");
}

BinnedTable make_table(std::string title, std::vector<std::string> labels)
{
    BinnedTable t;
    t.title = std::move(title);
    t.nc.counts.assign(labels.size(), 0);
    t.con.counts.assign(labels.size(), 0);
    t.labels = std::move(labels);
    return t;
}

void finish(BinnedTable& t)
{
    for (GroupColumn* col : {&t.nc, &t.con}) {
        col->total = std::accumulate(col->counts.begin(), col->counts.end(), std::size_t{0});
        col->percentages.clear();
        for (auto c : col->counts)
            col->percentages.push_back(rounded_percentage(c, col->total));
    }
}

GroupColumn& column(BinnedTable& t, OriginGroup g)
{
    return g == OriginGroup::nc ? t.nc : t.con;
}

std::size_t size_bin(std::size_t members)
{
    if (members < 10)
        return 0;
    if (members < 20)
        return 1;
    if (members < 30)
        return 2;
    if (members < 40)
        return 3;
    return 4;
}

// Exact integer comparison against the right-closed upper edges.
std::size_t removal_bin(std::size_t removed, std::size_t members)
{
    if (removed == 0)
        return 0;
    static constexpr std::size_t kUpper[] = {5, 10, 20, 30, 40, 60, 80};
    for (std::size_t i = 0; i < std::size(kUpper); ++i)
        if (removed * 100 <= kUpper[i] * members)
            return i + 1;
    return 8;
}

}  // namespace

BinnedTable size_distribution(const ClusterSet& clusters, const OriginTags& origins)
{
    auto t = make_table("Cluster size", {"<10", "10-19", "20-29", "30-39", ">=40"});
    for (const auto& c : clusters.clusters())
        ++column(t, group_of(origins, c.id)).counts[size_bin(c.members.size())];
    finish(t);
    return t;
}

BinnedTable removal_distribution(std::span<const ClusterEvalRecord> records, const ClusterSet& clusters,
                                 const OriginTags& origins)
{
    auto t = make_table("Words removed",
                        {"0%", "1-5%", "5-10%", "10-20%", "20-30%", "30-40%", "40-60%", "60-80%", "over 80%"});
    for (const auto& r : records) {
        const Cluster* c = clusters.find(r.cluster_id);
        if (!c)
            throw Error(ErrorKind::precondition, "record references unknown cluster " + r.cluster_id);
        ++column(t, group_of(origins, r.cluster_id)).counts[removal_bin(r.removed_words.size(), c->members.size())];
    }
    finish(t);
    return t;
}

BinnedTable quality_distribution(std::span<const ClusterEvalRecord> records, const OriginTags& origins)
{
    auto t = make_table("Quality", {"Very Good", "Good", "Medium", "Bad", "Very Bad"});
    for (const auto& r : records)
        ++column(t, group_of(origins, r.cluster_id)).counts[5 - static_cast<std::size_t>(r.quality)];
    finish(t);
    return t;
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw Error(ErrorKind::precondition, "pearson: series lengths differ");
    if (xs.size() < 2)
        throw Error(ErrorKind::precondition, "pearson: need at least two points");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(ErrorKind::undefined, "pearson: correlation undefined for a constant series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double removal_percentage(const ClusterEvalRecord& record, const ClusterSet& clusters)
{
    const Cluster* c = clusters.find(record.cluster_id);
    if (!c)
        throw Error(ErrorKind::precondition, "record references unknown cluster " + record.cluster_id);
    return 100.0 * static_cast<double>(record.removed_words.size()) / static_cast<double>(c->members.size());
}

double quality_removal_correlation(std::span<const ClusterEvalRecord> records, const ClusterSet& clusters,
                                   const OriginTags& origins, OriginGroup group)
{
    std::vector<double> quality, removal;
    for (const auto& r : records) {
        if (group_of(origins, r.cluster_id) != group)
            continue;
        quality.push_back(static_cast<double>(r.quality));
        removal.push_back(-removal_percentage(r, clusters));
    }
    return pearson(quality, removal);
}

AnalysisReport analyze_clusters(const ClusterSet& clusters, std::span<const ClusterEvalRecord> records,
                                const OriginTags& origins)
{
    AnalysisReport report;
    report.size_table = size_distribution(clusters, origins);
    report.removal_table = removal_distribution(records, clusters, origins);
    report.quality_table = quality_distribution(records, origins);
    for (auto g : {OriginGroup::nc, OriginGroup::con}) {
        try {
            report.correlations[g] = quality_removal_correlation(records, clusters, origins, g);
        } catch (const Error&) {
            report.correlations[g] = std::nullopt;
        }
    }
    return report;
}

namespace {

std::string format_r(const std::optional<double>& r)
{
    if (!r)
        return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r);
    return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, const AnalysisReport& report)
{
    out << "# removal bins are left-open, right-closed except the exact 0% bin\n";
    out << "# correlation: quality (very_bad=1 .. very_good=5) vs negated removal percentage\n";
    out << "section,label,nc_count,nc_pct,con_count,con_pct\n";
    for (const auto* t : {&report.size_table, &report.removal_table, &report.quality_table}) {
        for (std::size_t i = 0; i < t->labels.size(); ++i)
            out << t->title << ',' << t->labels[i] << ',' << t->nc.counts[i] << ',' << t->nc.percentages[i] << ','
                << t->con.counts[i] << ',' << t->con.percentages[i] << '\n';
        out << t->title << ",Total," << t->nc.total << ",100," << t->con.total << ",100\n";
    }
    out << "Correlation,pearson," << format_r(report.correlations.at(OriginGroup::nc)) << ",,"
        << format_r(report.correlations.at(OriginGroup::con)) << ",\n";
}

void write_report_text(std::ostream& out, const AnalysisReport& report)
{
    auto cell = [](const GroupColumn& c, std::size_t i) {
        return std::to_string(c.percentages[i]) + "% (" + std::to_string(c.counts[i]) + ")";
    };
    char buf[160];
    for (const auto* t : {&report.size_table, &report.removal_table, &report.quality_table}) {
        std::snprintf(buf, sizeof buf, "%-14s | %-12s | %-12s\n", t->title.c_str(), "NC", "CON");
        out << buf << std::string(44, '-') << '\n';
        for (std::size_t i = 0; i < t->labels.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%-14s | %-12s | %-12s\n", t->labels[i].c_str(), cell(t->nc, i).c_str(),
                          cell(t->con, i).c_str());
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%-14s | %-12zu | %-12zu\n\n", "Total", t->nc.total, t->con.total);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%-14s | %-12s | %-12s\n", "Correlation",
                  format_r(report.correlations.at(OriginGroup::nc)).c_str(),
                  format_r(report.correlations.at(OriginGroup::con)).c_str());
    out << buf;
}

OriginTags read_origin_tags(std::istream& in)
{
    OriginTags tags;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line == "cluster_id\torigin")
            continue;
        const auto cells = text::split(line, '\t');
        if (cells.size() != 2)
            throw ParseError(line_no, "expected cluster_id TAB origin");
        const auto o = parse_origin(cells[1]);
        if (!o || *o == Origin::unknown)
            throw ParseError(line_no, "origin must be concatenative or non_concatenative");
        tags[cells[0]] = *o;
    }
    return tags;
}

}  // namespace morphkit
