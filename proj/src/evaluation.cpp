#include "morphkit/evaluation.hpp"

#include "morphkit/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace morphkit {

namespace {

struct Tally {
    std::map<Property, std::size_t> hits;
    std::size_t total = 0;

    void add(const Cascade& cascade, const LabelledEntry& e, const MorphLabel& predicted)
    {
        ++total;
        for (auto p : cascade.order())
            hits[p] += predicted.get(p) == e.label.get(p) ? 1 : 0;
    }

    AccuracyMap accuracies(const Cascade& cascade) const
    {
        AccuracyMap out;
        for (auto p : cascade.order()) {
            auto it = hits.find(p);
            const auto h = it == hits.end() ? 0 : it->second;
            out[p] = static_cast<double>(h) / static_cast<double>(total);
        }
        return out;
    }
};

}  // namespace

AccuracyMap evaluate(const Cascade& cascade, std::span<const LabelledEntry> entries, SegmentationSource source)
{
    if (entries.empty())
        throw Error(ErrorKind::precondition, "cannot evaluate on an empty set");
    Tally t;
    for (const auto& e : entries)
        t.add(cascade, e, cascade.classify(e.surface, segmentation_for(e, cascade.inventory(), source)));
    return t.accuracies(cascade);
}

double mean_accuracy(const AccuracyMap& accuracies)
{
    if (accuracies.empty())
        throw Error(ErrorKind::precondition, "mean of an empty accuracy map");
    double sum = 0.0;
    for (const auto& [p, a] : accuracies)
        sum += a;
    return sum / static_cast<double>(accuracies.size());
}

EvalReport evaluate_split(const Cascade& cascade, std::span<const LabelledEntry> gold)
{
    if (gold.empty())
        throw Error(ErrorKind::precondition, "cannot evaluate on an empty gold set");
    std::set<std::string> unknown;
    for (const auto& e : gold)
        if (e.origin == Origin::unknown)
            unknown.insert(e.surface);
    if (!unknown.empty()) {
        std::string list;
        for (const auto& s : unknown)
            list += (list.empty() ? "" : ", ") + s;
        throw Error(ErrorKind::precondition, "gold entries without origin: " + list);
    }

    Tally all, con, nc;
    for (const auto& e : gold) {
        const auto predicted = cascade.classify(e.surface);
        all.add(cascade, e, predicted);
        (e.origin == Origin::concatenative ? con : nc).add(cascade, e, predicted);
    }
    EvalReport r;
    r.order = cascade.order();
    r.gold = all.accuracies(cascade);
    r.gold_count = all.total;
    r.con_count = con.total;
    r.nc_count = nc.total;
    if (con.total > 0)
        r.con = con.accuracies(cascade);
    if (nc.total > 0)
        r.nc = nc.accuracies(cascade);
    return r;
}

namespace {

constexpr std::array<std::string_view, 5> kReportColumns = {
    "property", "acc_traditional", "acc_gold", "acc_con", "acc_nc",
};

std::string format_number(double v)
{
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::array<const std::optional<AccuracyMap>*, 4> columns(const EvalReport& r)
{
    return {&r.traditional, &r.gold, &r.con, &r.nc};
}

}  // namespace

void write_report_csv(std::ostream& out, const EvalReport& report)
{
    for (std::size_t i = 0; i < kReportColumns.size(); ++i)
        out << (i ? "," : "") << kReportColumns[i];
    out << '\n';
    for (auto p : report.order) {
        out << short_name(p);
        for (const auto* col : columns(report)) {
            out << ',';
            if (*col) {
                auto it = (*col)->find(p);
                if (it != (*col)->end())
                    out << format_number(it->second);
            }
        }
        out << '\n';
    }
}

void export_report(const EvalReport& report, const std::filesystem::path& path)
{
    std::ostringstream buf;
    write_report_csv(buf, report);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::io, "cannot write " + path.string());
    out << buf.str();
    if (!out)
        throw Error(ErrorKind::io, "write failed: " + path.string());
}

EvalReport read_report_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, "empty report");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = parse_csv_line(line);
    if (header.size() != kReportColumns.size() || !std::equal(header.begin(), header.end(), kReportColumns.begin()))
        throw ParseError(1, "report header must be property,acc_traditional,acc_gold,acc_con,acc_nc");

    EvalReport r;
    std::array<std::optional<AccuracyMap>*, 4> cols = {&r.traditional, &r.gold, &r.con, &r.nc};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = parse_csv_line(line);
        if (cells.size() != kReportColumns.size())
            throw ParseError(line_no, "expected 5 cells");
        const auto p = parse_property(cells[0]);
        if (!p)
            throw ParseError(line_no, "unknown property '" + cells[0] + "'");
        r.order.push_back(*p);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& cell = cells[c + 1];
            if (cell.empty())
                continue;
            double v = 0.0;
            const char* end = cell.data() + cell.size();
            if (std::from_chars(cell.data(), end, v).ptr != end || v < 0.0 || v > 1.0)
                throw ParseError(line_no, "bad accuracy '" + cell + "'");
            if (!*cols[c])
                *cols[c] = AccuracyMap{};
            (**cols[c])[*p] = v;
        }
    }
    return r;
}

std::string render_bars(const EvalReport& report, int width)
{
    if (width < 1)
        throw Error(ErrorKind::precondition, "bar width must be >= 1");
    auto bar = [&](double v) {
        const auto filled = static_cast<int>(std::lround(v * width));
        return std::string(static_cast<std::size_t>(filled), '#') + std::string(static_cast<std::size_t>(width - filled), '.');
    };
    std::ostringstream out;
    auto section = [&](const char* title, std::array<std::pair<const char*, const std::optional<AccuracyMap>*>, 2> rows) {
        if (!*rows[0].second && !*rows[1].second)
            return;
        out << title << '\n';
        for (auto p : report.order)
            for (const auto& [label, col] : rows) {
                if (!*col || !(*col)->contains(p))
                    continue;
                const double v = (*col)->at(p);
                char num[16];
                std::snprintf(num, sizeof num, "%.3f", v);
                out << "  " << short_name(p) << std::string(4 - short_name(p).size(), ' ') << label << " |"
                    << bar(v) << "| " << num << '\n';
            }
    };
    section("traditional vs gold", {{{"trad", &report.traditional}, {"gold", &report.gold}}});
    section("concatenative vs non-concatenative", {{{"con ", &report.con}, {"nc  ", &report.nc}}});
    return out.str();
}

}  // namespace morphkit
