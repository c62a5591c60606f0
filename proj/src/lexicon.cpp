#include "morphkit/lexicon.hpp"

#include "morphkit/clustering.hpp"
#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace morphkit {

namespace {

void strip_cr(std::string& line)
{
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
}

bool is_blank(std::string_view line)
{
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::string_view name(Quality q)
{
    switch (q) {
    case Quality::very_bad: return "very_bad";
    case Quality::bad: return "bad";
    case Quality::medium: return "medium";
    case Quality::good: return "good";
    case Quality::very_good: return "very_good";
    }
    return "medium";
}

std::optional<Quality> parse_quality(std::string_view s)
{
    for (auto q : {Quality::very_bad, Quality::bad, Quality::medium, Quality::good, Quality::very_good})
        if (name(q) == s)
            return q;
    return std::nullopt;
}

std::string slurp(std::istream& in)
{
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<WordEntry> count_tokens(const std::vector<std::string>& tokens)
{
    std::map<std::string, std::uint64_t> counts;
    for (const auto& t : tokens)
        ++counts[t];
    std::vector<WordEntry> out;
    out.reserve(counts.size());
    for (auto& [surface, n] : counts)
        out.push_back({surface, n});
    std::stable_sort(out.begin(), out.end(),
                     [](const WordEntry& a, const WordEntry& b) { return a.frequency > b.frequency; });
    return out;
}

std::vector<WordEntry> load_corpus_text(std::string_view text)
{
    return count_tokens(text::tokenize(text));
}

std::vector<WordEntry> load_corpus(std::istream& in)
{
    return load_corpus_text(slurp(in));
}

LexiconLoad load_labelled_lexicon(std::istream& in)
{
    LexiconLoad result;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(1, "missing header row");
    ++line_no;
    strip_cr(line);
    const auto header = text::split(line, '\t');
    const bool has_segmentation = header.size() == kLexiconColumns.size() + 1;
    bool header_ok = header.size() == kLexiconColumns.size() || has_segmentation;
    for (std::size_t i = 0; header_ok && i < kLexiconColumns.size(); ++i)
        header_ok = header[i] == kLexiconColumns[i];
    if (header_ok && has_segmentation)
        header_ok = header.back() == kSegmentationColumn;
    if (!header_ok)
        throw ParseError(1, "header does not match lexicon schema");

    std::map<std::pair<std::string, MorphLabel>, bool> seen;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (is_blank(line))
            continue;
        const auto cells = text::split(line, '\t');
        if (cells.size() != header.size())
            throw ParseError(line_no, "expected " + std::to_string(header.size()) + " cells, found " +
                                          std::to_string(cells.size()));
        LabelledEntry e;
        try {
            e.surface = text::normalize(cells[0]);
        } catch (const DecodeError& err) {
            throw ParseError(line_no, err.what());
        }
        if (e.surface.empty())
            throw ParseError(line_no, "empty surface");
        if (!cells[1].empty())
            e.lemma = text::normalize(cells[1]);

        static constexpr std::array<std::pair<std::size_t, Property>, 7> kPropertyCells = {{
            {2, Property::person},  {3, Property::number},   {4, Property::gender},
            {5, Property::dir_obj}, {6, Property::ind_obj},  {7, Property::tam},
            {8, Property::polarity},
        }};
        for (auto [col, prop] : kPropertyCells) {
            const auto& cell = cells[col];
            if (cell.empty())
                continue;
            if (!is_valid_value(prop, cell))
                throw ParseError(line_no, "unknown " + std::string(name(prop)) + " value '" + cell + "'");
            e.label.set(prop, cell);
        }
        const auto origin = parse_origin(cells[9]);
        if (!origin)
            throw ParseError(line_no, "unknown origin value '" + cells[9] + "'");
        e.origin = *origin;

        if (has_segmentation && !cells[10].empty()) {
            try {
                e.segmentation = parse_segmentation(text::normalize(cells[10]));
            } catch (const Error& err) {
                throw ParseError(line_no, err.what());
            }
            if (e.segmentation->surface() != e.surface)
                throw ParseError(line_no, "segmentation does not spell the surface form");
        }

        auto key = std::make_pair(e.surface, e.label);
        if (seen.contains(key)) {
            ++result.duplicates_dropped;
            continue;
        }
        seen.emplace(std::move(key), true);
        result.entries.push_back(std::move(e));
    }
    return result;
}

void write_labelled_lexicon(std::ostream& out, const std::vector<LabelledEntry>& entries)
{
    const bool with_seg = std::any_of(entries.begin(), entries.end(),
                                      [](const LabelledEntry& e) { return e.segmentation.has_value(); });
    for (std::size_t i = 0; i < kLexiconColumns.size(); ++i)
        out << (i ? "\t" : "") << kLexiconColumns[i];
    if (with_seg)
        out << '\t' << kSegmentationColumn;
    out << '\n';
    auto cell = [](const std::optional<std::string>& v) { return v ? *v : std::string(); };
    for (const auto& e : entries) {
        out << e.surface << '\t' << cell(e.lemma) << '\t' << cell(e.label.get(Property::person)) << '\t'
            << cell(e.label.get(Property::number)) << '\t' << cell(e.label.get(Property::gender)) << '\t'
            << cell(e.label.get(Property::dir_obj)) << '\t' << cell(e.label.get(Property::ind_obj)) << '\t'
            << cell(e.label.get(Property::tam)) << '\t' << cell(e.label.get(Property::polarity)) << '\t'
            << name(e.origin);
        if (with_seg)
            out << '\t' << (e.segmentation ? format_segmentation(*e.segmentation) : std::string());
        out << '\n';
    }
}

DatasetSplit split_dataset(const std::vector<LabelledEntry>& entries, const std::array<double, 3>& fractions,
                           std::uint64_t seed)
{
    double sum = 0.0;
    for (double f : fractions) {
        if (!(f >= 0.0))
            throw Error(ErrorKind::precondition, "split fractions must be non-negative");
        sum += f;
    }
    if (sum > 1.0 + 1e-12 || sum <= 0.0)
        throw Error(ErrorKind::precondition, "split fractions must sum to a value in (0, 1]");

    std::vector<std::string> surfaces;
    for (const auto& e : entries)
        surfaces.push_back(e.surface);
    std::sort(surfaces.begin(), surfaces.end());
    surfaces.erase(std::unique(surfaces.begin(), surfaces.end()), surfaces.end());
    const std::size_t n = surfaces.size();

    // Largest-remainder apportionment of the normalized fractions.
    std::array<std::size_t, 3> sizes{};
    std::array<double, 3> remainders{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double quota = fractions[i] / sum * static_cast<double>(n);
        sizes[i] = static_cast<std::size_t>(std::floor(quota));
        remainders[i] = quota - static_cast<double>(sizes[i]);
        assigned += sizes[i];
    }
    std::array<std::size_t, 3> by_remainder = {0, 1, 2};
    std::stable_sort(by_remainder.begin(), by_remainder.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned)
        ++sizes[by_remainder[k % 3]];
    for (std::size_t i = 0; i < 3; ++i)
        if (fractions[i] > 0.0 && sizes[i] == 0)
            throw Error(ErrorKind::precondition,
                        "too few distinct surface forms (" + std::to_string(n) + ") to populate every split");

    // Fisher-Yates with explicit modulo so the permutation does not depend on
    // the standard library's shuffle implementation.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i)
        std::swap(surfaces[i - 1], surfaces[rng() % i]);

    std::map<std::string, int> part_of;
    for (std::size_t i = 0; i < n; ++i)
        part_of[surfaces[i]] = i < sizes[0] ? 0 : (i < sizes[0] + sizes[1] ? 1 : 2);

    DatasetSplit split;
    split.seed = seed;
    for (const auto& e : entries) {
        switch (part_of[e.surface]) {
        case 0: split.train.push_back(e); break;
        case 1: split.heldout.push_back(e); break;
        default: split.test.push_back(e); break;
        }
    }
    return split;
}

std::vector<std::string> parse_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::vector<ClusterEvalRecord> load_cluster_evals(std::istream& in, const ClusterSet& clusters)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw ParseError(1, "missing header row");
    strip_cr(line);
    if (parse_csv_line(line) != std::vector<std::string>{"cluster_id", "expert_id", "quality", "removed_words"})
        throw ParseError(1, "header must be cluster_id,expert_id,quality,removed_words");

    std::vector<ClusterEvalRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (is_blank(line))
            continue;
        const auto cells = parse_csv_line(line);
        if (cells.size() != 4)
            throw ParseError(line_no, "expected 4 fields");
        ClusterEvalRecord r;
        r.cluster_id = cells[0];
        r.expert_id = cells[1];
        const auto q = parse_quality(cells[2]);
        if (!q)
            throw ParseError(line_no, "unknown quality '" + cells[2] + "'");
        r.quality = *q;
        const Cluster* c = clusters.find(r.cluster_id);
        if (!c)
            throw ParseError(line_no, "unknown cluster '" + r.cluster_id + "'");
        if (!cells[3].empty()) {
            for (const auto& raw : text::split(cells[3], ';')) {
                if (is_blank(raw))
                    continue;
                const auto word = text::normalize(raw);
                if (!c->contains(word))
                    throw ParseError(line_no, "removed word '" + word + "' is not a member of cluster " +
                                                  r.cluster_id);
                r.removed_words.insert(word);
            }
        }
        records.push_back(std::move(r));
    }
    return records;
}

void write_cluster_evals(std::ostream& out, const std::vector<ClusterEvalRecord>& records)
{
    out << "cluster_id,expert_id,quality,removed_words\n";
    for (const auto& r : records) {
        out << r.cluster_id << ',' << r.expert_id << ',' << name(r.quality) << ',';
        bool first = true;
        for (const auto& w : r.removed_words) {
            out << (first ? "" : ";") << w;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace morphkit
