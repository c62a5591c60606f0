#pragma once

// Corpus, labelled-lexicon and cluster-evaluation readers, plus the seeded
// train / held-out / test split.

#include "morphkit/morph_label.hpp"
#include "morphkit/segmentation.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace morphkit {

struct WordEntry {
    std::string surface;
    std::uint64_t frequency = 1;

    bool operator==(const WordEntry&) const = default;
};

struct LabelledEntry {
    std::string surface;
    std::optional<std::string> lemma;
    MorphLabel label;
    Origin origin = Origin::unknown;
    /// Known segmentation, when the lexicon provides one.
    std::optional<Segmentation> segmentation;

    bool operator==(const LabelledEntry&) const = default;
};

enum class Quality {
    very_bad = 1,
    bad = 2,
    medium = 3,
    good = 4,
    very_good = 5,
};

std::string_view name(Quality q);
std::optional<Quality> parse_quality(std::string_view s);

struct ClusterEvalRecord {
    std::string cluster_id;
    std::string expert_id;
    Quality quality = Quality::medium;
    std::set<std::string> removed_words;

    bool operator==(const ClusterEvalRecord&) const = default;
};

struct DatasetSplit {
    std::vector<LabelledEntry> train;
    std::vector<LabelledEntry> heldout;
    std::vector<LabelledEntry> test;
    std::uint64_t seed = 0;
};

/// Tokenizes and counts. Sorted by descending frequency, then surface.
std::vector<WordEntry> count_tokens(const std::vector<std::string>& tokens);
std::vector<WordEntry> load_corpus(std::istream& in);
std::vector<WordEntry> load_corpus_text(std::string_view text);

/// Reads a whole stream into a string.
std::string slurp(std::istream& in);

inline constexpr std::array<std::string_view, 10> kLexiconColumns = {
    "surface", "lemma", "person", "number", "gender",
    "dir_obj", "ind_obj", "tam", "polarity", "origin",
};

/// Optional trailing column holding a known segmentation.
inline constexpr std::string_view kSegmentationColumn = "segmentation";

struct LexiconLoad {
    std::vector<LabelledEntry> entries;
    std::size_t duplicates_dropped = 0;
};

/// Reads the labelled-lexicon TSV. Blank cells are null; an unknown enum token
/// raises ParseError carrying the line number. Identical rows are dropped and
/// counted.
LexiconLoad load_labelled_lexicon(std::istream& in);

void write_labelled_lexicon(std::ostream& out, const std::vector<LabelledEntry>& entries);

/// Splits by distinct surface form. `fractions` are (train, heldout, test);
/// they must be non-negative with 0 < sum <= 1 and are normalized to the full
/// input. A part with a positive fraction is never empty (else precondition).
DatasetSplit split_dataset(const std::vector<LabelledEntry>& entries,
                           const std::array<double, 3>& fractions, std::uint64_t seed);

class ClusterSet;

/// Reads the cluster-evaluation CSV (cluster_id, expert_id, quality,
/// removed_words). Every referenced cluster must exist in `clusters` and
/// every removed word must be one of its members.
std::vector<ClusterEvalRecord> load_cluster_evals(std::istream& in, const ClusterSet& clusters);

void write_cluster_evals(std::ostream& out, const std::vector<ClusterEvalRecord>& records);

/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace morphkit
