#pragma once

// Stem-keyed clustering of morphological relatives with bounded
// similarity-driven merging.

#include "morphkit/segmentation.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace morphkit {

struct Cluster {
    std::string id;
    std::vector<std::string> members;    // sorted, unique
    std::vector<std::string> stem_keys;  // sorted, unique
    int merge_depth = 0;

    bool contains(std::string_view word) const;
    bool operator==(const Cluster&) const = default;
};

class ClusterSet {
public:
    ClusterSet() = default;
    explicit ClusterSet(std::vector<Cluster> clusters);

    const std::vector<Cluster>& clusters() const { return clusters_; }
    std::size_t size() const { return clusters_.size(); }
    bool empty() const { return clusters_.empty(); }

    /// nullptr when absent.
    const Cluster* find(std::string_view id) const;

    /// Total number of member words.
    std::size_t vocabulary_size() const;

    bool operator==(const ClusterSet& o) const { return clusters_ == o.clusters_; }

private:
    std::vector<Cluster> clusters_;  // ordered by first member
    std::unordered_map<std::string, std::size_t> index_;
};

/// 64-bit FNV-1a over the sorted members, each followed by a newline,
/// rendered as "c" + 16 hex digits.
std::string cluster_id_for(const std::vector<std::string>& sorted_members);

/// Words with identical stems share a cluster.
ClusterSet initial_clusters(std::span<const Segmentation> segmentations);

/// 2·|longest common substring| / (|a| + |b|), over code points.
double orthographic_similarity(std::string_view a, std::string_view b);

/// Windowed co-occurrence counts. Context dimensions are indexed into
/// `context_vocabulary`; each vector is sorted by dimension.
struct ContextVectors {
    using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

    std::vector<std::string> context_vocabulary;
    std::unordered_map<std::string, SparseVector> vectors;

    /// Empty vector for unknown words.
    const SparseVector& vector_for(std::string_view word) const;
    /// Count of `context` around `word`, 0 if absent.
    double count(std::string_view word, std::string_view context) const;
};

ContextVectors build_context_vectors(std::span<const std::string> corpus_tokens,
                                     std::span<const std::string> vocabulary, int window);

/// Cosine of the two count vectors; 0 when either is all-zero.
double semantic_similarity(std::string_view a, std::string_view b, const ContextVectors& vectors);

struct SimilarityParams {
    double ortho_threshold = 0.6;
    double sem_threshold = 0.2;
    int window = 3;
    int max_merge_rounds = 2;

    /// Throws Error(precondition) when out of range.
    void validate() const;
};

/// Runs up to max_merge_rounds rounds. Each round merges cluster pairs whose
/// best member-pair orthographic and semantic similarities both exceed their
/// thresholds, highest mean affinity first, each cluster at most once.
ClusterSet merge_clusters(const ClusterSet& set, const ContextVectors& vectors, const SimilarityParams& params);

/// One cluster per line: id TAB merge_depth TAB space-separated members.
void write_clusters(std::ostream& out, const ClusterSet& set);
ClusterSet read_clusters(std::istream& in);

}  // namespace morphkit
