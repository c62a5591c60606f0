#pragma once

// Affix discovery from raw word lists and heuristic segmentation.
//
// A boundary is proposed where a trie node branches: in the forward trie the
// node at the end of a candidate stem has several continuations (successor
// variety), so the material below it is a suffix candidate; in the backward
// trie the same test at the start of a stem yields prefix candidates. Each
// word exhibiting an affix behind a qualifying boundary adds one to the
// affix's support and log2(branching) to its score.

#include "morphkit/lexicon.hpp"
#include "morphkit/segmentation.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace morphkit {

enum class TrieDirection { forward, backward };

/// Character trie over word types, weighted by frequency. The backward trie
/// stores reversed words. Paths passed to queries are in trie order.
class Trie {
public:
    using NodeId = std::uint32_t;

    struct Node {
        std::uint64_t count = 0;     // tokens passing through this node
        std::uint64_t terminal = 0;  // tokens ending exactly here
        std::map<char32_t, NodeId> children;
    };

    static constexpr NodeId kRoot = 0;

    explicit Trie(TrieDirection direction = TrieDirection::forward);

    void insert(std::u32string_view word, std::uint64_t frequency);

    TrieDirection direction() const { return direction_; }
    const Node& node(NodeId id) const { return nodes_[id]; }
    std::size_t node_count() const { return nodes_.size(); }

    std::optional<NodeId> find(std::u32string_view path) const;
    std::optional<NodeId> find(std::string_view utf8_path) const;

    /// Distinct continuations at a node, counting word-end as one.
    std::size_t branching(NodeId id) const;

    /// count == terminal + sum(children counts) at every node.
    bool check_invariants() const;

private:
    TrieDirection direction_;
    std::vector<Node> nodes_;
};

Trie build_trie(std::span<const WordEntry> words, TrieDirection direction);

/// count(path + next) / count(path). Throws Error(precondition) for a path
/// that is not in the trie.
double transitional_probability(const Trie& trie, std::string_view path, char32_t next);
double transitional_probability(const Trie& trie, std::u32string_view path, char32_t next);

/// Probability that a word ends at `path`.
double end_probability(const Trie& trie, std::u32string_view path);

enum class AffixKind { prefix, suffix };

std::string_view name(AffixKind k);

struct AffixCandidate {
    std::string text;
    AffixKind kind = AffixKind::suffix;
    double score = 0.0;
    std::uint64_t support = 0;

    bool operator==(const AffixCandidate&) const = default;
};

struct AffixParams {
    int max_affix_len = 5;
    int min_count = 2;
    int branch_min = 2;
    int min_stem_len = 2;
    int max_prefixes = 2;

    /// Throws Error(precondition) when out of range.
    void validate() const;
};

/// Ranking: score descending, then length descending, then lexicographic.
bool ranks_before(const AffixCandidate& a, const AffixCandidate& b);

/// Scores affixes of one kind. Suffixes need the forward trie (stem-final
/// branching), prefixes the backward trie (stem-initial branching); a
/// mismatched trie throws Error(precondition).
std::vector<AffixCandidate> score_affixes(const Trie& trie, AffixKind kind, const AffixParams& params);

class AffixInventory {
public:
    AffixInventory() = default;
    AffixInventory(std::vector<AffixCandidate> prefixes, std::vector<AffixCandidate> suffixes,
                   AffixParams params);

    const std::vector<AffixCandidate>& prefixes() const { return prefixes_; }
    const std::vector<AffixCandidate>& suffixes() const { return suffixes_; }
    const AffixParams& params() const { return params_; }
    bool empty() const { return prefixes_.empty() && suffixes_.empty(); }

    bool has_prefix(std::u32string_view s) const { return prefix_index_.contains(std::u32string(s)); }
    bool has_suffix(std::u32string_view s) const { return suffix_index_.contains(std::u32string(s)); }
    std::size_t longest_prefix() const { return longest_prefix_; }
    std::size_t longest_suffix() const { return longest_suffix_; }

private:
    std::vector<AffixCandidate> prefixes_;
    std::vector<AffixCandidate> suffixes_;
    AffixParams params_;
    std::unordered_set<std::u32string> prefix_index_;
    std::unordered_set<std::u32string> suffix_index_;
    std::size_t longest_prefix_ = 0;
    std::size_t longest_suffix_ = 0;
};

/// Throws Error(precondition) on an empty word list or invalid params.
AffixInventory build_inventory(std::span<const WordEntry> words, const AffixParams& params);

/// Greedy longest match: suffixes first (any number), then at most
/// max_prefixes prefixes, never leaving fewer than min_stem_len characters.
Segmentation segment(std::string_view word, const AffixInventory& inventory);

/// C/V skeleton. Vowels are a e i o u; "ie" counts as one V and "għ" as one C.
std::string cv_pattern(std::string_view word);

struct Gemination {
    bool geminated = false;
    std::vector<std::size_t> positions;  // code-point index of the first of each doubled consonant pair

    bool operator==(const Gemination&) const = default;
};

Gemination detect_gemination(std::string_view word);

/// kind TAB text TAB score TAB support, prefixes then suffixes in rank order.
void write_inventory(std::ostream& out, const AffixInventory& inventory);
AffixInventory read_inventory(std::istream& in, const AffixParams& params);

/// surface TAB prefixes(+) TAB stem TAB suffixes(+)
void write_segmentations(std::ostream& out, std::span<const Segmentation> segmentations);
std::vector<Segmentation> read_segmentations(std::istream& in);

}  // namespace morphkit
