#pragma once

// Basic word features and categorical decision trees (ID3-style induction on
// information gain) for single morphological properties.

#include "morphkit/morph_label.hpp"
#include "morphkit/segmentation.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morphkit {

/// Basic features of one word plus labels inherited from earlier classifiers.
struct FeatureVector {
    std::string stem;
    std::optional<std::string> prefix;            // innermost stripped prefix
    std::optional<std::string> suffix;            // outermost stripped suffix
    std::optional<std::string> composite_suffix;
    std::string cv_pattern;                       // of the full surface form
    bool gemination = false;                      // of the full surface form
    std::vector<std::pair<Property, std::string>> inherited;  // in cascade order

    bool operator==(const FeatureVector&) const = default;
};

FeatureVector extract_features(std::string_view word, const Segmentation& segmentation);

/// Feature name -> categorical value.
using Features = std::map<std::string, std::string, std::less<>>;

/// Value used for absent affixes.
inline constexpr std::string_view kAbsentValue = "<none>";

/// "inherited:<property>".
std::string inherited_feature_name(Property p);

Features to_features(const FeatureVector& fv);

struct Instance {
    Features features;
    std::string label;
};

/// Base-2 entropy of the label distribution.
double entropy(std::span<const Instance> instances);

/// H(label) - sum_v p(v) H(label | feature = v). A missing feature counts as
/// its own value.
double information_gain(std::span<const Instance> instances, std::string_view feature);

struct TrainParams {
    /// A node is split only if at least two branches receive this many instances.
    int min_leaf = 2;
    /// Root is depth 0; nullopt means unlimited.
    std::optional<int> max_depth;

    void validate() const;
};

struct Prediction {
    std::string label;
    double confidence = 0.0;
};

class DecisionTree {
public:
    struct Node {
        std::string value;    // branch value that leads here from the parent
        std::string feature;  // empty for leaves
        std::vector<Node> children;  // sorted by value
        std::map<std::string, std::size_t> distribution;
        std::string label;    // majority, ties to the lexicographically smallest
        std::size_t count = 0;

        bool is_leaf() const { return feature.empty(); }
        bool operator==(const Node&) const = default;
    };

    DecisionTree() = default;
    DecisionTree(std::string target, Node root) : target_(std::move(target)), root_(std::move(root)) {}

    const std::string& target() const { return target_; }
    const Node& root() const { return root_; }

    /// Routes by feature values; an unseen or missing value stops at the
    /// current node and answers with its majority label.
    Prediction predict(const Features& features) const;

    std::size_t depth() const;
    std::size_t leaf_count() const;

    bool operator==(const DecisionTree&) const = default;

private:
    std::string target_;
    Node root_;
};

DecisionTree train(std::span<const Instance> instances, std::string target, const TrainParams& params);

/// Versioned JSON text.
std::string serialize(const DecisionTree& tree);
DecisionTree deserialize(std::string_view text);

/// Fraction of instances whose label the tree reproduces.
double training_accuracy(const DecisionTree& tree, std::span<const Instance> instances);

}  // namespace morphkit
