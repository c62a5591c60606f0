#pragma once

// Chained property classifiers and the search for a good chaining order.

#include "morphkit/affixes.hpp"
#include "morphkit/decision_tree.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/morph_label.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace morphkit {

/// Where a labelled entry's segmentation comes from.
enum class SegmentationSource {
    automatic,             // always segment() with the inventory
    lexicon_when_present,  // the entry's known segmentation, else segment()
};

Segmentation segmentation_for(const LabelledEntry& entry, const AffixInventory& inventory,
                              SegmentationSource source);

class Cascade {
public:
    Cascade() = default;
    Cascade(std::vector<Property> order, std::map<Property, DecisionTree> trees, AffixInventory inventory);

    const std::vector<Property>& order() const { return order_; }
    const DecisionTree& tree(Property p) const;
    const AffixInventory& inventory() const { return inventory_; }

    /// Segments with the stored inventory. Properties outside the order are null.
    MorphLabel classify(std::string_view word) const;
    MorphLabel classify(std::string_view word, const Segmentation& segmentation) const;
    /// Chains predictions: each tree sees the labels predicted before it.
    MorphLabel classify(const FeatureVector& basic) const;

private:
    std::vector<Property> order_;
    std::map<Property, DecisionTree> trees_;
    AffixInventory inventory_;
};

/// Training instances for the classifier at `position` of `order`. Inherited
/// features carry the gold labels of the earlier properties.
std::vector<Instance> build_instances(std::span<const LabelledEntry> entries, const AffixInventory& inventory,
                                      std::span<const Property> order, std::size_t position);

/// Throws Error(precondition) on an empty train set or an order with
/// duplicates or no properties.
Cascade train_cascade(std::span<const LabelledEntry> train, const AffixInventory& inventory,
                      std::span<const Property> order, const TrainParams& params);

enum class SearchStrategy { exhaustive, greedy };

std::string_view name(SearchStrategy s);
std::optional<SearchStrategy> parse_search_strategy(std::string_view s);

struct SequenceSearchParams {
    SearchStrategy strategy = SearchStrategy::greedy;
    int beam = 3;
    /// Properties to order; defaults to all seven.
    std::vector<Property> properties{kDefaultOrder.begin(), kDefaultOrder.end()};
    TrainParams tree;

    void validate() const;
};

struct SearchResult {
    std::vector<Property> order;
    double score = 0.0;
    std::size_t orders_scored = 0;
};

/// Mean held-out accuracy (chained predictions) of one order. Held-out
/// entries use their known segmentation when present.
double score_order(std::span<const LabelledEntry> train, std::span<const LabelledEntry> heldout,
                   const AffixInventory& inventory, std::span<const Property> order, const TrainParams& params);

/// Ties resolve to the lexicographically smallest order of property names.
/// Throws Error(precondition) when a surface occurs in both sets.
SearchResult search_best_order(std::span<const LabelledEntry> train, std::span<const LabelledEntry> heldout,
                               const AffixInventory& inventory, const SequenceSearchParams& params);

/// Bundle directory: manifest.json, one <property>.tree.json per property
/// and the affix inventory.
void save_bundle(const Cascade& cascade, const std::filesystem::path& dir);
Cascade load_bundle(const std::filesystem::path& dir);

}  // namespace morphkit
