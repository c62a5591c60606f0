#include "morphkit/decision_tree.hpp"

#include "morphkit/affixes.hpp"
#include "morphkit/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace morphkit {

FeatureVector extract_features(std::string_view word, const Segmentation& segmentation)
{
    FeatureVector fv;
    fv.stem = segmentation.stem;
    if (!segmentation.prefixes.empty())
        fv.prefix = segmentation.prefixes.back();
    if (!segmentation.suffixes.empty())
        fv.suffix = segmentation.suffixes.back();
    fv.composite_suffix = segmentation.composite_suffix;
    fv.cv_pattern = cv_pattern(word);
    fv.gemination = detect_gemination(word).geminated;
    return fv;
}

std::string inherited_feature_name(Property p)
{
    return "inherited:" + std::string(name(p));
}

Features to_features(const FeatureVector& fv)
{
    auto value = [](const std::optional<std::string>& v) { return v ? *v : std::string(kAbsentValue); };
    Features f;
    f["stem"] = fv.stem;
    f["prefix"] = value(fv.prefix);
    f["suffix"] = value(fv.suffix);
    f["composite_suffix"] = value(fv.composite_suffix);
    f["cv_pattern"] = fv.cv_pattern;
    f["gemination"] = fv.gemination ? "true" : "false";
    for (const auto& [p, v] : fv.inherited)
        f[inherited_feature_name(p)] = v;
    return f;
}

namespace {

double entropy_of(const std::map<std::string, std::size_t>& counts, std::size_t total)
{
    if (total == 0)
        return 0.0;
    double h = 0.0;
    for (const auto& [label, c] : counts) {
        if (c == 0)
            continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

const std::string& feature_value(const Features& f, std::string_view feature)
{
    static const std::string kMissing(kAbsentValue);
    auto it = f.find(feature);
    return it == f.end() ? kMissing : it->second;
}

using Items = std::vector<const Instance*>;

std::map<std::string, std::size_t> distribution(const Items& items)
{
    std::map<std::string, std::size_t> d;
    for (const auto* i : items)
        ++d[i->label];
    return d;
}

double gain(const Items& items, std::string_view feature)
{
    const auto total = items.size();
    const double base = entropy_of(distribution(items), total);
    std::map<std::string, std::map<std::string, std::size_t>> by_value;
    for (const auto* i : items)
        ++by_value[feature_value(i->features, feature)][i->label];
    double conditional = 0.0;
    for (const auto& [v, counts] : by_value) {
        std::size_t n = 0;
        for (const auto& [l, c] : counts)
            n += c;
        conditional += static_cast<double>(n) / static_cast<double>(total) * entropy_of(counts, n);
    }
    return std::max(0.0, base - conditional);
}

std::string majority(const std::map<std::string, std::size_t>& d)
{
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [label, c] : d)  // map order gives lexicographic tie-break
        if (c > best_count) {
            best = label;
            best_count = c;
        }
    return best;
}

constexpr double kGainEpsilon = 1e-12;

DecisionTree::Node grow(const Items& items, std::vector<std::string> available, int depth, const TrainParams& params)
{
    DecisionTree::Node node;
    node.distribution = distribution(items);
    node.count = items.size();
    node.label = majority(node.distribution);

    const bool pure = node.distribution.size() <= 1;
    const bool depth_reached = params.max_depth && depth >= *params.max_depth;
    if (pure || available.empty() || depth_reached || items.size() < static_cast<std::size_t>(params.min_leaf))
        return node;

    std::optional<std::size_t> best;
    double best_gain = 0.0;
    for (std::size_t k = 0; k < available.size(); ++k) {
        std::map<std::string, std::size_t> branch_sizes;
        for (const auto* i : items)
            ++branch_sizes[feature_value(i->features, available[k])];
        std::size_t big_enough = 0;
        for (const auto& [v, n] : branch_sizes)
            if (n >= static_cast<std::size_t>(params.min_leaf))
                ++big_enough;
        if (branch_sizes.size() < 2 || big_enough < 2)
            continue;
        const double g = gain(items, available[k]);
        if (!best || g > best_gain + kGainEpsilon) {
            best = k;
            best_gain = g;
        }
    }
    if (!best)
        return node;

    node.feature = available[*best];
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(*best));
    std::map<std::string, Items> partition;
    for (const auto* i : items)
        partition[feature_value(i->features, node.feature)].push_back(i);
    for (auto& [value, sub] : partition) {
        auto child = grow(sub, available, depth + 1, params);
        child.value = value;
        node.children.push_back(std::move(child));
    }
    return node;
}

std::size_t depth_of(const DecisionTree::Node& n)
{
    std::size_t d = 0;
    for (const auto& c : n.children)
        d = std::max(d, 1 + depth_of(c));
    return d;
}

std::size_t leaves_of(const DecisionTree::Node& n)
{
    if (n.is_leaf())
        return 1;
    std::size_t k = 0;
    for (const auto& c : n.children)
        k += leaves_of(c);
    return k;
}

}  // namespace

double entropy(std::span<const Instance> instances)
{
    std::map<std::string, std::size_t> d;
    for (const auto& i : instances)
        ++d[i.label];
    return entropy_of(d, instances.size());
}

double information_gain(std::span<const Instance> instances, std::string_view feature)
{
    if (instances.empty())
        throw Error(ErrorKind::precondition, "information gain of an empty instance set");
    Items items;
    for (const auto& i : instances)
        items.push_back(&i);
    return gain(items, feature);
}

void TrainParams::validate() const
{
    if (min_leaf < 1)
        throw Error(ErrorKind::precondition, "min_leaf must be >= 1");
    if (max_depth && *max_depth < 0)
        throw Error(ErrorKind::precondition, "max_depth must be >= 0");
}

DecisionTree train(std::span<const Instance> instances, std::string target, const TrainParams& params)
{
    params.validate();
    if (instances.empty())
        throw Error(ErrorKind::precondition, "cannot train a tree on zero instances");
    std::set<std::string> names;
    Items items;
    for (const auto& i : instances) {
        items.push_back(&i);
        for (const auto& [f, v] : i.features)
            names.insert(f);
    }
    return DecisionTree(std::move(target), grow(items, {names.begin(), names.end()}, 0, params));
}

Prediction DecisionTree::predict(const Features& features) const
{
    const Node* cur = &root_;
    while (!cur->is_leaf()) {
        auto it = features.find(cur->feature);
        if (it == features.end())
            break;
        auto child = std::lower_bound(cur->children.begin(), cur->children.end(), it->second,
                                      [](const Node& n, const std::string& v) { return n.value < v; });
        if (child == cur->children.end() || child->value != it->second)
            break;
        cur = &*child;
    }
    const auto hit = cur->distribution.find(cur->label);
    const double conf = cur->count == 0 || hit == cur->distribution.end()
                            ? 0.0
                            : static_cast<double>(hit->second) / static_cast<double>(cur->count);
    return {cur->label, conf};
}

std::size_t DecisionTree::depth() const
{
    return depth_of(root_);
}

std::size_t DecisionTree::leaf_count() const
{
    return leaves_of(root_);
}

namespace {

constexpr std::string_view kFormat = "morphkit-decision-tree";
constexpr int kVersion = 1;

nlohmann::json node_to_json(const DecisionTree::Node& n)
{
    nlohmann::json j;
    j["count"] = n.count;
    j["label"] = n.label;
    j["distribution"] = n.distribution;
    if (!n.is_leaf()) {
        j["feature"] = n.feature;
        auto branches = nlohmann::json::array();
        for (const auto& c : n.children)
            branches.push_back({{"value", c.value}, {"node", node_to_json(c)}});
        j["branches"] = std::move(branches);
    }
    return j;
}

DecisionTree::Node node_from_json(const nlohmann::json& j)
{
    DecisionTree::Node n;
    n.count = j.at("count").get<std::size_t>();
    n.label = j.at("label").get<std::string>();
    n.distribution = j.at("distribution").get<std::map<std::string, std::size_t>>();
    if (j.contains("feature")) {
        n.feature = j.at("feature").get<std::string>();
        for (const auto& b : j.at("branches")) {
            auto child = node_from_json(b.at("node"));
            child.value = b.at("value").get<std::string>();
            n.children.push_back(std::move(child));
        }
        std::sort(n.children.begin(), n.children.end(),
                  [](const auto& a, const auto& b) { return a.value < b.value; });
    }
    return n;
}

}  // namespace

std::string serialize(const DecisionTree& tree)
{
    nlohmann::json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["target"] = tree.target();
    j["root"] = node_to_json(tree.root());
    return j.dump(1) + "\n";
}

DecisionTree deserialize(std::string_view text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("format").get<std::string>() != kFormat)
            throw Error(ErrorKind::schema, "not a serialized decision tree");
        if (j.at("version").get<int>() != kVersion)
            throw Error(ErrorKind::schema, "unsupported decision tree version");
        return DecisionTree(j.at("target").get<std::string>(), node_from_json(j.at("root")));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::schema, std::string("malformed decision tree: ") + e.what());
    }
}

double training_accuracy(const DecisionTree& tree, std::span<const Instance> instances)
{
    if (instances.empty())
        return 0.0;
    std::size_t hits = 0;
    for (const auto& i : instances)
        hits += tree.predict(i.features).label == i.label ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(instances.size());
}

}  // namespace morphkit
