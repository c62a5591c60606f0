#include "morphkit/cascade.hpp"

#include "morphkit/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace morphkit {

Segmentation segmentation_for(const LabelledEntry& entry, const AffixInventory& inventory,
                              SegmentationSource source)
{
    if (source == SegmentationSource::lexicon_when_present && entry.segmentation)
        return *entry.segmentation;
    return segment(entry.surface, inventory);
}

namespace {

void check_order(std::span<const Property> order)
{
    if (order.empty())
        throw Error(ErrorKind::precondition, "cascade order is empty");
    std::set<Property> seen;
    for (auto p : order)
        if (!seen.insert(p).second)
            throw Error(ErrorKind::precondition, "property '" + std::string(name(p)) + "' repeated in cascade order");
}

Features basic_features(const LabelledEntry& e, const AffixInventory& inventory, SegmentationSource source)
{
    return to_features(extract_features(e.surface, segmentation_for(e, inventory, source)));
}

}  // namespace

Cascade::Cascade(std::vector<Property> order, std::map<Property, DecisionTree> trees, AffixInventory inventory)
    : order_(std::move(order)), trees_(std::move(trees)), inventory_(std::move(inventory))
{
    check_order(order_);
    if (trees_.size() != order_.size())
        throw Error(ErrorKind::precondition, "cascade needs exactly one tree per ordered property");
    for (auto p : order_)
        if (!trees_.contains(p))
            throw Error(ErrorKind::precondition, "no tree for property '" + std::string(name(p)) + "'");
}

const DecisionTree& Cascade::tree(Property p) const
{
    auto it = trees_.find(p);
    if (it == trees_.end())
        throw Error(ErrorKind::precondition, "property '" + std::string(name(p)) + "' is not in the cascade");
    return it->second;
}

MorphLabel Cascade::classify(std::string_view word) const
{
    return classify(word, segment(word, inventory_));
}

MorphLabel Cascade::classify(std::string_view word, const Segmentation& segmentation) const
{
    return classify(extract_features(word, segmentation));
}

MorphLabel Cascade::classify(const FeatureVector& basic) const
{
    auto fv = basic;
    auto features = to_features(fv);
    MorphLabel label;
    for (auto p : order_) {
        const auto pred = trees_.at(p).predict(features).label;
        // out-of-vocabulary labels cannot come from a tree trained on valid labels,
        // but a hand-edited bundle could carry one
        if (pred == kNullLabel || is_valid_value(p, pred))
            label.set_token(p, pred);
        features[inherited_feature_name(p)] = pred;
    }
    return label;
}

std::vector<Instance> build_instances(std::span<const LabelledEntry> entries, const AffixInventory& inventory,
                                      std::span<const Property> order, std::size_t position)
{
    if (position >= order.size())
        throw Error(ErrorKind::precondition, "cascade position out of range");
    std::vector<Instance> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        Instance inst{basic_features(e, inventory, SegmentationSource::lexicon_when_present), e.label.token(order[position])};
        for (std::size_t k = 0; k < position; ++k)
            inst.features[inherited_feature_name(order[k])] = e.label.token(order[k]);
        out.push_back(std::move(inst));
    }
    return out;
}

Cascade train_cascade(std::span<const LabelledEntry> train, const AffixInventory& inventory,
                      std::span<const Property> order, const TrainParams& params)
{
    params.validate();
    check_order(order);
    if (train.empty())
        throw Error(ErrorKind::precondition, "cannot train a cascade on an empty train set");
    std::map<Property, DecisionTree> trees;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto instances = build_instances(train, inventory, order, i);
        trees.emplace(order[i], morphkit::train(instances, std::string(name(order[i])), params));
    }
    return Cascade({order.begin(), order.end()}, std::move(trees), inventory);
}

std::string_view name(SearchStrategy s)
{
    return s == SearchStrategy::exhaustive ? "exhaustive" : "greedy";
}

std::optional<SearchStrategy> parse_search_strategy(std::string_view s)
{
    if (s == "exhaustive")
        return SearchStrategy::exhaustive;
    if (s == "greedy")
        return SearchStrategy::greedy;
    return std::nullopt;
}

void SequenceSearchParams::validate() const
{
    if (beam < 1)
        throw Error(ErrorKind::precondition, "beam must be >= 1");
    if (properties.size() > kPropertyCount)
        throw Error(ErrorKind::precondition, "at most seven properties can be ordered");
    check_order(properties);
    tree.validate();
}

namespace {

// Trees depend only on which properties precede them, so they are shared
// between orders through a (property, predecessor set) cache.
class OrderScorer {
public:
    OrderScorer(std::span<const LabelledEntry> train, std::span<const LabelledEntry> heldout,
                const AffixInventory& inventory, const TrainParams& params)
        : train_(train), heldout_(heldout), params_(params)
    {
        params.validate();
        if (train.empty())
            throw Error(ErrorKind::precondition, "cannot search orders with an empty train set");
        if (heldout.empty())
            throw Error(ErrorKind::precondition, "cannot search orders with an empty held-out set");
        std::unordered_set<std::string> train_surfaces;
        for (const auto& e : train)
            train_surfaces.insert(e.surface);
        std::set<std::string> overlap;
        for (const auto& e : heldout)
            if (train_surfaces.contains(e.surface))
                overlap.insert(e.surface);
        if (!overlap.empty()) {
            std::string list;
            for (const auto& s : overlap)
                list += (list.empty() ? "" : ", ") + s;
            throw Error(ErrorKind::precondition, "train and held-out sets overlap: " + list);
        }
        for (const auto& e : train)
            train_features_.push_back(basic_features(e, inventory, SegmentationSource::lexicon_when_present));
        for (const auto& e : heldout)
            heldout_features_.push_back(basic_features(e, inventory, SegmentationSource::lexicon_when_present));
    }

    /// Correct held-out predictions summed over the properties of `order`.
    std::size_t correct(std::span<const Property> order)
    {
        std::size_t hits = 0;
        std::vector<Features> features = heldout_features_;
        std::uint32_t mask = 0;
        for (auto p : order) {
            const auto& t = tree(p, mask);
            for (std::size_t i = 0; i < heldout_.size(); ++i) {
                const auto pred = t.predict(features[i]).label;
                hits += pred == heldout_[i].label.token(p) ? 1 : 0;
                features[i][inherited_feature_name(p)] = pred;
            }
            mask |= bit(p);
        }
        return hits;
    }

    std::size_t heldout_size() const { return heldout_.size(); }

private:
    static std::uint32_t bit(Property p) { return 1u << static_cast<unsigned>(p); }

    const DecisionTree& tree(Property p, std::uint32_t mask)
    {
        const auto key = std::make_pair(p, mask);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        std::vector<Instance> instances;
        instances.reserve(train_.size());
        for (std::size_t i = 0; i < train_.size(); ++i) {
            Instance inst{train_features_[i], train_[i].label.token(p)};
            for (std::size_t k = 0; k < kPropertyCount; ++k)
                if (mask & (1u << k)) {
                    const auto q = static_cast<Property>(k);
                    inst.features[inherited_feature_name(q)] = train_[i].label.token(q);
                }
            instances.push_back(std::move(inst));
        }
        return cache_.emplace(key, morphkit::train(instances, std::string(name(p)), params_)).first->second;
    }

    std::span<const LabelledEntry> train_;
    std::span<const LabelledEntry> heldout_;
    TrainParams params_;
    std::vector<Features> train_features_;
    std::vector<Features> heldout_features_;
    std::map<std::pair<Property, std::uint32_t>, DecisionTree> cache_;
};

std::vector<std::string_view> names_of(std::span<const Property> order)
{
    std::vector<std::string_view> out;
    for (auto p : order)
        out.push_back(name(p));
    return out;
}

struct Candidate {
    std::vector<Property> order;
    std::size_t correct = 0;
};

// Same-length candidates only: more correct first, then smaller names.
bool better(const Candidate& a, const Candidate& b)
{
    if (a.correct != b.correct)
        return a.correct > b.correct;
    return names_of(a.order) < names_of(b.order);
}

double as_score(std::size_t correct, std::size_t properties, std::size_t heldout)
{
    return static_cast<double>(correct) / static_cast<double>(properties * heldout);
}

}  // namespace

double score_order(std::span<const LabelledEntry> train, std::span<const LabelledEntry> heldout,
                   const AffixInventory& inventory, std::span<const Property> order, const TrainParams& params)
{
    check_order(order);
    OrderScorer scorer(train, heldout, inventory, params);
    return as_score(scorer.correct(order), order.size(), heldout.size());
}

SearchResult search_best_order(std::span<const LabelledEntry> train, std::span<const LabelledEntry> heldout,
                               const AffixInventory& inventory, const SequenceSearchParams& params)
{
    params.validate();
    OrderScorer scorer(train, heldout, inventory, params.tree);
    const auto n = params.properties.size();
    SearchResult result;

    if (params.strategy == SearchStrategy::exhaustive) {
        auto perm = params.properties;
        std::sort(perm.begin(), perm.end(), [](Property a, Property b) { return name(a) < name(b); });
        std::optional<Candidate> best;
        do {
            Candidate c{perm, scorer.correct(perm)};
            ++result.orders_scored;
            if (!best || better(c, *best))
                best = std::move(c);
        } while (std::next_permutation(perm.begin(), perm.end(),
                                       [](Property a, Property b) { return name(a) < name(b); }));
        result.order = best->order;
        result.score = as_score(best->correct, n, scorer.heldout_size());
        return result;
    }

    std::vector<Candidate> beam{Candidate{}};
    for (std::size_t step = 0; step < n; ++step) {
        std::vector<Candidate> next;
        for (const auto& partial : beam)
            for (auto p : params.properties) {
                if (std::find(partial.order.begin(), partial.order.end(), p) != partial.order.end())
                    continue;
                Candidate c{partial.order, 0};
                c.order.push_back(p);
                c.correct = scorer.correct(c.order);
                ++result.orders_scored;
                next.push_back(std::move(c));
            }
        std::sort(next.begin(), next.end(), better);
        if (next.size() > static_cast<std::size_t>(params.beam))
            next.resize(static_cast<std::size_t>(params.beam));
        beam = std::move(next);
    }
    result.order = beam.front().order;
    result.score = as_score(beam.front().correct, n, scorer.heldout_size());
    return result;
}

namespace {

constexpr std::string_view kBundleFormat = "morphkit-cascade";
constexpr int kBundleVersion = 1;
constexpr const char* kManifest = "manifest.json";
constexpr const char* kInventoryFile = "inventory.tsv";

std::string tree_file(Property p)
{
    return std::string(name(p)) + ".tree.json";
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::io, "cannot write " + path.string());
    out << content;
    if (!out)
        throw Error(ErrorKind::io, "write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot read " + path.string());
    return slurp(in);
}

}  // namespace

void save_bundle(const Cascade& cascade, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());

    const auto& ap = cascade.inventory().params();
    nlohmann::json manifest;
    manifest["format"] = kBundleFormat;
    manifest["version"] = kBundleVersion;
    manifest["order"] = names_of(cascade.order());
    manifest["affix_params"] = {
        {"max_affix_len", ap.max_affix_len}, {"min_count", ap.min_count},     {"branch_min", ap.branch_min},
        {"min_stem_len", ap.min_stem_len},   {"max_prefixes", ap.max_prefixes},
    };
    write_file(dir / kManifest, manifest.dump(1) + "\n");
    for (auto p : cascade.order())
        write_file(dir / tree_file(p), serialize(cascade.tree(p)));
    std::ostringstream inv;
    write_inventory(inv, cascade.inventory());
    write_file(dir / kInventoryFile, inv.str());
}

Cascade load_bundle(const std::filesystem::path& dir)
{
    std::vector<Property> order;
    AffixParams ap;
    try {
        const auto manifest = nlohmann::json::parse(read_file(dir / kManifest));
        if (manifest.at("format").get<std::string>() != kBundleFormat)
            throw Error(ErrorKind::schema, "not a cascade bundle: " + dir.string());
        if (manifest.at("version").get<int>() != kBundleVersion)
            throw Error(ErrorKind::schema, "unsupported cascade bundle version");
        for (const auto& n : manifest.at("order")) {
            const auto p = parse_property(n.get<std::string>());
            if (!p)
                throw Error(ErrorKind::schema, "unknown property in bundle order: " + n.get<std::string>());
            order.push_back(*p);
        }
        const auto& j = manifest.at("affix_params");
        ap.max_affix_len = j.at("max_affix_len").get<int>();
        ap.min_count = j.at("min_count").get<int>();
        ap.branch_min = j.at("branch_min").get<int>();
        ap.min_stem_len = j.at("min_stem_len").get<int>();
        ap.max_prefixes = j.at("max_prefixes").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::schema, std::string("malformed bundle manifest: ") + e.what());
    }
    try {
        ap.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::schema, std::string("bundle affix params: ") + e.what());
    }

    std::map<Property, DecisionTree> trees;
    for (auto p : order) {
        auto t = deserialize(read_file(dir / tree_file(p)));
        if (t.target() != name(p))
            throw Error(ErrorKind::schema, tree_file(p) + " holds a tree for '" + t.target() + "'");
        trees.emplace(p, std::move(t));
    }
    std::istringstream inv(read_file(dir / kInventoryFile));
    auto inventory = read_inventory(inv, ap);
    try {
        return Cascade(std::move(order), std::move(trees), std::move(inventory));
    } catch (const Error& e) {
        throw Error(ErrorKind::schema, std::string("inconsistent bundle: ") + e.what());
    }
}

}  // namespace morphkit
