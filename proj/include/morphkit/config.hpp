#pragma once

// Flat "key = value" configuration shared by the command-line tool.

#include "morphkit/affixes.hpp"
#include "morphkit/cascade.hpp"
#include "morphkit/clustering.hpp"
#include "morphkit/decision_tree.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace morphkit {

struct Config {
    AffixParams affix;
    SimilarityParams similarity;
    TrainParams tree;
    SearchStrategy strategy = SearchStrategy::greedy;
    int beam = 3;
    std::uint64_t seed = 1;
    /// Share of the lexicon held out for order search.
    double heldout_fraction = 0.2;
    std::vector<Property> order{kDefaultOrder.begin(), kDefaultOrder.end()};
    /// Input paths keyed by flag name (corpus, lexicon, ...).
    std::map<std::string, std::string> paths;

    /// Throws Error(config) naming the offending parameter.
    void validate() const;
};

/// Recognised keys, sorted.
std::vector<std::string> config_keys();

/// Sets one key. Throws Error(config) on an unknown key or unparsable value.
void apply_setting(Config& config, std::string_view key, std::string_view value);

/// Blank lines and lines starting with '#' are ignored. Errors carry the line
/// number and have kind config.
Config parse_config(std::istream& in, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});

/// Canonical text of every setting, sorted by key.
std::string format_config(const Config& config);

}  // namespace morphkit
