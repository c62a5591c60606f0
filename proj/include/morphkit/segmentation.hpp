#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morphkit {

/// A surface form split into prefixes + stem + suffixes. Prefixes are listed
/// outermost first, suffixes innermost first, so concatenating the fields in
/// order reproduces the word.
struct Segmentation {
    std::vector<std::string> prefixes;
    std::string stem;
    std::vector<std::string> suffixes;
    /// Concatenation of the suffixes when two or more were stripped.
    std::optional<std::string> composite_suffix;

    std::string surface() const;

    bool operator==(const Segmentation&) const = default;
};

/// Builds a segmentation and fills in composite_suffix.
Segmentation make_segmentation(std::vector<std::string> prefixes, std::string stem,
                               std::vector<std::string> suffixes);

/// "n/igdb/u", "/qatil/hu+li": prefixes, stem and suffixes separated by '/',
/// affixes within a slot joined by '+'.
std::string format_segmentation(const Segmentation& s);

/// Inverse of format_segmentation. Throws Error(schema) on malformed input.
Segmentation parse_segmentation(std::string_view s);

}  // namespace morphkit
