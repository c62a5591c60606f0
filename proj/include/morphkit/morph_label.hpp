#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace morphkit {

/// The seven verbal properties, enumerated in the default cascade order.
enum class Property : std::size_t {
    polarity,
    ind_obj,
    dir_obj,
    tam,
    number,
    gender,
    person,
};

inline constexpr std::size_t kPropertyCount = 7;

inline constexpr std::array<Property, kPropertyCount> kDefaultOrder = {
    Property::polarity, Property::ind_obj, Property::dir_obj, Property::tam,
    Property::number,   Property::gender,  Property::person,
};

/// Column / feature name, e.g. "ind_obj".
std::string_view name(Property p);

/// Short display name used in reports, e.g. "Ind".
std::string_view short_name(Property p);

std::optional<Property> parse_property(std::string_view s);

/// Permitted non-null values of a property.
std::span<const std::string_view> vocabulary(Property p);

bool is_valid_value(Property p, std::string_view value);

/// Label token used by classifiers for "property not applicable".
inline constexpr std::string_view kNullLabel = "null";

/// One value (or null) per property. Values are validated against the
/// property's vocabulary on assignment.
class MorphLabel {
public:
    const std::optional<std::string>& get(Property p) const { return values_[static_cast<std::size_t>(p)]; }

    /// Throws Error(schema) if the value is outside the vocabulary.
    void set(Property p, std::optional<std::string> value);

    /// Classifier token: the value, or "null".
    std::string token(Property p) const;

    /// Inverse of token(); "null" clears the property.
    void set_token(Property p, std::string_view token);

    bool operator==(const MorphLabel&) const = default;
    auto operator<=>(const MorphLabel&) const = default;

private:
    std::array<std::optional<std::string>, kPropertyCount> values_;
};

/// Which morphological subsystem an entry comes from. Assigned by annotators,
/// never inferred.
enum class Origin {
    concatenative,
    non_concatenative,
    unknown,
};

std::string_view name(Origin o);
std::optional<Origin> parse_origin(std::string_view s);

/// Parses a comma-separated property list such as "polarity,ind_obj".
/// Throws Error(precondition) on unknown names or duplicates.
std::vector<Property> parse_order(std::string_view csv);

std::string format_order(std::span<const Property> order);

}  // namespace morphkit
