#include "morphkit/morph_label.hpp"

#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

#include <algorithm>

namespace morphkit {

namespace {

constexpr std::array<std::string_view, kPropertyCount> kNames = {
    "polarity", "ind_obj", "dir_obj", "tam", "number", "gender", "person",
};
constexpr std::array<std::string_view, kPropertyCount> kShortNames = {
    "Pol", "Ind", "Dir", "TAM", "Num", "Gen", "Per",
};

constexpr std::array<std::string_view, 2> kPolarity = {"positive", "negative"};
constexpr std::array<std::string_view, 7> kPronoun = {"1sg", "2sg", "3sgm", "3sgf", "1pl", "2pl", "3pl"};
constexpr std::array<std::string_view, 3> kTam = {"perfective", "imperfective", "imperative"};
constexpr std::array<std::string_view, 2> kNumber = {"sg", "pl"};
constexpr std::array<std::string_view, 2> kGender = {"m", "f"};
constexpr std::array<std::string_view, 3> kPerson = {"1", "2", "3"};

}  // namespace

std::string_view name(Property p)
{
    return kNames[static_cast<std::size_t>(p)];
}

std::string_view short_name(Property p)
{
    return kShortNames[static_cast<std::size_t>(p)];
}

std::optional<Property> parse_property(std::string_view s)
{
    for (std::size_t i = 0; i < kPropertyCount; ++i)
        if (kNames[i] == s || kShortNames[i] == s)
            return static_cast<Property>(i);
    return std::nullopt;
}

std::span<const std::string_view> vocabulary(Property p)
{
    switch (p) {
    case Property::polarity: return kPolarity;
    case Property::ind_obj:
    case Property::dir_obj: return kPronoun;
    case Property::tam: return kTam;
    case Property::number: return kNumber;
    case Property::gender: return kGender;
    case Property::person: return kPerson;
    }
    return {};
}

bool is_valid_value(Property p, std::string_view value)
{
    const auto vocab = vocabulary(p);
    return std::find(vocab.begin(), vocab.end(), value) != vocab.end();
}

void MorphLabel::set(Property p, std::optional<std::string> value)
{
    if (value && !is_valid_value(p, *value))
        throw Error(ErrorKind::schema,
                    "invalid value '" + *value + "' for property " + std::string(name(p)));
    values_[static_cast<std::size_t>(p)] = std::move(value);
}

std::string MorphLabel::token(Property p) const
{
    const auto& v = get(p);
    return v ? *v : std::string(kNullLabel);
}

void MorphLabel::set_token(Property p, std::string_view token)
{
    if (token == kNullLabel)
        set(p, std::nullopt);
    else
        set(p, std::string(token));
}

std::string_view name(Origin o)
{
    switch (o) {
    case Origin::concatenative: return "concatenative";
    case Origin::non_concatenative: return "non_concatenative";
    case Origin::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Origin> parse_origin(std::string_view s)
{
    if (s == "concatenative" || s == "CON")
        return Origin::concatenative;
    if (s == "non_concatenative" || s == "NC")
        return Origin::non_concatenative;
    if (s == "unknown" || s.empty())
        return Origin::unknown;
    return std::nullopt;
}

std::vector<Property> parse_order(std::string_view csv)
{
    std::vector<Property> order;
    for (const auto& field : text::split(csv, ',')) {
        const auto p = parse_property(field);
        if (!p)
            throw Error(ErrorKind::precondition, "unknown property '" + field + "'");
        if (std::find(order.begin(), order.end(), *p) != order.end())
            throw Error(ErrorKind::precondition, "duplicate property '" + field + "' in order");
        order.push_back(*p);
    }
    return order;
}

std::string format_order(std::span<const Property> order)
{
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i)
            out += ',';
        out += name(order[i]);
    }
    return out;
}

}  // namespace morphkit
