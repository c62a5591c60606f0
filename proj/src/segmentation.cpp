#include "morphkit/segmentation.hpp"

#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

namespace morphkit {

std::string Segmentation::surface() const
{
    std::string out;
    for (const auto& p : prefixes)
        out += p;
    out += stem;
    for (const auto& s : suffixes)
        out += s;
    return out;
}

Segmentation make_segmentation(std::vector<std::string> prefixes, std::string stem,
                               std::vector<std::string> suffixes)
{
    Segmentation seg{std::move(prefixes), std::move(stem), std::move(suffixes), std::nullopt};
    if (seg.suffixes.size() >= 2)
        seg.composite_suffix = text::join(seg.suffixes, "");
    return seg;
}

std::string format_segmentation(const Segmentation& s)
{
    return text::join(s.prefixes, "+") + "/" + s.stem + "/" + text::join(s.suffixes, "+");
}

Segmentation parse_segmentation(std::string_view s)
{
    const auto slots = text::split(s, '/');
    if (slots.size() != 3 || slots[1].empty())
        throw Error(ErrorKind::schema, "malformed segmentation '" + std::string(s) + "'");
    auto affixes = [&](const std::string& slot) {
        std::vector<std::string> out;
        if (slot.empty())
            return out;
        for (auto& a : text::split(slot, '+')) {
            if (a.empty())
                throw Error(ErrorKind::schema, "empty affix in segmentation '" + std::string(s) + "'");
            out.push_back(std::move(a));
        }
        return out;
    };
    return make_segmentation(affixes(slots[0]), slots[1], affixes(slots[2]));
}

}  // namespace morphkit
