#include "morphkit/config.hpp"

#include "morphkit/error.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace morphkit {

namespace {

const std::vector<std::string> kPathKeys = {
    "affixes", "cascade", "clusters", "corpus", "evals", "gold", "lexicon", "origins", "segments", "test", "words",
};

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw Error(ErrorKind::config, "bad value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
    T v{};
    const char* end = value.data() + value.size();
    auto res = std::from_chars(value.data(), end, v);
    if (value.empty() || res.ec != std::errc{} || res.ptr != end)
        bad_value(key, value);
    return v;
}

}  // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys = {
        "beam",         "branch_min",      "heldout_fraction", "max_affix_len", "max_depth",
        "max_merge_rounds", "max_prefixes", "min_count",       "min_leaf",      "min_stem_len",
        "order",        "ortho_threshold", "search",           "seed",          "sem_threshold",
        "window",
    };
    keys.insert(keys.end(), kPathKeys.begin(), kPathKeys.end());
    std::sort(keys.begin(), keys.end());
    return keys;
}

void apply_setting(Config& c, std::string_view key, std::string_view value)
{
    if (key == "max_affix_len")
        c.affix.max_affix_len = parse_number<int>(key, value);
    else if (key == "min_count")
        c.affix.min_count = parse_number<int>(key, value);
    else if (key == "branch_min")
        c.affix.branch_min = parse_number<int>(key, value);
    else if (key == "min_stem_len")
        c.affix.min_stem_len = parse_number<int>(key, value);
    else if (key == "max_prefixes")
        c.affix.max_prefixes = parse_number<int>(key, value);
    else if (key == "window")
        c.similarity.window = parse_number<int>(key, value);
    else if (key == "ortho_threshold")
        c.similarity.ortho_threshold = parse_number<double>(key, value);
    else if (key == "sem_threshold")
        c.similarity.sem_threshold = parse_number<double>(key, value);
    else if (key == "max_merge_rounds")
        c.similarity.max_merge_rounds = parse_number<int>(key, value);
    else if (key == "min_leaf")
        c.tree.min_leaf = parse_number<int>(key, value);
    else if (key == "max_depth") {
        if (value == "unlimited")
            c.tree.max_depth.reset();
        else
            c.tree.max_depth = parse_number<int>(key, value);
    } else if (key == "search") {
        const auto s = parse_search_strategy(value);
        if (!s)
            bad_value(key, value);
        c.strategy = *s;
    } else if (key == "beam")
        c.beam = parse_number<int>(key, value);
    else if (key == "seed")
        c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "heldout_fraction")
        c.heldout_fraction = parse_number<double>(key, value);
    else if (key == "order") {
        try {
            c.order = parse_order(value);
        } catch (const Error& e) {
            throw Error(ErrorKind::config, std::string("order: ") + e.what());
        }
    } else if (std::find(kPathKeys.begin(), kPathKeys.end(), key) != kPathKeys.end()) {
        if (value.empty())
            bad_value(key, value);
        c.paths[std::string(key)] = std::string(value);
    } else
        throw Error(ErrorKind::config, "unknown configuration key '" + std::string(key) + "'");
}

void Config::validate() const
{
    auto wrap = [](auto&& check) {
        try {
            check();
        } catch (const Error& e) {
            throw Error(ErrorKind::config, e.what());
        }
    };
    wrap([&] { affix.validate(); });
    wrap([&] { similarity.validate(); });
    wrap([&] { tree.validate(); });
    if (beam < 1)
        throw Error(ErrorKind::config, "beam must be >= 1");
    if (!(heldout_fraction > 0.0 && heldout_fraction < 1.0))
        throw Error(ErrorKind::config, "heldout_fraction must lie in (0, 1)");
    if (order.empty())
        throw Error(ErrorKind::config, "order must name at least one property");
}

Config parse_config(std::istream& in, Config base)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(t.substr(0, eq));
        const auto value = trim(t.substr(eq + 1));
        try {
            apply_setting(base, key, value);
        } catch (const Error& e) {
            throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    base.validate();
    return base;
}

Config load_config(const std::filesystem::path& path, Config base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot read config " + path.string());
    std::istringstream text(slurp(in));
    try {
        text::validate(text.str());
    } catch (const DecodeError&) {
        throw Error(ErrorKind::config, "config " + path.string() + " is not valid UTF-8");
    }
    return parse_config(text, std::move(base));
}

std::string format_config(const Config& c)
{
    std::map<std::string, std::string> kv;
    auto num = [](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    kv["max_affix_len"] = std::to_string(c.affix.max_affix_len);
    kv["min_count"] = std::to_string(c.affix.min_count);
    kv["branch_min"] = std::to_string(c.affix.branch_min);
    kv["min_stem_len"] = std::to_string(c.affix.min_stem_len);
    kv["max_prefixes"] = std::to_string(c.affix.max_prefixes);
    kv["window"] = std::to_string(c.similarity.window);
    kv["ortho_threshold"] = num(c.similarity.ortho_threshold);
    kv["sem_threshold"] = num(c.similarity.sem_threshold);
    kv["max_merge_rounds"] = std::to_string(c.similarity.max_merge_rounds);
    kv["min_leaf"] = std::to_string(c.tree.min_leaf);
    kv["max_depth"] = c.tree.max_depth ? std::to_string(*c.tree.max_depth) : "unlimited";
    kv["search"] = std::string(name(c.strategy));
    kv["beam"] = std::to_string(c.beam);
    kv["seed"] = std::to_string(c.seed);
    kv["heldout_fraction"] = num(c.heldout_fraction);
    kv["order"] = format_order(c.order);
    for (const auto& [k, v] : c.paths)
        kv[k] = v;
    std::string out;
    for (const auto& [k, v] : kv)
        out += k + " = " + v + "\n";
    return out;
}

}  // namespace morphkit
