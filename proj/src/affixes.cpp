#include "morphkit/affixes.hpp"

#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace morphkit {

Trie::Trie(TrieDirection direction) : direction_(direction), nodes_(1) {}

void Trie::insert(std::u32string_view word, std::uint64_t frequency)
{
    auto walk = [&](auto begin, auto end) {
        NodeId cur = kRoot;
        nodes_[cur].count += frequency;
        for (auto it = begin; it != end; ++it) {
            auto found = nodes_[cur].children.find(*it);
            NodeId next;
            if (found == nodes_[cur].children.end()) {
                next = static_cast<NodeId>(nodes_.size());
                nodes_[cur].children.emplace(*it, next);
                nodes_.emplace_back();
            } else {
                next = found->second;
            }
            cur = next;
            nodes_[cur].count += frequency;
        }
        nodes_[cur].terminal += frequency;
    };
    if (direction_ == TrieDirection::forward)
        walk(word.begin(), word.end());
    else
        walk(word.rbegin(), word.rend());
}

std::optional<Trie::NodeId> Trie::find(std::u32string_view path) const
{
    NodeId cur = kRoot;
    for (char32_t c : path) {
        auto it = nodes_[cur].children.find(c);
        if (it == nodes_[cur].children.end())
            return std::nullopt;
        cur = it->second;
    }
    return cur;
}

std::optional<Trie::NodeId> Trie::find(std::string_view utf8_path) const
{
    return find(text::decode(utf8_path));
}

std::size_t Trie::branching(NodeId id) const
{
    const Node& n = nodes_[id];
    return n.children.size() + (n.terminal > 0 ? 1 : 0);
}

bool Trie::check_invariants() const
{
    for (const Node& n : nodes_) {
        std::uint64_t sum = n.terminal;
        for (const auto& [c, child] : n.children)
            sum += nodes_[child].count;
        if (sum != n.count)
            return false;
    }
    return true;
}

Trie build_trie(std::span<const WordEntry> words, TrieDirection direction)
{
    Trie trie(direction);
    for (const auto& w : words)
        trie.insert(text::decode(w.surface), w.frequency);
    return trie;
}

double transitional_probability(const Trie& trie, std::u32string_view path, char32_t next)
{
    const auto id = trie.find(path);
    if (!id)
        throw Error(ErrorKind::precondition, "path '" + text::encode(path) + "' not in trie");
    const auto& n = trie.node(*id);
    if (n.count == 0)
        return 0.0;
    auto it = n.children.find(next);
    if (it == n.children.end())
        return 0.0;
    return static_cast<double>(trie.node(it->second).count) / static_cast<double>(n.count);
}

double transitional_probability(const Trie& trie, std::string_view path, char32_t next)
{
    return transitional_probability(trie, std::u32string_view(text::decode(path)), next);
}

double end_probability(const Trie& trie, std::u32string_view path)
{
    const auto id = trie.find(path);
    if (!id)
        throw Error(ErrorKind::precondition, "path '" + text::encode(path) + "' not in trie");
    const auto& n = trie.node(*id);
    return n.count == 0 ? 0.0 : static_cast<double>(n.terminal) / static_cast<double>(n.count);
}

std::string_view name(AffixKind k)
{
    return k == AffixKind::prefix ? "prefix" : "suffix";
}

void AffixParams::validate() const
{
    if (max_affix_len < 1)
        throw Error(ErrorKind::precondition, "max_affix_len must be >= 1");
    if (min_count < 1)
        throw Error(ErrorKind::precondition, "min_count must be >= 1");
    if (branch_min < 2)
        throw Error(ErrorKind::precondition, "branch_min must be >= 2");
    if (min_stem_len < 1)
        throw Error(ErrorKind::precondition, "min_stem_len must be >= 1");
    if (max_prefixes < 0)
        throw Error(ErrorKind::precondition, "max_prefixes must be >= 0");
}

bool ranks_before(const AffixCandidate& a, const AffixCandidate& b)
{
    if (a.score != b.score)
        return a.score > b.score;
    const auto la = text::length(a.text), lb = text::length(b.text);
    if (la != lb)
        return la > lb;
    return a.text < b.text;
}

namespace {

// Scores are sums of logarithms accumulated in trie order; rounding to a
// fixed grid makes ties compare equal regardless of summation order.
double canonical_score(double s)
{
    return std::round(s * 1e9) / 1e9;
}

struct Tally {
    double score = 0.0;
    std::uint64_t support = 0;
};

void collect_affixes(const Trie& trie, Trie::NodeId boundary, double weight, int max_len,
                     std::u32string& path, std::map<std::u32string, Tally>& tallies)
{
    const auto& n = trie.node(boundary);
    for (const auto& [c, child] : n.children) {
        path.push_back(c);
        if (trie.node(child).terminal > 0) {
            auto& t = tallies[path];
            t.support += 1;
            t.score += weight;
        }
        if (static_cast<int>(path.size()) < max_len)
            collect_affixes(trie, child, weight, max_len, path, tallies);
        path.pop_back();
    }
}

void visit_boundaries(const Trie& trie, Trie::NodeId id, int depth, const AffixParams& params,
                      std::map<std::u32string, Tally>& tallies)
{
    if (depth >= params.min_stem_len) {
        const auto b = trie.branching(id);
        if (static_cast<int>(b) >= params.branch_min) {
            std::u32string path;
            collect_affixes(trie, id, std::log2(static_cast<double>(b)), params.max_affix_len, path, tallies);
        }
    }
    for (const auto& [c, child] : trie.node(id).children)
        visit_boundaries(trie, child, depth + 1, params, tallies);
}

}  // namespace

std::vector<AffixCandidate> score_affixes(const Trie& trie, AffixKind kind, const AffixParams& params)
{
    params.validate();
    const auto wanted = kind == AffixKind::suffix ? TrieDirection::forward : TrieDirection::backward;
    if (trie.direction() != wanted)
        throw Error(ErrorKind::precondition, kind == AffixKind::suffix
                                                 ? "suffixes are scored on the forward trie"
                                                 : "prefixes are scored on the backward trie");

    std::map<std::u32string, Tally> tallies;
    visit_boundaries(trie, Trie::kRoot, 0, params, tallies);

    std::vector<AffixCandidate> out;
    for (auto& [path, tally] : tallies) {
        if (tally.support < static_cast<std::uint64_t>(params.min_count))
            continue;
        std::u32string affix = path;
        if (kind == AffixKind::prefix)
            std::reverse(affix.begin(), affix.end());
        out.push_back({text::encode(affix), kind, canonical_score(tally.score), tally.support});
    }
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
}

AffixInventory::AffixInventory(std::vector<AffixCandidate> prefixes, std::vector<AffixCandidate> suffixes,
                               AffixParams params)
    : prefixes_(std::move(prefixes)), suffixes_(std::move(suffixes)), params_(params)
{
    params_.validate();
    std::sort(prefixes_.begin(), prefixes_.end(), ranks_before);
    std::sort(suffixes_.begin(), suffixes_.end(), ranks_before);
    for (const auto& p : prefixes_) {
        auto cps = text::decode(p.text);
        if (cps.empty())
            throw Error(ErrorKind::precondition, "empty prefix in inventory");
        longest_prefix_ = std::max(longest_prefix_, cps.size());
        if (!prefix_index_.insert(std::move(cps)).second)
            throw Error(ErrorKind::precondition, "duplicate prefix '" + p.text + "'");
    }
    for (const auto& s : suffixes_) {
        auto cps = text::decode(s.text);
        if (cps.empty())
            throw Error(ErrorKind::precondition, "empty suffix in inventory");
        longest_suffix_ = std::max(longest_suffix_, cps.size());
        if (!suffix_index_.insert(std::move(cps)).second)
            throw Error(ErrorKind::precondition, "duplicate suffix '" + s.text + "'");
    }
}

AffixInventory build_inventory(std::span<const WordEntry> words, const AffixParams& params)
{
    params.validate();
    if (words.empty())
        throw Error(ErrorKind::precondition, "cannot build an affix inventory from an empty word list");
    const Trie forward = build_trie(words, TrieDirection::forward);
    const Trie backward = build_trie(words, TrieDirection::backward);
    return AffixInventory(score_affixes(backward, AffixKind::prefix, params),
                          score_affixes(forward, AffixKind::suffix, params), params);
}

Segmentation segment(std::string_view word, const AffixInventory& inventory)
{
    const std::u32string w = text::decode(word);
    if (w.empty())
        throw Error(ErrorKind::precondition, "cannot segment an empty word");
    const auto& params = inventory.params();
    const auto min_stem = static_cast<std::size_t>(params.min_stem_len);
    std::size_t b = 0, e = w.size();
    const std::u32string_view view(w);

    std::vector<std::string> suffixes;  // outermost first while stripping
    for (;;) {
        const std::size_t residue = e - b;
        if (residue <= min_stem)
            break;
        const std::size_t max_len = std::min(inventory.longest_suffix(), residue - min_stem);
        bool stripped = false;
        for (std::size_t len = max_len; len >= 1; --len) {
            if (inventory.has_suffix(view.substr(e - len, len))) {
                suffixes.push_back(text::encode(view.substr(e - len, len)));
                e -= len;
                stripped = true;
                break;
            }
        }
        if (!stripped)
            break;
    }
    std::reverse(suffixes.begin(), suffixes.end());

    std::vector<std::string> prefixes;
    for (int k = 0; k < params.max_prefixes; ++k) {
        const std::size_t residue = e - b;
        if (residue <= min_stem)
            break;
        const std::size_t max_len = std::min(inventory.longest_prefix(), residue - min_stem);
        bool stripped = false;
        for (std::size_t len = max_len; len >= 1; --len) {
            if (inventory.has_prefix(view.substr(b, len))) {
                prefixes.push_back(text::encode(view.substr(b, len)));
                b += len;
                stripped = true;
                break;
            }
        }
        if (!stripped)
            break;
    }
    return make_segmentation(std::move(prefixes), text::encode(view.substr(b, e - b)), std::move(suffixes));
}

namespace {

bool is_vowel(char32_t c)
{
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u';
}

}  // namespace

std::string cv_pattern(std::string_view word)
{
    const std::u32string w = text::decode(word);
    std::string out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const bool has_next = i + 1 < w.size();
        if (w[i] == U'i' && has_next && w[i + 1] == U'e') {
            out += 'V';
            ++i;
        } else if (w[i] == U'g' && has_next && w[i + 1] == U'ħ') {
            out += 'C';
            ++i;
        } else {
            out += is_vowel(w[i]) ? 'V' : 'C';
        }
    }
    return out;
}

Gemination detect_gemination(std::string_view word)
{
    const std::u32string w = text::decode(word);
    Gemination g;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] && text::is_alpha(w[i]) && !is_vowel(w[i]))
            g.positions.push_back(i);
    g.geminated = !g.positions.empty();
    return g;
}

namespace {

std::string format_score(double score)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    return buf;
}

}  // namespace

void write_inventory(std::ostream& out, const AffixInventory& inventory)
{
    out << "kind\ttext\tscore\tsupport\n";
    for (const auto* list : {&inventory.prefixes(), &inventory.suffixes()})
        for (const auto& c : *list)
            out << name(c.kind) << '\t' << c.text << '\t' << format_score(c.score) << '\t' << c.support << '\n';
}

AffixInventory read_inventory(std::istream& in, const AffixParams& params)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || (line != "kind\ttext\tscore\tsupport" && line != "kind\ttext\tscore\tsupport\r"))
        throw ParseError(1, "inventory header must be kind, text, score, support");
    std::vector<AffixCandidate> prefixes, suffixes;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = text::split(line, '\t');
        if (cells.size() != 4)
            throw ParseError(line_no, "expected 4 cells");
        AffixCandidate c;
        if (cells[0] == "prefix")
            c.kind = AffixKind::prefix;
        else if (cells[0] == "suffix")
            c.kind = AffixKind::suffix;
        else
            throw ParseError(line_no, "unknown affix kind '" + cells[0] + "'");
        c.text = text::normalize(cells[1]);
        if (c.text.empty())
            throw ParseError(line_no, "empty affix");
        const char* end = cells[2].data() + cells[2].size();
        if (std::from_chars(cells[2].data(), end, c.score).ptr != end || c.score < 0)
            throw ParseError(line_no, "bad score '" + cells[2] + "'");
        const char* send = cells[3].data() + cells[3].size();
        if (std::from_chars(cells[3].data(), send, c.support).ptr != send)
            throw ParseError(line_no, "bad support '" + cells[3] + "'");
        (c.kind == AffixKind::prefix ? prefixes : suffixes).push_back(std::move(c));
    }
    try {
        return AffixInventory(std::move(prefixes), std::move(suffixes), params);
    } catch (const Error& e) {
        throw Error(ErrorKind::schema, e.what());
    }
}

void write_segmentations(std::ostream& out, std::span<const Segmentation> segmentations)
{
    out << "surface\tprefixes\tstem\tsuffixes\n";
    for (const auto& s : segmentations)
        out << s.surface() << '\t' << text::join(s.prefixes, "+") << '\t' << s.stem << '\t'
            << text::join(s.suffixes, "+") << '\n';
}

std::vector<Segmentation> read_segmentations(std::istream& in)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw ParseError(1, "missing header row");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "surface\tprefixes\tstem\tsuffixes")
        throw ParseError(1, "segmentation header must be surface, prefixes, stem, suffixes");
    std::vector<Segmentation> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = text::split(line, '\t');
        if (cells.size() != 4)
            throw ParseError(line_no, "expected 4 cells");
        try {
            auto seg = parse_segmentation(cells[1] + "/" + cells[2] + "/" + cells[3]);
            if (seg.surface() != cells[0])
                throw ParseError(line_no, "segments do not spell '" + cells[0] + "'");
            out.push_back(std::move(seg));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

}  // namespace morphkit
