#pragma once

// Synthetic verb paradigms and cluster-evaluation fixtures.

#include "morphkit/cluster_stats.hpp"
#include "morphkit/clustering.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/segmentation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace synth {

using morphkit::LabelledEntry;
using morphkit::Origin;
using morphkit::Property;

struct Cell {
    const char* person;
    const char* number;
    const char* gender;  // "" = null
};

inline constexpr std::array<Cell, 7> kCells = {{
    {"1", "sg", ""}, {"2", "sg", ""}, {"3", "sg", "m"}, {"3", "sg", "f"},
    {"1", "pl", ""}, {"2", "pl", ""}, {"3", "pl", ""},
}};

inline std::string imperfective_prefix(const Cell& c)
{
    if (std::string(c.person) == "1")
        return "n";
    if (std::string(c.person) == "2" || std::string(c.gender) == "f")
        return "t";
    return "j";
}

inline LabelledEntry entry(const std::string& lemma, const Cell& c, const char* tam, const char* polarity,
                           Origin origin, morphkit::Segmentation seg)
{
    LabelledEntry e;
    e.surface = seg.surface();
    e.lemma = lemma;
    e.label.set_token(Property::person, c.person);
    e.label.set_token(Property::number, c.number);
    e.label.set_token(Property::gender, *c.gender ? c.gender : "null");
    e.label.set_token(Property::tam, tam);
    e.label.set_token(Property::polarity, polarity);
    e.origin = origin;
    e.segmentation = std::move(seg);
    return e;
}

inline morphkit::Segmentation seg(const std::string& prefix, const std::string& stem, std::vector<std::string> suffixes)
{
    std::vector<std::string> prefixes;
    if (!prefix.empty())
        prefixes.push_back(prefix);
    return morphkit::make_segmentation(std::move(prefixes), stem, std::move(suffixes));
}

// The fourteen imperfective forms of the stem-based verb "eżamina" and the
// templatic verb "gideb".
inline std::vector<LabelledEntry> imperfective_paradigm()
{
    std::vector<LabelledEntry> out;
    for (const auto& c : kCells) {
        const auto p = imperfective_prefix(c);
        const bool pl = std::string(c.number) == "pl";
        out.push_back(entry("eżamina", c, "imperfective", "positive", Origin::concatenative,
                            pl ? seg(p, "eżamina", {"w"}) : seg(p, "eżamina", {})));
    }
    for (const auto& c : kCells) {
        const auto p = imperfective_prefix(c);
        const bool pl = std::string(c.number) == "pl";
        out.push_back(entry("gideb", c, "imperfective", "positive", Origin::non_concatenative,
                            pl ? seg(p, "igdb", {"u"}) : seg(p, "igdeb", {})));
    }
    return out;
}

// Explicit modulo keeps the streams identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 gen_;
};

inline const std::vector<std::string>& consonants()
{
    static const std::vector<std::string> c = {"b", "d", "f", "g", "k", "l", "m", "n", "q", "r", "s", "t", "ż", "ħ"};
    return c;
}

// Root-and-pattern verb: three radicals interleaved with vowel melodies, so
// the stem changes shape across the paradigm.
inline std::vector<LabelledEntry> templatic_lexeme(Rng& rng)
{
    const auto& C = consonants();
    const std::string c1 = rng.pick(C), c2 = rng.pick(C), c3 = rng.pick(C);
    const std::string v1 = rng.pick(std::vector<std::string>{"i", "a"});
    const std::string v2 = rng.pick(std::vector<std::string>{"e", "o", "a"});
    const std::string pv = rng.pick(std::vector<std::string>{"i", "a"});
    const std::string lemma = c1 + pv + c2 + v2 + c3;
    const auto O = Origin::non_concatenative;

    const std::string sg = v1 + c1 + c2 + v2 + c3, pl = v1 + c1 + c2 + c3, neg = v1 + c1 + c2 + "i" + c3;
    const std::string perf_a = c1 + c2 + "i" + c3, perf_b = c1 + pv + c2 + c3;
    const std::array<std::pair<std::string, std::string>, 7> perf = {{
        {perf_a, "t"}, {perf_a, "t"}, {lemma, ""}, {perf_b, "et"}, {perf_a, "na"}, {perf_a, "tu"}, {perf_b, "u"},
    }};
    std::vector<LabelledEntry> out;
    for (std::size_t k = 0; k < kCells.size(); ++k) {
        const auto& c = kCells[k];
        const auto p = imperfective_prefix(c);
        if (std::string(c.number) == "sg") {
            out.push_back(entry(lemma, c, "imperfective", "positive", O, seg(p, sg, {})));
            out.push_back(entry(lemma, c, "imperfective", "negative", O, seg(p, neg, {"x"})));
        } else {
            out.push_back(entry(lemma, c, "imperfective", "positive", O, seg(p, pl, {"u"})));
            out.push_back(entry(lemma, c, "imperfective", "negative", O, seg(p, pl, {"u", "x"})));
        }
        const auto& [ps, sf] = perf[k];
        out.push_back(entry(lemma, c, "perfective", "positive", O,
                            sf.empty() ? seg("", ps, {}) : seg("", ps, {sf})));
    }
    out.push_back(entry(lemma, kCells[1], "imperative", "positive", O, seg("", sg, {})));
    out.push_back(entry(lemma, kCells[5], "imperative", "positive", O, seg("", pl, {"u"})));
    return out;
}

// Stem-and-affix verb: one invariant stem, affixes only.
inline std::vector<LabelledEntry> stem_lexeme(Rng& rng)
{
    const auto& C = consonants();
    const std::vector<std::string> V = {"a", "e", "i", "o", "u"};
    std::string stem;
    const std::size_t syllables = 2 + rng.below(2);
    for (std::size_t s = 0; s < syllables; ++s)
        stem += rng.pick(C) + (s + 1 == syllables ? std::string("a") : rng.pick(V));
    const auto O = Origin::concatenative;
    const std::array<std::string, 7> perf = {"jt", "jt", "", "t", "jna", "jtu", "w"};

    std::vector<LabelledEntry> out;
    for (std::size_t k = 0; k < kCells.size(); ++k) {
        const auto& c = kCells[k];
        const auto p = imperfective_prefix(c);
        if (std::string(c.number) == "sg") {
            out.push_back(entry(stem, c, "imperfective", "positive", O, seg(p, stem, {})));
            out.push_back(entry(stem, c, "imperfective", "negative", O, seg(p, stem, {"x"})));
        } else {
            out.push_back(entry(stem, c, "imperfective", "positive", O, seg(p, stem, {"w"})));
            out.push_back(entry(stem, c, "imperfective", "negative", O, seg(p, stem, {"w", "x"})));
        }
        out.push_back(entry(stem, c, "perfective", "positive", O,
                            perf[k].empty() ? seg("", stem, {}) : seg("", stem, {perf[k]})));
    }
    out.push_back(entry(stem, kCells[1], "imperative", "positive", O, seg("", stem, {})));
    out.push_back(entry(stem, kCells[5], "imperative", "positive", O, seg("", stem, {"w"})));
    return out;
}

struct ShiftData {
    std::vector<LabelledEntry> train;
    std::vector<LabelledEntry> test;  // unseen forms of training lexemes
    std::vector<LabelledEntry> gold;  // unseen lexemes, balanced origins
};

// Drops entries whose surface already occurs in `seen`, then records them.
inline void append_fresh(std::vector<LabelledEntry>& out, std::vector<LabelledEntry> add, std::set<std::string>& seen)
{
    for (auto& e : add)
        if (seen.insert(e.surface).second)
            out.push_back(std::move(e));
}

// Training lexemes are drawn 80/20 templatic/stem-based; the gold set is
// 50/50 from lexemes never seen in training. One form in five of each
// training lexeme is held out as the traditional test set.
inline ShiftData distribution_shift(std::uint64_t seed, std::size_t train_lexemes = 20, std::size_t gold_lexemes = 10)
{
    Rng rng(seed);
    ShiftData d;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < train_lexemes; ++i) {
        const bool templatic = i % 5 != 4;
        std::vector<LabelledEntry> forms;
        append_fresh(forms, templatic ? templatic_lexeme(rng) : stem_lexeme(rng), seen);
        for (std::size_t k = 0; k < forms.size(); ++k)
            (k % 5 == static_cast<std::size_t>(i % 5) ? d.test : d.train).push_back(forms[k]);
    }
    for (std::size_t i = 0; i < gold_lexemes; ++i) {
        std::vector<LabelledEntry> forms;
        append_fresh(forms, i % 2 == 0 ? templatic_lexeme(rng) : stem_lexeme(rng), seen);
        for (auto& e : forms) {
            e.segmentation.reset();  // gold words are segmented automatically
            d.gold.push_back(std::move(e));
        }
    }
    return d;
}

// Two-property data where the second property (number) is a function of the
// first (polarity) and one more feature. Polarity = prefix n AND geminated
// stem; number = polarity negative AND suffix w. Train and held-out use
// different stems of the same shapes.
struct OrderingData {
    std::vector<LabelledEntry> train;
    std::vector<LabelledEntry> heldout;
};

inline OrderingData ordering_dataset()
{
    const std::vector<std::pair<std::string, std::string>> train_stems = {
        {"kiteb", "kitteb"}, {"qasam", "qassam"}, {"kiser", "kisser"}};
    const std::vector<std::pair<std::string, std::string>> heldout_stems = {{"ħadem", "ħaddem"}};
    auto build = [](const std::vector<std::pair<std::string, std::string>>& stems) {
        std::vector<LabelledEntry> out;
        for (const auto& [plain, doubled] : stems)
            for (const std::string& stem : {plain, doubled})
                for (const std::string pre : {"n", "t"})
                    for (const std::string suf : {"w", "x"}) {
                        const bool a = pre == "n" && stem == doubled;
                        const bool b = a && suf == "w";
                        LabelledEntry e;
                        e.segmentation = seg(pre, stem, {suf});
                        e.surface = e.segmentation->surface();
                        e.label.set_token(Property::polarity, a ? "negative" : "positive");
                        e.label.set_token(Property::number, b ? "pl" : "sg");
                        e.origin = Origin::concatenative;
                        out.push_back(std::move(e));
                    }
        return out;
    };
    return {build(train_stems), build(heldout_stems)};
}

// Cluster set whose size bins hold the given counts per group, with each
// cluster tagged by origin.
struct ClusterFixture {
    morphkit::ClusterSet clusters;
    morphkit::OriginTags origins;
};

inline ClusterFixture sized_clusters(const std::array<std::size_t, 5>& nc, const std::array<std::size_t, 5>& con)
{
    constexpr std::array<std::size_t, 5> kRepresentative = {5, 15, 25, 35, 45};
    std::vector<morphkit::Cluster> list;
    morphkit::OriginTags origins;
    std::size_t serial = 0;
    auto add = [&](std::size_t size, Origin o) {
        morphkit::Cluster c;
        const auto tag = "w" + std::to_string(serial++) + "_";
        for (std::size_t m = 0; m < size; ++m) {
            auto s = std::to_string(m);
            c.members.push_back(tag + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s);
        }
        std::sort(c.members.begin(), c.members.end());
        c.stem_keys = {tag};
        c.id = morphkit::cluster_id_for(c.members);
        origins[c.id] = o;
        list.push_back(std::move(c));
    };
    for (std::size_t b = 0; b < 5; ++b) {
        for (std::size_t k = 0; k < nc[b]; ++k)
            add(kRepresentative[b], Origin::non_concatenative);
        for (std::size_t k = 0; k < con[b]; ++k)
            add(kRepresentative[b], Origin::concatenative);
    }
    return {morphkit::ClusterSet(std::move(list)), std::move(origins)};
}

// Removed-word counts out of 20 members landing in each removal bin:
// 0%, 5%, 10%, 15%, 25%, 35%, 50%, 70%, 90%.
inline constexpr std::array<std::size_t, 9> kRemovedOutOf20 = {0, 1, 2, 3, 5, 7, 10, 14, 18};

struct EvalFixture {
    ClusterFixture clusters;
    std::vector<morphkit::ClusterEvalRecord> records;
};

// One 20-member cluster per record. Removal bins and quality ratings are
// dealt independently so both marginals match the requested counts.
inline EvalFixture evaluation_records(const std::array<std::size_t, 9>& nc_removal,
                                      const std::array<std::size_t, 5>& nc_quality,
                                      const std::array<std::size_t, 9>& con_removal,
                                      const std::array<std::size_t, 5>& con_quality)
{
    EvalFixture f;
    std::vector<morphkit::Cluster> list;
    std::size_t serial = 0;
    auto group = [&](const std::array<std::size_t, 9>& removal, const std::array<std::size_t, 5>& quality, Origin o) {
        std::vector<std::size_t> bins;
        for (std::size_t b = 0; b < 9; ++b)
            bins.insert(bins.end(), removal[b], b);
        std::vector<morphkit::Quality> ratings;  // Very Good first
        for (std::size_t q = 0; q < 5; ++q)
            ratings.insert(ratings.end(), quality[q], static_cast<morphkit::Quality>(5 - q));
        if (bins.size() != ratings.size())
            throw std::logic_error("removal and quality totals differ");
        for (std::size_t i = 0; i < bins.size(); ++i) {
            morphkit::Cluster c;
            const auto tag = "e" + std::to_string(serial++) + "_";
            for (std::size_t m = 0; m < 20; ++m)
                c.members.push_back(tag + (m < 10 ? "0" : "") + std::to_string(m));
            c.stem_keys = {tag};
            c.id = morphkit::cluster_id_for(c.members);
            morphkit::ClusterEvalRecord r;
            r.cluster_id = c.id;
            r.expert_id = "x" + std::to_string(i % 3);
            r.quality = ratings[i];
            for (std::size_t m = 0; m < kRemovedOutOf20[bins[i]]; ++m)
                r.removed_words.insert(c.members[m]);
            f.clusters.origins[c.id] = o;
            f.records.push_back(std::move(r));
            list.push_back(std::move(c));
        }
    };
    group(nc_removal, nc_quality, Origin::non_concatenative);
    group(con_removal, con_quality, Origin::concatenative);
    f.clusters.clusters = morphkit::ClusterSet(std::move(list));
    return f;
}

}  // namespace synth
