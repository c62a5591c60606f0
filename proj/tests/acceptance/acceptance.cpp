// Acceptance checks. Prints one PASS/FAIL line per criterion; with a numeric
// argument only that criterion runs. Exit status is non-zero if any selected
// criterion fails.

#include "morphkit/affixes.hpp"
#include "morphkit/cascade.hpp"
#include "morphkit/cluster_stats.hpp"
#include "morphkit/decision_tree.hpp"
#include "morphkit/error.hpp"
#include "morphkit/evaluation.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/text.hpp"

#include "../support/oracles.hpp"
#include "../support/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace morphkit;
namespace fs = std::filesystem;

namespace {

const std::string kCli = MORPHKIT_CLI;
const std::string kData = MORPHKIT_DATA_DIR;

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Compares every percentage of one group column against published cells.
bool within_one(const GroupColumn& col, const std::vector<int>& expected, std::string& worst)
{
    bool ok = col.percentages.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        const int d = std::abs(col.percentages[i] - expected[i]);
        if (d > 1) {
            ok = false;
            worst = "bin " + std::to_string(i) + ": " + std::to_string(col.percentages[i]) + "% vs " +
                    std::to_string(expected[i]) + "%";
        }
    }
    return ok;
}

Outcome size_table()
{
    const auto t0 = Clock::now();
    const auto f = synth::sized_clusters({25, 11, 6, 1, 4}, {14, 20, 8, 5, 7});
    const auto t = size_distribution(f.clusters, f.origins);
    std::string worst;
    bool ok = within_one(t.nc, {53, 23, 13, 2, 9}, worst) && within_one(t.con, {26, 37, 15, 9, 13}, worst);
    // the published CON bin counts add up to 54
    ok = ok && t.nc.total == 47 && t.con.total == 54 && t.nc.percentages[0] == 53;
    const double secs = seconds_since(t0);
    return {ok && secs < 1.0, "NC <10 " + std::to_string(t.nc.percentages[0]) + "%, CON 10-19 " +
                                  std::to_string(t.con.percentages[1]) + "%, " + fmt("%.3fs", secs) +
                                  (worst.empty() ? "" : ", " + worst)};
}

Outcome removal_quality_tables()
{
    const auto f = synth::evaluation_records({33, 1, 5, 4, 12, 6, 5, 7, 0}, {12, 24, 25, 9, 3},
                                             {49, 1, 3, 9, 3, 3, 2, 7, 3}, {22, 29, 15, 11, 3});
    const auto r = analyze_clusters(f.clusters.clusters, f.records, f.clusters.origins);
    std::string worst;
    bool ok = within_one(r.removal_table.nc, {45, 1, 7, 5, 17, 8, 7, 10, 0}, worst) &&
              within_one(r.removal_table.con, {61, 1, 4, 11, 4, 4, 3, 9, 4}, worst) &&
              within_one(r.quality_table.nc, {17, 33, 34, 12, 4}, worst) &&
              within_one(r.quality_table.con, {28, 36, 18, 14, 4}, worst);
    ok = ok && r.removal_table.nc.total == 73 && r.removal_table.con.total == 80;
    return {ok, "NC 0% removed " + std::to_string(r.removal_table.nc.percentages[0]) + "%, CON Very Good " +
                    std::to_string(r.quality_table.con.percentages[0]) + "%" + (worst.empty() ? "" : ", " + worst)};
}

Outcome pearson_fixtures()
{
    struct Fixture {
        std::vector<double> x, y;
        double r;
    };
    const std::vector<Fixture> fixtures = {
        {{1, 2, 3}, {1, 2, 3}, 1.0},
        {{1, 2, 3}, {3, 2, 1}, -1.0},
        {{1, 2, 3, 4}, {1, 3, 2, 4}, 0.8},
        {{1, 2, 3}, {1, 3, 2}, 0.5},
        {{1, 2, 3, 4, 5}, {2, 4, 5, 4, 5}, std::sqrt(0.6)},
    };
    double worst = 0.0;
    for (const auto& f : fixtures)
        worst = std::max(worst, std::abs(pearson(f.x, f.y) - f.r));
    return {worst <= 1e-9, "5 fixtures, max |error| " + fmt("%.1e", worst)};
}

Outcome affix_oracle()
{
    const auto t0 = Clock::now();
    const AffixParams params;
    std::vector<std::vector<std::string>> corpora;
    {
        std::ifstream in(kData + "/imperfective_corpus.txt");
        std::ostringstream s;
        s << in.rdbuf();
        corpora.push_back(text::tokenize(s.str()));
    }
    corpora.push_back({"walk", "walks", "walked", "walking", "talk", "talks", "talked", "talking", "jump", "jumps",
                       "jumped", "jumping", "rewalk", "retalk", "rejump", "unjump", "play", "plays", "played",
                       "replay"});
    corpora.push_back({"kiteb", "kitbet", "kitbu", "kitba", "qasam", "qasmet", "qasmu", "qasma", "kiser", "kisret",
                       "kisru", "kisra", "ħadem", "ħadmet", "ħadmu"});
    {
        synth::Rng rng(17);
        std::set<std::string> words;
        for (int i = 0; i < 3; ++i)
            for (const auto& e : synth::stem_lexeme(rng))
                if (words.size() < 50)
                    words.insert(e.surface);
        corpora.emplace_back(words.begin(), words.end());
    }

    constexpr std::size_t k = 5;
    std::size_t agree = 0;
    for (const auto& corpus : corpora) {
        const auto inv = build_inventory(count_tokens(corpus), params);
        bool same = true;
        for (auto kind : {AffixKind::prefix, AffixKind::suffix}) {
            const auto expected = oracle::top_k_texts(oracle::brute_force_affixes(corpus, kind, params), k);
            const auto& list = kind == AffixKind::prefix ? inv.prefixes() : inv.suffixes();
            std::vector<std::string> got;
            for (std::size_t i = 0; i < list.size() && i < k; ++i)
                got.push_back(list[i].text);
            same = same && std::set<std::string>(got.begin(), got.end()) ==
                               std::set<std::string>(expected.begin(), expected.end());
        }
        agree += same ? 1 : 0;
    }

    const auto inv = build_inventory(count_tokens(corpora[0]), params);
    std::set<std::string> top_prefixes, suffixes;
    for (std::size_t i = 0; i < inv.prefixes().size() && i < 3; ++i)
        top_prefixes.insert(inv.prefixes()[i].text);
    for (const auto& s : inv.suffixes())
        suffixes.insert(s.text);
    const bool prefixes_ok = top_prefixes == std::set<std::string>{"j", "n", "t"};
    const bool suffixes_ok = suffixes.contains("w") && suffixes.contains("u");
    std::string found;
    for (const auto& s : suffixes)
        found += (found.empty() ? "" : ",") + s;
    const double secs = seconds_since(t0);
    const bool ok = agree == corpora.size() && prefixes_ok && suffixes_ok && secs < 5.0;
    return {ok, "oracle top-" + std::to_string(k) + " agreement " + std::to_string(agree) + "/" +
                    std::to_string(corpora.size()) + " corpora; paradigm prefixes " +
                    (prefixes_ok ? "{j,n,t}" : "mismatch") + "; suffixes {" + found + "}" +
                    (suffixes.contains("w") ? "" : " lack w") + (suffixes.contains("u") ? "" : " lack u") + ", " + fmt("%.2fs", secs)};
}

Outcome segmentation_round_trip()
{
    synth::Rng rng(2024);
    const std::vector<std::string> alphabet = {"a", "b", "d", "e", "g", "għ", "ħ", "i", "ie", "k", "ż", "u", "x"};
    auto random_string = [&](std::size_t lo, std::size_t hi) {
        std::string s;
        for (std::size_t i = 0, n = lo + rng.below(hi - lo + 1); i < n; ++i)
            s += rng.pick(alphabet);
        return s;
    };
    std::size_t failures = 0, words = 0;
    for (int inv_no = 0; inv_no < 500; ++inv_no) {
        std::vector<AffixCandidate> pre, suf;
        std::set<std::string> sp, ss;
        for (std::size_t i = 0, n = rng.below(8); i < n; ++i)
            if (auto a = random_string(1, 3); sp.insert(a).second)
                pre.push_back({a, AffixKind::prefix, 1.0, 1});
        for (std::size_t i = 0, n = rng.below(8); i < n; ++i)
            if (auto a = random_string(1, 3); ss.insert(a).second)
                suf.push_back({a, AffixKind::suffix, 1.0, 1});
        AffixParams params;
        params.min_stem_len = 1 + static_cast<int>(rng.below(3));
        params.max_prefixes = static_cast<int>(rng.below(3));
        const AffixInventory inv(pre, suf, params);
        for (int w = 0; w < 20; ++w, ++words) {
            const auto word = random_string(1, 12);
            const auto s = segment(word, inv);
            std::string joined;
            for (const auto& p : s.prefixes)
                joined += p;
            joined += s.stem;
            for (const auto& x : s.suffixes)
                joined += x;
            failures += joined == word ? 0 : 1;
        }
    }
    return {failures == 0 && words >= 10000,
            std::to_string(words) + " words, " + std::to_string(failures) + " failures"};
}

std::vector<std::vector<Instance>> binary_datasets()
{
    std::vector<std::vector<Instance>> out;
    auto point = [](std::size_t n, std::size_t bits) {
        Features f;
        for (std::size_t k = 0; k < n; ++k)
            f["f" + std::to_string(k)] = (bits >> k) & 1 ? "1" : "0";
        return f;
    };
    // conflict-free: every labelling of the 2^n points
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t points = std::size_t{1} << n;
        for (std::size_t labels = 0; labels < (std::size_t{1} << points); ++labels) {
            std::vector<Instance> d;
            for (std::size_t p = 0; p < points; ++p)
                d.push_back({point(n, p), (labels >> p) & 1 ? "b" : "a"});
            out.push_back(std::move(d));
        }
    }
    // with conflicts: every (a, b) multiplicity in 0..2 at each of 4 points (2 features)
    for (std::size_t code = 1; code < 6561; ++code) {
        std::vector<Instance> d;
        std::size_t c = code;
        for (std::size_t p = 0; p < 4; ++p) {
            const std::size_t a = c % 3, b = (c / 3) % 3;
            c /= 9;
            for (std::size_t i = 0; i < a; ++i)
                d.push_back({point(2, p), "a"});
            for (std::size_t i = 0; i < b; ++i)
                d.push_back({point(2, p), "b"});
        }
        out.push_back(std::move(d));
    }
    // with conflicts, 3 features: seeded sample of up to 16 instances
    synth::Rng rng(6);
    for (int s = 0; s < 1000; ++s) {
        std::vector<Instance> d;
        for (std::size_t i = 0, n = 1 + rng.below(16); i < n; ++i)
            d.push_back({point(3, rng.below(8)), rng.below(3) == 0 ? "c" : (rng.below(2) ? "a" : "b")});
        out.push_back(std::move(d));
    }
    return out;
}

Outcome tree_oracle()
{
    const auto datasets = binary_datasets();
    std::size_t agree = 0;
    TrainParams p;
    p.min_leaf = 1;
    for (const auto& d : datasets) {
        const auto depth = static_cast<int>(d.front().features.size());
        p.max_depth = depth;
        const auto t = train(d, "t", p);
        std::size_t hits = 0;
        for (const auto& i : d)
            hits += t.predict(i.features).label == i.label ? 1 : 0;
        agree += static_cast<int>(hits) == oracle::best_tree_hits(d, depth) ? 1 : 0;
    }

    // information gain against hand-computed entropies
    auto mk = [](const std::string& v, const std::string& l) { return Instance{Features{{"f", v}}, l}; };
    const std::vector<Instance> skew = {mk("a", "x"), mk("a", "x"), mk("a", "y"), mk("b", "y")};
    const std::vector<Instance> three = {mk("a", "x"), mk("a", "y"), mk("b", "z"), mk("b", "z"), mk("c", "x"),
                                         mk("c", "x")};
    const std::vector<Instance> perfect = {mk("a", "x"), mk("b", "y")};
    // H = 1; H|a = H(2/3,1/3) = log2 3 - 2/3
    const double g1 = 1.0 - 0.75 * (std::log2(3.0) - 2.0 / 3.0);
    // H(x 3/6, y 1/6, z 2/6) minus 1/3 * H(a branch) = 1/3
    const double h3 = -(0.5 * std::log2(0.5) + (1.0 / 6) * std::log2(1.0 / 6) + (1.0 / 3) * std::log2(1.0 / 3));
    const double g3 = h3 - 1.0 / 3.0;
    double err = std::abs(information_gain(skew, "f") - g1);
    err = std::max(err, std::abs(information_gain(three, "f") - g3));
    err = std::max(err, std::abs(information_gain(perfect, "f") - 1.0));

    const bool ok = agree == datasets.size() && datasets.size() >= 200 && err <= 1e-12;
    return {ok, std::to_string(agree) + "/" + std::to_string(datasets.size()) +
                    " datasets reach the exhaustive optimum; gain error " + fmt("%.1e", err)};
}

Outcome cascade_fit()
{
    std::ifstream in(kData + "/imperfective.tsv");
    if (!in)
        return {false, "cannot read imperfective.tsv"};
    const auto lex = load_labelled_lexicon(in).entries;
    std::vector<std::string> surfaces;
    for (const auto& e : lex)
        surfaces.push_back(e.surface);
    const auto inv = build_inventory(count_tokens(surfaces), AffixParams{});
    TrainParams p;
    p.min_leaf = 1;
    const auto cascade = train_cascade(lex, inv, kDefaultOrder, p);
    std::size_t person = 0, number = 0;
    std::string misses;
    for (const auto& e : lex) {
        const auto label = cascade.classify(e.surface);
        person += label.get(Property::person) == e.label.get(Property::person);
        number += label.get(Property::number) == e.label.get(Property::number);
        if (label.get(Property::person) != e.label.get(Property::person))
            misses += " " + e.surface + "(" + e.label.token(Property::person) + "->" +
                      label.token(Property::person) + ")";
    }
    const bool ok = person == lex.size() && number == lex.size();
    return {ok, "person " + std::to_string(person) + "/" + std::to_string(lex.size()) + ", number " +
                    std::to_string(number) + "/" + std::to_string(lex.size()) +
                    (misses.empty() ? "" : "; misses:" + misses)};
}

Outcome ordering()
{
    const auto data = synth::ordering_dataset();
    TrainParams tp;
    tp.min_leaf = 1;
    tp.max_depth = 2;
    SequenceSearchParams sp;
    sp.strategy = SearchStrategy::exhaustive;
    sp.properties = {Property::number, Property::polarity};
    sp.tree = tp;
    const AffixInventory none;
    const auto best = search_best_order(data.train, data.heldout, none, sp);
    const std::vector<Property> a_first = {Property::polarity, Property::number};
    const std::vector<Property> b_first = {Property::number, Property::polarity};
    const double forward = score_order(data.train, data.heldout, none, a_first, tp);
    const double reverse = score_order(data.train, data.heldout, none, b_first, tp);
    const bool ok = best.order == a_first && forward > reverse && best.score == forward;
    return {ok, "best " + format_order(best.order) + " " + fmt("%.4f", forward) + " vs reversed " +
                    fmt("%.4f", reverse)};
}

Outcome distribution_shift()
{
    std::string detail;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto d = synth::distribution_shift(seed);
        std::vector<std::string> surfaces;
        for (const auto& e : d.train)
            surfaces.push_back(e.surface);
        const auto inv = build_inventory(count_tokens(surfaces), AffixParams{});
        const auto cascade = train_cascade(d.train, inv, kDefaultOrder, TrainParams{});
        const double trad = mean_accuracy(evaluate(cascade, d.test, SegmentationSource::lexicon_when_present));
        const auto split = evaluate_split(cascade, d.gold);
        const double gold = mean_accuracy(*split.gold);
        ok = ok && gold <= trad;
        detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + " trad " +
                  fmt("%.3f", trad) + " gold " + fmt("%.3f", gold);
    }
    return {ok, detail};
}

int sh(const std::string& cmd)
{
    const int st = std::system((cmd + " >/dev/null 2>&1").c_str());
    return st;
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream s;
            s << in.rdbuf();
            files[fs::relative(e.path(), dir).string()] = s.str();
        }
    return files;
}

Outcome determinism()
{
    const auto t0 = Clock::now();
    std::vector<std::map<std::string, std::string>> runs;
    for (int r = 0; r < 2; ++r) {
        const auto dir = fs::temp_directory_path() / ("morphkit_determinism_" + std::to_string(r));
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string d = dir.string(), cli = kCli + " --set seed=7 ";
        const std::vector<std::string> steps = {
            cli + "affixes --corpus " + kData + "/corpus.txt --out " + d + "/affixes.tsv",
            cli + "segment --corpus " + kData + "/corpus.txt --affixes " + d + "/affixes.tsv --out " + d +
                "/segments.tsv",
            cli + "cluster --segments " + d + "/segments.tsv --corpus " + kData + "/corpus.txt --out " + d +
                "/clusters.tsv",
            cli + "analyze-clusters --clusters " + d + "/clusters.tsv --evals " + kData +
                "/cluster_evals.csv --origins " + kData + "/cluster_origins.tsv --out " + d + "/analysis.csv",
            cli + "train --lexicon " + kData + "/lexicon.tsv --search greedy --out " + d + "/cascade > " + d +
                "/search.txt",
            cli + "label --cascade " + d + "/cascade --words " + kData + "/words.txt > " + d + "/labels.txt",
            cli + "evaluate --cascade " + d + "/cascade --test " + kData + "/test.tsv --gold " + kData +
                "/gold.tsv --out " + d + "/report.csv > " + d + "/bars.txt",
        };
        for (const auto& s : steps)
            if (sh(s) != 0)
                return {false, "step failed: " + s};
        runs.push_back(snapshot(dir));
        fs::remove_all(dir);
    }
    const double secs = seconds_since(t0);
    const bool ok = runs[0] == runs[1] && runs[0].size() >= 10 && secs < 60.0;
    return {ok, std::to_string(runs[0].size()) + " artifacts " + (runs[0] == runs[1] ? "identical" : "DIFFER") +
                    " across two runs, " + fmt("%.2fs", secs)};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"cluster size table", size_table},
        {"removal and quality tables", removal_quality_tables},
        {"pearson fixtures", pearson_fixtures},
        {"affix discovery oracle", affix_oracle},
        {"segmentation round trip", segmentation_round_trip},
        {"decision tree oracle", tree_oracle},
        {"cascade fit on the imperfective paradigm", cascade_fit},
        {"ordering sensitivity", ordering},
        {"distribution shift direction", distribution_shift},
        {"pipeline determinism", determinism},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(static_cast<std::size_t>(std::atoi(argv[i])));
    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected.empty() && !selected.contains(i + 1))
            continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all_ok = all_ok && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    return all_ok ? 0 : 1;
}
