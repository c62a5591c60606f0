// morphkit command-line tool.

#include "morphkit/affixes.hpp"
#include "morphkit/cascade.hpp"
#include "morphkit/cluster_stats.hpp"
#include "morphkit/clustering.hpp"
#include "morphkit/config.hpp"
#include "morphkit/error.hpp"
#include "morphkit/evaluation.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace morphkit;

namespace {

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kIo = 3, kData = 4 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::config: return kUsage;
    case ErrorKind::io: return kIo;
    case ErrorKind::decode:
    case ErrorKind::schema: return kData;
    default: return kOther;
    }
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot read " + path);
    return slurp(in);
}

// Outputs are assembled in memory and written only after every input has
// been read and checked.
void write_text(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::io, "cannot write " + path);
    out << content;
    if (!out)
        throw Error(ErrorKind::io, "write failed: " + path);
}

struct Options {
    std::string config_path;
    std::vector<std::string> settings;
    std::map<std::string, std::string> inputs;  // flag name -> path from the command line
    std::string out;
    std::string order;
    std::string search;
    std::vector<std::string> words;
    bool text_report = false;
};

Config resolve_config(const Options& o)
{
    Config c;
    std::string path = o.config_path;
    if (path.empty())
        if (const char* env = std::getenv("MORPHKIT_CONFIG"); env && *env)
            path = env;
    if (!path.empty())
        c = load_config(path);
    for (const auto& s : o.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::config, "--set expects key=value, got '" + s + "'");
        auto trim = [](std::string v) {
            v.erase(0, v.find_first_not_of(" \t"));
            v.erase(v.find_last_not_of(" \t") + 1);
            return v;
        };
        apply_setting(c, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    for (const auto& [k, v] : o.inputs)
        if (!v.empty())
            c.paths[k] = v;
    c.validate();
    return c;
}

std::string input(const Config& c, const std::string& key)
{
    auto it = c.paths.find(key);
    if (it == c.paths.end())
        throw Error(ErrorKind::config, "missing --" + key);
    return it->second;
}

std::optional<std::string> optional_input(const Config& c, const std::string& key)
{
    auto it = c.paths.find(key);
    if (it == c.paths.end())
        return std::nullopt;
    return it->second;
}

std::vector<LabelledEntry> read_lexicon(const std::string& path)
{
    std::istringstream in(read_text(path));
    return load_labelled_lexicon(in).entries;
}

AffixInventory read_inventory_file(const std::string& path, const AffixParams& params)
{
    std::istringstream in(read_text(path));
    return read_inventory(in, params);
}

int run_affixes(const Options& o)
{
    const auto c = resolve_config(o);
    const auto words = load_corpus_text(read_text(input(c, "corpus")));
    const auto inventory = build_inventory(words, c.affix);
    std::ostringstream out;
    write_inventory(out, inventory);
    write_text(o.out, out.str());
    return kOk;
}

int run_segment(const Options& o)
{
    const auto c = resolve_config(o);
    const auto words = load_corpus_text(read_text(input(c, "corpus")));
    const auto inventory = read_inventory_file(input(c, "affixes"), c.affix);
    std::vector<Segmentation> segs;
    for (const auto& w : words)
        segs.push_back(segment(w.surface, inventory));
    std::ostringstream out;
    write_segmentations(out, segs);
    write_text(o.out, out.str());
    return kOk;
}

int run_cluster(const Options& o)
{
    const auto c = resolve_config(o);
    std::istringstream seg_in(read_text(input(c, "segments")));
    const auto segs = read_segmentations(seg_in);
    const auto tokens = text::tokenize(read_text(input(c, "corpus")));
    std::vector<std::string> vocabulary;
    for (const auto& s : segs)
        vocabulary.push_back(s.surface());
    const auto vectors = build_context_vectors(tokens, vocabulary, c.similarity.window);
    const auto merged = merge_clusters(initial_clusters(segs), vectors, c.similarity);
    std::ostringstream out;
    write_clusters(out, merged);
    write_text(o.out, out.str());
    return kOk;
}

int run_analyze(const Options& o)
{
    const auto c = resolve_config(o);
    std::istringstream cl_in(read_text(input(c, "clusters")));
    const auto clusters = read_clusters(cl_in);
    std::istringstream ev_in(read_text(input(c, "evals")));
    const auto records = load_cluster_evals(ev_in, clusters);
    std::istringstream or_in(read_text(input(c, "origins")));
    const auto origins = read_origin_tags(or_in);
    const auto report = analyze_clusters(clusters, records, origins);
    std::ostringstream out;
    if (o.text_report)
        write_report_text(out, report);
    else
        write_report_csv(out, report);
    write_text(o.out, out.str());
    return kOk;
}

int run_train(const Options& o)
{
    auto c = resolve_config(o);
    if (!o.order.empty() && !o.search.empty())
        throw Error(ErrorKind::config, "--order and --search are mutually exclusive");
    const auto lexicon = read_lexicon(input(c, "lexicon"));
    if (lexicon.empty())
        throw Error(ErrorKind::schema, "lexicon has no entries");

    AffixInventory inventory;
    if (auto path = optional_input(c, "affixes")) {
        inventory = read_inventory_file(*path, c.affix);
    } else {
        std::vector<std::string> surfaces;
        for (const auto& e : lexicon)
            surfaces.push_back(e.surface);
        inventory = build_inventory(count_tokens(surfaces), c.affix);
    }

    std::vector<Property> order = c.order;
    if (!o.order.empty()) {
        try {
            order = parse_order(o.order);
        } catch (const Error& e) {
            throw Error(ErrorKind::config, std::string("--order: ") + e.what());
        }
    }
    if (!o.search.empty()) {
        const auto strategy = parse_search_strategy(o.search);
        if (!strategy)
            throw Error(ErrorKind::config, "--search must be exhaustive or greedy");
        const auto split = split_dataset(lexicon, {1.0 - c.heldout_fraction, c.heldout_fraction, 0.0}, c.seed);
        SequenceSearchParams sp;
        sp.strategy = *strategy;
        sp.beam = c.beam;
        sp.properties = order;
        sp.tree = c.tree;
        const auto result = search_best_order(split.train, split.heldout, inventory, sp);
        order = result.order;
        char score[32];
        std::snprintf(score, sizeof score, "%.6f", result.score);
        std::cout << "order " << format_order(order) << " heldout_score " << score << '\n';
    }
    const auto cascade = train_cascade(lexicon, inventory, order, c.tree);
    save_bundle(cascade, o.out);
    return kOk;
}

int run_label(const Options& o)
{
    const auto c = resolve_config(o);
    const auto cascade = load_bundle(input(c, "cascade"));
    std::vector<std::string> words;
    if (auto path = optional_input(c, "words")) {
        std::istringstream in(read_text(*path));
        std::string line;
        while (std::getline(in, line)) {
            auto w = text::normalize(line);
            w.erase(0, w.find_first_not_of(" \t\r"));
            w.erase(w.find_last_not_of(" \t\r") + 1);
            if (!w.empty())
                words.push_back(w);
        }
    }
    for (const auto& w : o.words)
        words.push_back(text::normalize(w));
    if (words.empty())
        throw Error(ErrorKind::config, "no words given (use --words FILE or positional words)");
    constexpr std::array<Property, kPropertyCount> kOutputOrder = {
        Property::person, Property::number, Property::tam, Property::gender,
        Property::dir_obj, Property::ind_obj, Property::polarity,
    };
    std::ostringstream out;
    for (const auto& w : words) {
        const auto label = cascade.classify(w);
        out << w;
        for (auto p : kOutputOrder)
            out << ' ' << name(p) << '=' << label.token(p);
        out << '\n';
    }
    std::cout << out.str();
    return kOk;
}

int run_evaluate(const Options& o)
{
    const auto c = resolve_config(o);
    const auto cascade = load_bundle(input(c, "cascade"));
    const auto test = read_lexicon(input(c, "test"));
    EvalReport report;
    if (auto gold_path = optional_input(c, "gold")) {
        const auto gold = read_lexicon(*gold_path);
        report = evaluate_split(cascade, gold);
    }
    report.order = cascade.order();
    report.traditional = evaluate(cascade, test, SegmentationSource::lexicon_when_present);
    report.traditional_count = test.size();
    report.seed = c.seed;

    std::ostringstream csv;
    write_report_csv(csv, report);
    write_text(o.out, csv.str());
    std::cout << "traditional " << report.traditional_count;
    if (report.gold)
        std::cout << " gold " << report.gold_count << " con " << report.con_count << " nc " << report.nc_count;
    std::cout << '\n' << render_bars(report);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Morphological clustering and cascaded labelling toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "Configuration file (default: $MORPHKIT_CONFIG)");
    app.add_option("--set", o.settings, "Override a configuration key (key=value)");

    auto path_flag = [&](CLI::App* sub, const std::string& key, const std::string& help) {
        sub->add_option("--" + key, o.inputs[key], help);
    };
    auto out_flag = [&](CLI::App* sub, const std::string& help) {
        sub->add_option("--out", o.out, help)->required();
    };

    auto* affixes = app.add_subcommand("affixes", "Discover a ranked affix inventory from a corpus");
    path_flag(affixes, "corpus", "Corpus text");
    out_flag(affixes, "Inventory TSV");

    auto* seg = app.add_subcommand("segment", "Segment every corpus word with an inventory");
    path_flag(seg, "corpus", "Corpus text");
    path_flag(seg, "affixes", "Inventory TSV");
    out_flag(seg, "Segmentation TSV");

    auto* cluster = app.add_subcommand("cluster", "Cluster words by stem, then merge by similarity");
    path_flag(cluster, "segments", "Segmentation TSV");
    path_flag(cluster, "corpus", "Corpus text for context vectors");
    out_flag(cluster, "Cluster TSV");

    auto* analyze = app.add_subcommand("analyze-clusters", "Size, removal and quality tables per subsystem");
    path_flag(analyze, "clusters", "Cluster TSV");
    path_flag(analyze, "evals", "Expert evaluation CSV");
    path_flag(analyze, "origins", "Cluster origin TSV");
    out_flag(analyze, "Report file");
    analyze->add_flag("--text", o.text_report, "Plain-text tables instead of CSV");

    auto* train = app.add_subcommand("train", "Train a cascade bundle");
    path_flag(train, "lexicon", "Labelled lexicon TSV");
    path_flag(train, "affixes", "Inventory TSV (default: discovered from the lexicon)");
    train->add_option("--order", o.order, "Comma-separated property order");
    train->add_option("--search", o.search, "Search the order on held-out data: exhaustive or greedy");
    out_flag(train, "Bundle directory");

    auto* label = app.add_subcommand("label", "Label words with a cascade");
    path_flag(label, "cascade", "Bundle directory");
    path_flag(label, "words", "Word list, one per line");
    label->add_option("word", o.words, "Words to label");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Traditional and gold-standard evaluation");
    path_flag(evaluate_cmd, "cascade", "Bundle directory");
    path_flag(evaluate_cmd, "test", "Held-out labelled lexicon");
    path_flag(evaluate_cmd, "gold", "Gold-standard lexicon with origins (optional)");
    out_flag(evaluate_cmd, "Report CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "morphkit: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*affixes) return run_affixes(o);
        if (*seg) return run_segment(o);
        if (*cluster) return run_cluster(o);
        if (*analyze) return run_analyze(o);
        if (*train) return run_train(o);
        if (*label) return run_label(o);
        if (*evaluate_cmd) return run_evaluate(o);
    } catch (const Error& e) {
        std::cerr << "morphkit: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "morphkit: " << e.what() << '\n';
        return kOther;
    }
    return kOther;
}
