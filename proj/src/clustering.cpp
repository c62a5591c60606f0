#include "morphkit/clustering.hpp"

#include "morphkit/error.hpp"
#include "morphkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

namespace morphkit {

bool Cluster::contains(std::string_view word) const
{
    return std::binary_search(members.begin(), members.end(), word);
}

ClusterSet::ClusterSet(std::vector<Cluster> clusters) : clusters_(std::move(clusters))
{
    for (auto& c : clusters_) {
        if (c.members.empty())
            throw Error(ErrorKind::precondition, "cluster " + c.id + " has no members");
        std::sort(c.members.begin(), c.members.end());
        c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
        std::sort(c.stem_keys.begin(), c.stem_keys.end());
        c.stem_keys.erase(std::unique(c.stem_keys.begin(), c.stem_keys.end()), c.stem_keys.end());
    }
    std::sort(clusters_.begin(), clusters_.end(),
              [](const Cluster& a, const Cluster& b) { return a.members.front() < b.members.front(); });
    for (std::size_t i = 0; i < clusters_.size(); ++i)
        if (!index_.emplace(clusters_[i].id, i).second)
            throw Error(ErrorKind::precondition, "duplicate cluster id " + clusters_[i].id);
}

const Cluster* ClusterSet::find(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &clusters_[it->second];
}

std::size_t ClusterSet::vocabulary_size() const
{
    std::size_t n = 0;
    for (const auto& c : clusters_)
        n += c.members.size();
    return n;
}

std::string cluster_id_for(const std::vector<std::string>& sorted_members)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    for (const auto& m : sorted_members) {
        for (unsigned char c : m)
            mix(c);
        mix('\n');
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "c%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ClusterSet initial_clusters(std::span<const Segmentation> segmentations)
{
    std::map<std::string, std::vector<std::string>> by_stem;
    std::set<std::string> seen;
    for (const auto& s : segmentations) {
        auto surface = s.surface();
        if (!seen.insert(surface).second)
            throw Error(ErrorKind::precondition, "word '" + surface + "' segmented more than once");
        by_stem[s.stem].push_back(std::move(surface));
    }
    std::vector<Cluster> clusters;
    for (auto& [stem, members] : by_stem) {
        std::sort(members.begin(), members.end());
        Cluster c;
        c.id = cluster_id_for(members);
        c.members = std::move(members);
        c.stem_keys = {stem};
        clusters.push_back(std::move(c));
    }
    return ClusterSet(std::move(clusters));
}

namespace {

std::size_t longest_common_substring(std::u32string_view a, std::u32string_view b)
{
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

double lcs_ratio(std::u32string_view a, std::u32string_view b)
{
    if (a.empty() || b.empty())
        throw Error(ErrorKind::precondition, "orthographic similarity of an empty string");
    return 2.0 * static_cast<double>(longest_common_substring(a, b)) / static_cast<double>(a.size() + b.size());
}

double dot(const ContextVectors::SparseVector& a, const ContextVectors::SparseVector& b)
{
    double sum = 0.0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else {
            sum += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return sum;
}

double cosine(const ContextVectors::SparseVector& a, const ContextVectors::SparseVector& b, double norm_a,
              double norm_b)
{
    if (norm_a == 0.0 || norm_b == 0.0)
        return 0.0;
    return std::clamp(dot(a, b) / (norm_a * norm_b), 0.0, 1.0);
}

}  // namespace

double orthographic_similarity(std::string_view a, std::string_view b)
{
    return lcs_ratio(text::decode(a), text::decode(b));
}

const ContextVectors::SparseVector& ContextVectors::vector_for(std::string_view word) const
{
    static const SparseVector kEmpty;
    auto it = vectors.find(std::string(word));
    return it == vectors.end() ? kEmpty : it->second;
}

double ContextVectors::count(std::string_view word, std::string_view context) const
{
    auto pos = std::lower_bound(context_vocabulary.begin(), context_vocabulary.end(), context);
    if (pos == context_vocabulary.end() || *pos != context)
        return 0.0;
    const auto dim = static_cast<std::uint32_t>(pos - context_vocabulary.begin());
    const auto& v = vector_for(word);
    auto it = std::lower_bound(v.begin(), v.end(), dim, [](const auto& e, std::uint32_t d) { return e.first < d; });
    return it != v.end() && it->first == dim ? it->second : 0.0;
}

ContextVectors build_context_vectors(std::span<const std::string> corpus_tokens,
                                     std::span<const std::string> vocabulary, int window)
{
    if (window < 1)
        throw Error(ErrorKind::precondition, "context window must be >= 1");
    ContextVectors cv;
    cv.context_vocabulary.assign(corpus_tokens.begin(), corpus_tokens.end());
    std::sort(cv.context_vocabulary.begin(), cv.context_vocabulary.end());
    cv.context_vocabulary.erase(std::unique(cv.context_vocabulary.begin(), cv.context_vocabulary.end()),
                                cv.context_vocabulary.end());

    std::vector<std::uint32_t> ids(corpus_tokens.size());
    for (std::size_t i = 0; i < corpus_tokens.size(); ++i)
        ids[i] = static_cast<std::uint32_t>(
            std::lower_bound(cv.context_vocabulary.begin(), cv.context_vocabulary.end(), corpus_tokens[i]) -
            cv.context_vocabulary.begin());

    std::unordered_map<std::string, std::map<std::uint32_t, double>> counts;
    for (const auto& w : vocabulary)
        counts.try_emplace(w);
    const auto n = static_cast<std::ptrdiff_t>(corpus_tokens.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto it = counts.find(corpus_tokens[static_cast<std::size_t>(i)]);
        if (it == counts.end())
            continue;
        const auto lo = std::max<std::ptrdiff_t>(0, i - window);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + window);
        for (std::ptrdiff_t j = lo; j <= hi; ++j)
            if (j != i)
                it->second[ids[static_cast<std::size_t>(j)]] += 1.0;
    }
    for (auto& [word, m] : counts)
        cv.vectors.emplace(word, ContextVectors::SparseVector(m.begin(), m.end()));
    return cv;
}

double semantic_similarity(std::string_view a, std::string_view b, const ContextVectors& vectors)
{
    const auto& va = vectors.vector_for(a);
    const auto& vb = vectors.vector_for(b);
    return cosine(va, vb, std::sqrt(dot(va, va)), std::sqrt(dot(vb, vb)));
}

void SimilarityParams::validate() const
{
    if (!(ortho_threshold >= 0.0 && ortho_threshold <= 1.0))
        throw Error(ErrorKind::precondition, "ortho_threshold must be in [0,1]");
    if (!(sem_threshold >= 0.0 && sem_threshold <= 1.0))
        throw Error(ErrorKind::precondition, "sem_threshold must be in [0,1]");
    if (window < 1)
        throw Error(ErrorKind::precondition, "window must be >= 1");
    if (max_merge_rounds < 0)
        throw Error(ErrorKind::precondition, "max_merge_rounds must be >= 0");
}

namespace {

struct WordInfo {
    std::u32string chars;
    const ContextVectors::SparseVector* vec;
    double norm;
    std::size_t cluster;
};

using PairKey = std::pair<std::size_t, std::size_t>;

Cluster merge_pair(const Cluster& a, const Cluster& b)
{
    Cluster m;
    std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
               std::back_inserter(m.members));
    std::set_union(a.stem_keys.begin(), a.stem_keys.end(), b.stem_keys.begin(), b.stem_keys.end(),
                   std::back_inserter(m.stem_keys));
    m.merge_depth = 1 + std::max(a.merge_depth, b.merge_depth);
    m.id = cluster_id_for(m.members);
    return m;
}

/// One merge round; returns false at a fixed point.
bool merge_round(std::vector<Cluster>& clusters, const ContextVectors& vectors, const SimilarityParams& params)
{
    std::vector<WordInfo> words;
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        for (const auto& m : clusters[ci].members) {
            const auto& v = vectors.vector_for(m);
            words.push_back({text::decode(m), &v, std::sqrt(dot(v, v)), ci});
        }
    }

    std::map<PairKey, double> best_ortho, best_sem;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            const auto& u = words[i];
            const auto& v = words[j];
            if (u.cluster == v.cluster)
                continue;
            const PairKey key = std::minmax(u.cluster, v.cluster);
            const double len_sum = static_cast<double>(u.chars.size() + v.chars.size());
            const double ortho_bound = 2.0 * static_cast<double>(std::min(u.chars.size(), v.chars.size())) / len_sum;
            if (ortho_bound > params.ortho_threshold) {
                const double o = lcs_ratio(u.chars, v.chars);
                if (o > params.ortho_threshold) {
                    auto& slot = best_ortho[key];
                    slot = std::max(slot, o);
                }
            }
            const double s = cosine(*u.vec, *v.vec, u.norm, v.norm);
            if (s > params.sem_threshold) {
                auto& slot = best_sem[key];
                slot = std::max(slot, s);
            }
        }
    }

    struct Candidate {
        double affinity;
        PairKey pair;
    };
    std::vector<Candidate> candidates;
    for (const auto& [key, o] : best_ortho) {
        auto it = best_sem.find(key);
        if (it != best_sem.end())
            candidates.push_back({(o + it->second) / 2.0, key});
    }
    if (candidates.empty())
        return false;
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.affinity != b.affinity)
            return a.affinity > b.affinity;
        return std::tie(clusters[a.pair.first].id, clusters[a.pair.second].id) <
               std::tie(clusters[b.pair.first].id, clusters[b.pair.second].id);
    });

    std::vector<bool> used(clusters.size(), false);
    std::vector<Cluster> next;
    for (const auto& c : candidates) {
        if (used[c.pair.first] || used[c.pair.second])
            continue;
        used[c.pair.first] = used[c.pair.second] = true;
        next.push_back(merge_pair(clusters[c.pair.first], clusters[c.pair.second]));
    }
    for (std::size_t i = 0; i < clusters.size(); ++i)
        if (!used[i])
            next.push_back(std::move(clusters[i]));
    clusters = std::move(next);
    return true;
}

}  // namespace

ClusterSet merge_clusters(const ClusterSet& set, const ContextVectors& vectors, const SimilarityParams& params)
{
    params.validate();
    std::vector<Cluster> clusters = set.clusters();
    for (int round = 0; round < params.max_merge_rounds; ++round)
        if (!merge_round(clusters, vectors, params))
            break;
    return ClusterSet(std::move(clusters));
}

void write_clusters(std::ostream& out, const ClusterSet& set)
{
    for (const auto& c : set.clusters())
        out << c.id << '\t' << c.merge_depth << '\t' << text::join(c.members, " ") << '\n';
}

ClusterSet read_clusters(std::istream& in)
{
    std::vector<Cluster> clusters;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = text::split(line, '\t');
        if (cells.size() != 3)
            throw ParseError(line_no, "expected id, merge_depth, members");
        Cluster c;
        c.id = cells[0];
        try {
            std::size_t pos = 0;
            c.merge_depth = std::stoi(cells[1], &pos);
            if (pos != cells[1].size() || c.merge_depth < 0)
                throw std::invalid_argument("depth");
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad merge depth '" + cells[1] + "'");
        }
        for (auto& m : text::split(cells[2], ' '))
            if (!m.empty())
                c.members.push_back(std::move(m));
        if (c.members.empty())
            throw ParseError(line_no, "cluster " + c.id + " has no members");
        clusters.push_back(std::move(c));
    }
    try {
        return ClusterSet(std::move(clusters));
    } catch (const Error& e) {
        throw Error(ErrorKind::schema, e.what());
    }
}

}  // namespace morphkit
