// Brute-force reference implementations the fast paths are checked against.
// Everything here favors obviousness over speed and shares no code with the
// library's computation paths.
#ifndef LEXNET_TESTS_ORACLES_HPP
#define LEXNET_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lexnet/colloc.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/network.hpp"
#include "lexnet/rng.hpp"

namespace oracles {

// --- exact Fisher right tail over 128-bit rationals (totals <= ~60) --------

class BinomialTable {
public:
    explicit BinomialTable(unsigned max_n) : max_n_(max_n) {
        rows_.resize(max_n + 1);
        for (unsigned n = 0; n <= max_n; ++n) {
            rows_[n].resize(n + 1);
            rows_[n][0] = rows_[n][n] = 1;
            for (unsigned k = 1; k < n; ++k)
                rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
        }
    }

    unsigned __int128 choose(unsigned n, unsigned k) const {
        if (k > n) return 0;
        return rows_[n][k];
    }

    unsigned max_n() const { return max_n_; }

private:
    unsigned max_n_;
    std::vector<std::vector<unsigned __int128>> rows_;
};

// P(N11 >= n11) as an exact rational, evaluated in long double at the end.
inline long double exact_fisher_right(const BinomialTable& binom, unsigned n11,
                                      unsigned n12, unsigned n21, unsigned n22) {
    const unsigned r1 = n11 + n12;
    const unsigned c1 = n11 + n21;
    const unsigned n = n11 + n12 + n21 + n22;
    const unsigned hi = std::min(r1, c1);
    unsigned __int128 numerator = 0;
    for (unsigned k = n11; k <= hi; ++k)
        numerator += binom.choose(c1, k) * binom.choose(n - c1, r1 - k);
    return static_cast<long double>(numerator) /
           static_cast<long double>(binom.choose(n, r1));
}

// --- adjacency-matrix graph oracle -----------------------------------------

struct DenseGraph {
    std::size_t n = 0;
    std::vector<std::vector<bool>> adj; // includes loops on the diagonal

    explicit DenseGraph(const lexnet::WordNetwork& net)
        : n(net.vertex_count()), adj(n, std::vector<bool>(n, false)) {
        for (const auto& [a, b] : net.edges()) {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
};

inline std::vector<std::uint32_t> brute_degrees(const DenseGraph& g) {
    std::vector<std::uint32_t> degrees(g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            if (g.adj[i][j]) degrees[i]++;
    return degrees;
}

// local and global clustering, loops dropped, degree-<2 vertices skipped
inline std::pair<double, double> brute_clustering(const DenseGraph& g) {
    double local_sum = 0.0;
    std::size_t eligible = 0;
    std::uint64_t closed = 0, triplets = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        std::vector<std::size_t> nbrs;
        for (std::size_t u = 0; u < g.n; ++u)
            if (u != v && g.adj[v][u]) nbrs.push_back(u);
        if (nbrs.size() < 2) continue;
        std::uint64_t links = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (nbrs[i] != nbrs[j] && g.adj[nbrs[i]][nbrs[j]]) links++;
        const std::uint64_t pairs = nbrs.size() * (nbrs.size() - 1) / 2;
        local_sum += static_cast<double>(links) / static_cast<double>(pairs);
        eligible++;
        closed += links;
        triplets += pairs;
    }
    const double local = eligible ? local_sum / static_cast<double>(eligible) : 0.0;
    const double global =
        triplets ? static_cast<double>(closed) / static_cast<double>(triplets) : 0.0;
    return {local, global};
}

// k -> mean over degree-k vertices of (mean loop-free neighbor degree)
inline std::map<std::uint32_t, double> brute_knn(const DenseGraph& g) {
    std::vector<std::uint32_t> deg(g.n, 0);
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::size_t u = 0; u < g.n; ++u)
            if (u != v && g.adj[v][u]) deg[v]++;
    std::map<std::uint32_t, std::pair<double, std::size_t>> acc;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (deg[v] == 0) continue;
        double sum = 0.0;
        for (std::size_t u = 0; u < g.n; ++u)
            if (u != v && g.adj[v][u]) sum += deg[u];
        auto& slot = acc[deg[v]];
        slot.first += sum / deg[v];
        slot.second++;
    }
    std::map<std::uint32_t, double> result;
    for (const auto& [k, slot] : acc) result[k] = slot.first / slot.second;
    return result;
}

struct BrutePaths {
    std::uint32_t diameter = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t component_size = 0;
};

// Floyd-Warshall on the component containing the most vertices (smallest
// min-id on ties), matching the largest_component contract.
inline BrutePaths brute_paths(const DenseGraph& g) {
    constexpr std::uint32_t kInf = UINT32_MAX / 2;
    std::vector<std::vector<std::uint32_t>> dist(g.n,
                                                 std::vector<std::uint32_t>(g.n, kInf));
    for (std::size_t i = 0; i < g.n; ++i) {
        dist[i][i] = 0;
        for (std::size_t j = 0; j < g.n; ++j)
            if (i != j && g.adj[i][j]) dist[i][j] = 1;
    }
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

    // component membership by reachability; pick the best one
    std::vector<bool> seen(g.n, false);
    std::vector<std::size_t> best;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (seen[v]) continue;
        bool isolated = true;
        for (std::size_t u = 0; u < g.n; ++u)
            if (g.adj[v][u]) isolated = false;
        if (isolated) {
            seen[v] = true;
            continue;
        }
        std::vector<std::size_t> comp;
        for (std::size_t u = 0; u < g.n; ++u) {
            if (dist[v][u] < kInf) {
                comp.push_back(u);
                seen[u] = true;
            }
        }
        if (comp.size() > best.size()) best = comp;
    }
    BrutePaths result;
    if (best.empty()) {
        result.component_size = 1; // all-isolated fallback
        return result;
    }
    result.component_size = best.size();
    std::uint64_t count = 0, sum = 0, sum_sq = 0;
    for (std::size_t i = 0; i < best.size(); ++i) {
        for (std::size_t j = i + 1; j < best.size(); ++j) {
            const std::uint32_t d = dist[best[i]][best[j]];
            result.diameter = std::max(result.diameter, d);
            count++;
            sum += d;
            sum_sq += static_cast<std::uint64_t>(d) * d;
        }
    }
    if (count) {
        result.mean = static_cast<double>(sum) / static_cast<double>(count);
        const double mean_sq = static_cast<double>(sum_sq) / static_cast<double>(count);
        result.stddev = std::sqrt(std::max(0.0, mean_sq - result.mean * result.mean));
    }
    return result;
}

// --- seeded random inputs ---------------------------------------------------

inline lexnet::WordNetwork random_graph(std::uint32_t n, std::uint64_t m,
                                        std::uint64_t seed, bool allow_loops = false) {
    lexnet::Rng rng(seed);
    std::set<std::pair<lexnet::TokenId, lexnet::TokenId>> edges;
    std::uint64_t guard = 0;
    while (edges.size() < m && guard++ < 50 * m + 1000) {
        auto a = static_cast<lexnet::TokenId>(rng.next_below(n));
        auto b = static_cast<lexnet::TokenId>(rng.next_below(n));
        if (!allow_loops && a == b) continue;
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
    }
    return lexnet::WordNetwork::from_edges(
        n, std::vector<lexnet::Edge>(edges.begin(), edges.end()));
}

inline lexnet::Vocabulary synthetic_vocab(std::size_t size) {
    lexnet::Vocabulary vocab;
    for (std::size_t i = 0; i < size; ++i) vocab.intern("w" + std::to_string(i));
    return vocab;
}

inline std::pair<lexnet::Corpus, lexnet::Vocabulary>
random_corpus(std::uint64_t seed, std::uint32_t max_docs = 5,
              std::uint32_t max_sentences = 8, std::uint32_t max_len = 12,
              std::uint32_t max_vocab = 30) {
    lexnet::Rng rng(seed);
    const auto v = static_cast<std::uint32_t>(2 + rng.next_below(max_vocab - 1));
    lexnet::Vocabulary vocab = synthetic_vocab(v);
    lexnet::Corpus corpus;
    const auto docs = 1 + rng.next_below(max_docs);
    for (std::uint64_t d = 0; d < docs; ++d) {
        lexnet::Document doc;
        const auto sentences = 1 + rng.next_below(max_sentences);
        for (std::uint64_t s = 0; s < sentences; ++s) {
            lexnet::Sentence sentence;
            const auto len = 1 + rng.next_below(max_len);
            for (std::uint64_t t = 0; t < len; ++t) {
                const auto id = static_cast<lexnet::TokenId>(rng.next_below(v));
                sentence.push_back(id);
                vocab.freq[id]++;
            }
            doc.sentences.push_back(std::move(sentence));
        }
        corpus.documents.push_back(std::move(doc));
    }
    return {std::move(corpus), std::move(vocab)};
}

// multiset fingerprint for permutation checks
inline std::vector<lexnet::TokenId> sorted_tokens(const lexnet::Sentence& s) {
    std::vector<lexnet::TokenId> copy(s);
    std::sort(copy.begin(), copy.end());
    return copy;
}

} // namespace oracles

#endif
