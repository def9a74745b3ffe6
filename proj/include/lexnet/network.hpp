#ifndef LEXNET_NETWORK_HPP
#define LEXNET_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexnet/colloc.hpp"
#include "lexnet/corpus.hpp"

namespace lexnet {

/// Constraint levels ordered from most to least linguistic constraint.
enum class ConstraintLevel { COLL, PLAIN, RANSEN, RANDOC };

std::string to_string(ConstraintLevel level);
std::optional<ConstraintLevel> parse_level(const std::string& name);

using Edge = std::pair<TokenId, TokenId>; // normalized i <= j; i == j is a loop

/// Undirected word graph with binary adjacency; loops allowed. Vertices cover
/// the whole vocabulary, so isolated words stay in the vertex set. Immutable
/// once built.
class WordNetwork {
public:
    WordNetwork() = default;

    /// Normalizes, sorts, and deduplicates the edges.
    static WordNetwork from_edges(std::uint32_t n, std::vector<Edge> edges,
                                  std::shared_ptr<const Vocabulary> vocab = nullptr);

    std::uint32_t vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return edges_.size(); }
    std::uint64_t loop_count() const { return loops_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::shared_ptr<const Vocabulary>& vocab() const { return vocab_; }

    /// Degree per Eq.-style counting: the number of adjacent vertices, a loop
    /// contributing exactly 1. Throws std::domain_error for out-of-range ids.
    std::uint32_t degree(TokenId i) const;

    /// Sorted neighbor list of i; a loop shows up as i itself, once.
    std::span<const TokenId> neighbors(TokenId i) const;

    /// When this network is an induced subgraph, maps local ids back to the
    /// parent's ids. Empty for networks built directly over a vocabulary.
    const std::vector<TokenId>& original_ids() const { return original_ids_; }

private:
    std::uint32_t n_ = 0;
    std::uint64_t loops_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> offsets_;
    std::vector<TokenId> adjacency_;
    std::vector<TokenId> original_ids_;
    std::shared_ptr<const Vocabulary> vocab_;

    friend WordNetwork largest_component(const WordNetwork&);
};

struct DensityStats {
    double mean_degree = 0.0;  // (sum of degrees) / n
    double link_density = 0.0; // m / C(n+1, 2): fraction of linkable pairs, loops included
    std::uint64_t edge_count = 0;
};

/// Links every within-sentence adjacent token pair. Repeated-word adjacency
/// (w, w) yields a loop. Vertex count is the vocabulary size.
WordNetwork build_cooccurrence(const Corpus& corpus,
                               std::shared_ptr<const Vocabulary> vocab);

/// One edge per unordered collocation pair; all vocabulary ids stay as
/// vertices even when isolated.
WordNetwork build_collocation_network(const CollocationSet& colls,
                                      std::shared_ptr<const Vocabulary> vocab);

DensityStats density_stats(const WordNetwork& net);

/// Induced subgraph on the largest connected vertex set; ties broken by the
/// smallest contained vertex id. Isolated vertices never form the component
/// unless the graph has no edges at all, in which case the component is the
/// single smallest-id vertex.
WordNetwork largest_component(const WordNetwork& net);

/// Metadata carried in the edge-list header line
/// "# n=<n> m=<m> level=<level> vertex=<raw|lemm>".
struct EdgeListMeta {
    std::optional<ConstraintLevel> level;
    std::optional<std::string> vertex_kind;
    std::optional<std::string> extra; // e.g. "rewired seed=42 Q=10"
};

void save_edge_list(const WordNetwork& net, const EdgeListMeta& meta, std::ostream& out);
std::pair<WordNetwork, EdgeListMeta> load_edge_list(std::istream& in);
std::pair<WordNetwork, EdgeListMeta> load_edge_list(const std::filesystem::path& path);

} // namespace lexnet

#endif
