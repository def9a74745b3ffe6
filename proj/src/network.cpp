#include "lexnet/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lexnet/errors.hpp"

namespace lexnet {

std::string to_string(ConstraintLevel level) {
    switch (level) {
        case ConstraintLevel::COLL: return "COLL";
        case ConstraintLevel::PLAIN: return "PLAIN";
        case ConstraintLevel::RANSEN: return "RANSEN";
        case ConstraintLevel::RANDOC: return "RANDOC";
    }
    return "?";
}

std::optional<ConstraintLevel> parse_level(const std::string& name) {
    std::string upper;
    for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (upper == "COLL") return ConstraintLevel::COLL;
    if (upper == "PLAIN") return ConstraintLevel::PLAIN;
    if (upper == "RANSEN") return ConstraintLevel::RANSEN;
    if (upper == "RANDOC") return ConstraintLevel::RANDOC;
    return std::nullopt;
}

WordNetwork WordNetwork::from_edges(std::uint32_t n, std::vector<Edge> edges,
                                    std::shared_ptr<const Vocabulary> vocab) {
    for (auto& [a, b] : edges) {
        if (a >= n || b >= n) throw std::domain_error("edge endpoint out of range");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    WordNetwork net;
    net.n_ = n;
    net.edges_ = std::move(edges);
    net.vocab_ = std::move(vocab);

    // CSR adjacency; each loop contributes a single self entry.
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& [a, b] : net.edges_) {
        deg[a]++;
        if (a != b) deg[b]++;
        else net.loops_++;
    }
    net.offsets_.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) net.offsets_[i + 1] = net.offsets_[i] + deg[i];
    net.adjacency_.resize(net.offsets_[n]);
    std::vector<std::uint64_t> cursor(net.offsets_.begin(), net.offsets_.end() - 1);
    for (const auto& [a, b] : net.edges_) {
        net.adjacency_[cursor[a]++] = b;
        if (a != b) net.adjacency_[cursor[b]++] = a;
    }
    for (std::uint32_t i = 0; i < n; ++i)
        std::sort(net.adjacency_.begin() + net.offsets_[i],
                  net.adjacency_.begin() + net.offsets_[i + 1]);
    return net;
}

std::uint32_t WordNetwork::degree(TokenId i) const {
    if (i >= n_) throw std::domain_error("degree: vertex id out of range");
    return static_cast<std::uint32_t>(offsets_[i + 1] - offsets_[i]);
}

std::span<const TokenId> WordNetwork::neighbors(TokenId i) const {
    if (i >= n_) throw std::domain_error("neighbors: vertex id out of range");
    return {adjacency_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
}

WordNetwork build_cooccurrence(const Corpus& corpus,
                               std::shared_ptr<const Vocabulary> vocab) {
    const auto n = static_cast<std::uint32_t>(vocab->size());
    std::vector<Edge> edges;
    for (const auto& doc : corpus.documents)
        for (const auto& sentence : doc.sentences)
            for (std::size_t t = 0; t + 1 < sentence.size(); ++t)
                edges.emplace_back(sentence[t], sentence[t + 1]);
    return WordNetwork::from_edges(n, std::move(edges), std::move(vocab));
}

WordNetwork build_collocation_network(const CollocationSet& colls,
                                      std::shared_ptr<const Vocabulary> vocab) {
    const auto n = static_cast<std::uint32_t>(vocab->size());
    std::vector<Edge> edges;
    edges.reserve(colls.pairs.size());
    for (const auto& entry : colls.pairs) edges.emplace_back(entry.w1, entry.w2);
    return WordNetwork::from_edges(n, std::move(edges), std::move(vocab));
}

DensityStats density_stats(const WordNetwork& net) {
    const std::uint64_t n = net.vertex_count();
    if (n == 0) throw std::domain_error("density_stats: empty network");
    DensityStats stats;
    stats.edge_count = net.edge_count();
    // Degree sum = 2*(non-loop edges) + loops under loop-counts-once degrees.
    const std::uint64_t degree_sum = 2 * (net.edge_count() - net.loop_count()) +
                                     net.loop_count();
    stats.mean_degree = static_cast<double>(degree_sum) / static_cast<double>(n);
    const double linkable = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
    stats.link_density = static_cast<double>(stats.edge_count) / linkable;
    return stats;
}

WordNetwork largest_component(const WordNetwork& net) {
    const std::uint32_t n = net.vertex_count();
    if (n == 0) throw std::domain_error("largest_component: empty network");

    std::vector<std::uint32_t> label(n, UINT32_MAX);
    std::vector<TokenId> stack;
    std::uint32_t best_label = UINT32_MAX, best_size = 0;
    TokenId best_min_id = 0;
    std::uint32_t next_label = 0;
    for (TokenId start = 0; start < n; ++start) {
        if (label[start] != UINT32_MAX || net.degree(start) == 0) continue;
        const std::uint32_t current = next_label++;
        std::uint32_t size = 0;
        stack.push_back(start);
        label[start] = current;
        while (!stack.empty()) {
            const TokenId v = stack.back();
            stack.pop_back();
            size++;
            for (const TokenId u : net.neighbors(v)) {
                if (label[u] == UINT32_MAX) {
                    label[u] = current;
                    stack.push_back(u);
                }
            }
        }
        // Components are discovered in order of their minimum vertex id, so
        // "first strictly larger wins" realizes the smallest-min-id tie rule.
        if (size > best_size) {
            best_size = size;
            best_label = current;
            best_min_id = start;
        }
    }

    WordNetwork sub;
    if (best_label == UINT32_MAX) {
        // Only isolated vertices: degrade to the single smallest-id vertex.
        sub.n_ = 1;
        sub.offsets_ = {0, 0};
        sub.original_ids_ = {0};
        sub.vocab_ = net.vocab();
        return sub;
    }
    (void)best_min_id;

    std::vector<TokenId> to_local(n, UINT32_MAX);
    std::vector<TokenId> members;
    for (TokenId v = 0; v < n; ++v) {
        if (label[v] == best_label) {
            to_local[v] = static_cast<TokenId>(members.size());
            members.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const auto& [a, b] : net.edges())
        if (to_local[a] != UINT32_MAX && to_local[b] != UINT32_MAX)
            edges.emplace_back(to_local[a], to_local[b]);
    sub = WordNetwork::from_edges(static_cast<std::uint32_t>(members.size()),
                                  std::move(edges), net.vocab());
    sub.original_ids_ = std::move(members);
    return sub;
}

void save_edge_list(const WordNetwork& net, const EdgeListMeta& meta, std::ostream& out) {
    out << "# n=" << net.vertex_count() << " m=" << net.edge_count();
    if (meta.level) out << " level=" << to_string(*meta.level);
    if (meta.vertex_kind) out << " vertex=" << *meta.vertex_kind;
    out << '\n';
    if (meta.extra) out << "# " << *meta.extra << '\n';
    for (const auto& [a, b] : net.edges()) out << a << ' ' << b << '\n';
}

std::pair<WordNetwork, EdgeListMeta> load_edge_list(std::istream& in) {
    std::string line;
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    bool have_header = false;
    EdgeListMeta meta;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream fields(line.substr(1));
            std::string field;
            bool parsed_any = false;
            std::string leftovers;
            while (fields >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) {
                    leftovers += leftovers.empty() ? field : " " + field;
                    continue;
                }
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                if (key == "n") { n = static_cast<std::uint32_t>(std::stoull(value)); parsed_any = true; }
                else if (key == "m") { m = std::stoull(value); parsed_any = true; }
                else if (key == "level") meta.level = parse_level(value);
                else if (key == "vertex") meta.vertex_kind = value;
                else leftovers += (leftovers.empty() ? "" : " ") + field;
            }
            if (parsed_any) have_header = true;
            else if (!leftovers.empty()) meta.extra = leftovers;
            continue;
        }
        std::istringstream fields(line);
        std::uint64_t a, b;
        if (!(fields >> a >> b))
            throw DataError("malformed edge line: \"" + line + "\"");
        edges.emplace_back(static_cast<TokenId>(a), static_cast<TokenId>(b));
    }
    if (!have_header) throw DataError("edge list missing '# n=... m=...' header");
    if (edges.size() != m)
        throw DataError("edge list header m does not match edge count");
    return {WordNetwork::from_edges(n, std::move(edges)), meta};
}

std::pair<WordNetwork, EdgeListMeta> load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path.string());
    return load_edge_list(in);
}

} // namespace lexnet
