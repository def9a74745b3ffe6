#include "lexnet/nullmodel.hpp"

#include <cmath>
#include <unordered_set>

#include "lexnet/rng.hpp"

namespace lexnet {

namespace {

std::uint64_t edge_key(TokenId a, TokenId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

RewireOutcome rewire(const WordNetwork& net, const RewireConfig& cfg) {
    std::vector<Edge> swappable;
    std::vector<Edge> loops;
    swappable.reserve(net.edge_count());
    for (const auto& edge : net.edges()) {
        if (edge.first == edge.second) loops.push_back(edge);
        else swappable.push_back(edge);
    }

    RewireOutcome outcome;
    if (swappable.size() < 2) {
        outcome.net = net;
        outcome.noop = true;
        return outcome;
    }

    std::unordered_set<std::uint64_t> present;
    present.reserve(swappable.size() * 2);
    for (const auto& [a, b] : swappable) present.insert(edge_key(a, b));

    const auto m = static_cast<double>(swappable.size());
    const std::uint64_t target = static_cast<std::uint64_t>(std::llround(cfg.swaps_per_edge * m));
    const std::uint64_t cap = cfg.max_attempts_factor * swappable.size();
    const std::uint64_t attempts = std::min(target, cap);

    Rng rng(cfg.seed);
    for (std::uint64_t attempt = 0; attempt < attempts; ++attempt) {
        outcome.attempted++;
        const auto i = static_cast<std::size_t>(rng.next_below(swappable.size()));
        const auto j = static_cast<std::size_t>(rng.next_below(swappable.size()));
        if (i == j) continue;
        const auto [a, b] = swappable[i];
        const auto [c, d] = swappable[j];
        if (a == c || a == d || b == c || b == d) continue; // shared endpoint
        Edge e1{a, d}, e2{c, b};
        if (e1.first > e1.second) std::swap(e1.first, e1.second);
        if (e2.first > e2.second) std::swap(e2.first, e2.second);
        if (present.count(edge_key(e1.first, e1.second)) ||
            present.count(edge_key(e2.first, e2.second)))
            continue; // would duplicate an existing edge
        present.erase(edge_key(a, b));
        present.erase(edge_key(c, d));
        present.insert(edge_key(e1.first, e1.second));
        present.insert(edge_key(e2.first, e2.second));
        swappable[i] = e1;
        swappable[j] = e2;
        outcome.accepted++;
    }

    swappable.insert(swappable.end(), loops.begin(), loops.end());
    outcome.net = WordNetwork::from_edges(net.vertex_count(), std::move(swappable),
                                          net.vocab());
    return outcome;
}

} // namespace lexnet
