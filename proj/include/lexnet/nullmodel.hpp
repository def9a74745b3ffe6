#ifndef LEXNET_NULLMODEL_HPP
#define LEXNET_NULLMODEL_HPP

#include <cstdint>

#include "lexnet/network.hpp"

namespace lexnet {

/// Double-edge-swap randomization parameters. Attempted swaps =
/// round(swaps_per_edge * m) where m counts swappable (non-loop) edges;
/// max_attempts_factor * m caps the attempts when swaps_per_edge is larger.
struct RewireConfig {
    double swaps_per_edge = 10.0;
    std::uint64_t seed = 0;
    std::uint64_t max_attempts_factor = 100;
};

struct RewireOutcome {
    WordNetwork net;
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
    bool noop = false; // fewer than 2 swappable edges: input returned unchanged
};

/// Degree-preserving randomization: picks edges {a,b}, {c,d} with four
/// distinct endpoints and replaces them with {a,d}, {c,b} unless either
/// replacement already exists. Loops stay frozen in place; the degree
/// sequence is preserved exactly; the input network is never mutated.
RewireOutcome rewire(const WordNetwork& net, const RewireConfig& cfg);

} // namespace lexnet

#endif
