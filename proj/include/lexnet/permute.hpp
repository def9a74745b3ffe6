#ifndef LEXNET_PERMUTE_HPP
#define LEXNET_PERMUTE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {

/// Same master_seed always yields the same shuffled corpus: each scope
/// (sentence or document) draws from its own sub-stream derived from
/// (master_seed, scope tag, document index, sentence index), so results do
/// not depend on processing order.
struct ShuffleSeed {
    std::uint64_t master_seed = 0;
};

/// In-place Fisher-Yates. Every permutation is equally likely under a
/// uniform stream.
void fisher_yates(std::span<TokenId> seq, Rng& rng);

/// Value-returning variant.
std::vector<TokenId> fisher_yates(std::vector<TokenId> seq, Rng& rng);

/// RANSEN: permutes tokens within each sentence. Sentence and document
/// structure are untouched.
Corpus shuffle_ransen(const Corpus& corpus, ShuffleSeed seed);

/// RANDOC: concatenates each document's tokens, permutes them in one pass,
/// and re-slices to the original sentence lengths. Tokens may cross sentence
/// boundaries; the sequence of sentence lengths per document is preserved.
Corpus shuffle_randoc(const Corpus& corpus, ShuffleSeed seed);

} // namespace lexnet

#endif
