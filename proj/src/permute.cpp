#include "lexnet/permute.hpp"

#include <utility>

namespace lexnet {

namespace {

// Distinct tags keep sentence streams and document streams independent.
constexpr std::uint64_t kSentenceTag = 0x53454E54ULL; // "SENT"
constexpr std::uint64_t kDocumentTag = 0x444F4355ULL; // "DOCU"

} // namespace

void fisher_yates(std::span<TokenId> seq, Rng& rng) {
    for (std::size_t i = seq.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(seq[i - 1], seq[j]);
    }
}

std::vector<TokenId> fisher_yates(std::vector<TokenId> seq, Rng& rng) {
    fisher_yates(std::span<TokenId>(seq), rng);
    return seq;
}

Corpus shuffle_ransen(const Corpus& corpus, ShuffleSeed seed) {
    Corpus out = corpus;
    for (std::size_t d = 0; d < out.documents.size(); ++d) {
        auto& doc = out.documents[d];
        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
            Rng rng(derive_seed(seed.master_seed, kSentenceTag, d, s));
            fisher_yates(std::span<TokenId>(doc.sentences[s]), rng);
        }
    }
    return out;
}

Corpus shuffle_randoc(const Corpus& corpus, ShuffleSeed seed) {
    Corpus out;
    out.documents.reserve(corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const auto& doc = corpus.documents[d];
        std::vector<TokenId> pool;
        for (const auto& sentence : doc.sentences)
            pool.insert(pool.end(), sentence.begin(), sentence.end());

        Rng rng(derive_seed(seed.master_seed, kDocumentTag, d));
        fisher_yates(std::span<TokenId>(pool), rng);

        Document new_doc;
        new_doc.sentences.reserve(doc.sentences.size());
        std::size_t cursor = 0;
        for (const auto& sentence : doc.sentences) {
            new_doc.sentences.emplace_back(pool.begin() + cursor,
                                           pool.begin() + cursor + sentence.size());
            cursor += sentence.size();
        }
        out.documents.push_back(std::move(new_doc));
    }
    return out;
}

} // namespace lexnet
