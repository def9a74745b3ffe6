#ifndef LEXNET_CORPUS_HPP
#define LEXNET_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexnet {

using TokenId = std::uint32_t;

/// Dense-id vocabulary with per-id occurrence counts.
struct Vocabulary {
    std::unordered_map<std::string, TokenId> token_to_id;
    std::vector<std::string> id_to_token;
    std::vector<std::uint64_t> freq;
    // Maps each id to its lemma's id; identity when no lemma table was applied.
    std::vector<TokenId> lemma_of;

    std::size_t size() const { return id_to_token.size(); }
    std::uint64_t total_tokens() const;

    /// Returns the id for `token`, inserting it (freq 0) if unseen.
    TokenId intern(const std::string& token);
};

using Sentence = std::vector<TokenId>;

struct Document {
    std::vector<Sentence> sentences;
};

/// Ordered documents of ordered sentences of token ids.
/// Every sentence is non-empty; every id is < vocabulary size.
struct Corpus {
    std::vector<Document> documents;

    std::size_t sentence_count() const;
    std::uint64_t token_count() const;
};

struct LoadResult {
    Corpus corpus;
    Vocabulary vocab;
    std::uint64_t skipped_lines = 0; // whitespace-only lines dropped with a warning count
};

/// Rank-frequency entries sorted by descending frequency, ranks 1..V.
/// Ties are broken by ascending token id, so ranks are deterministic.
struct RankFrequency {
    struct Entry {
        std::uint64_t rank;
        TokenId id;
        std::uint64_t frequency;
    };
    std::vector<Entry> entries;
};

/// Reads the corpus format: UTF-8, one sentence per line, tokens separated by
/// spaces, a blank line ends a document. Lines containing only whitespace are
/// skipped and counted in LoadResult::skipped_lines.
/// Throws DataError on unreadable files or when no sentence survives.
LoadResult load_corpus(const std::filesystem::path& path, bool lowercase = false);
LoadResult load_corpus(std::istream& in, bool lowercase = false);

/// Writes a corpus back in the same format (single spaces, one blank line
/// between documents, trailing newline). Round-trips exactly with load_corpus.
void save_corpus(const Corpus& corpus, const Vocabulary& vocab, std::ostream& out);
void save_corpus(const Corpus& corpus, const Vocabulary& vocab,
                 const std::filesystem::path& path);

/// Loads a two-column TSV "surface<TAB>lemma". Later duplicates win.
std::unordered_map<std::string, std::string>
load_lemma_table(const std::filesystem::path& path);

/// Rewrites the corpus over lemma surfaces. Surfaces missing from the table
/// map to themselves. Token count is conserved; the new vocabulary is built
/// in first-appearance order and is never larger than the input one.
std::pair<Corpus, Vocabulary>
apply_lemmatization(const Corpus& corpus, const Vocabulary& vocab,
                    const std::unordered_map<std::string, std::string>& lemma_table);

/// Frequency ranking over the whole vocabulary (V >= 1).
RankFrequency rank_frequency(const Vocabulary& vocab);

/// TSV export "rank<TAB>token<TAB>frequency".
void save_rank_frequency(const RankFrequency& rf, const Vocabulary& vocab,
                         std::ostream& out);

} // namespace lexnet

#endif
