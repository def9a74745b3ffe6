#ifndef LEXNET_TOOLS_TEXTGEN_HPP
#define LEXNET_TOOLS_TEXTGEN_HPP

#include <cstdint>
#include <filesystem>
#include <string>

namespace textgen {

/// Deterministic English-like text generator producing the desk-scale
/// evaluation corpus. The statistics that co-occurrence analysis sees are
/// engineered to behave like natural text:
///   - a plateau of 20 function words carries ~46% of all tokens, so a
///     single adjacency with one of them never looks associative;
///   - content frequencies follow a Zipf law; every content word is owned by
///     one function word that mediates most of its function adjacency, and
///     frequent content words additionally chain into fixed repertoires
///     (repeated bigrams -> collocations);
///   - rare content words never sit next to other rare words in normal
///     prose, so the collocation network keeps a compact hub core;
///   - "technical" documents interleave runs over a flat deep-vocabulary
///     band, bridged only by function words: long word chains that stretch
///     the plain network, survive sentence shuffling, and dissolve under
///     document shuffling;
///   - content lemmas inflect, giving the raw/lemmatized contrast.
/// Same config -> byte-identical corpus and lemma table.
struct Config {
    std::uint64_t seed = 42;
    std::uint64_t target_tokens = 1'000'000;
    std::uint32_t content_lemmas = 16000;
    double plateau_mass = 0.44;     // token share of the function plateau
    double content_exponent = 0.88; // Zipf exponent of content weights
    std::uint32_t band_lemmas = 5000;
    double subset_share = 0.36;     // frequent content: chance to chain content
    double subset_min_count = 9.0;
    double repertoire_coef = 1.3;
    double repertoire_exponent = 0.66;
    double repertoire_cap = 180.0;
    std::uint32_t membership_cap = 240; // in-links a word accepts across repertoires
    double local_member_prob = 0.25;
    double topic_repeat_prob = 0.18;
    std::uint32_t topic_buffer = 80;
    double local_content_prob = 0.26; // function->content draws near the last content
    double tech_doc_prob = 0.025;
    double tech_sentence_share = 0.55; // tech sentences within a tech document
    double tech_glue_prob = 0.03;
    double tech_local_sigma = 0.12;
    double tech_sentence_stretch = 1.5;
    std::uint32_t min_doc_sentences = 3;
    std::uint32_t max_doc_sentences = 4;
    std::uint32_t tech_min_doc_sentences = 8;
    std::uint32_t tech_max_doc_sentences = 12;
};

struct Output {
    std::uint64_t documents = 0;
    std::uint64_t sentences = 0;
    std::uint64_t tokens = 0;
};

/// Writes the corpus (toolkit corpus format) and the lemma table (TSV).
Output generate(const Config& cfg, const std::filesystem::path& corpus_path,
                const std::filesystem::path& lemma_table_path);

} // namespace textgen

#endif
