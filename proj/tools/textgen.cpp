#include "textgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "lexnet/rng.hpp"

namespace textgen {

namespace {

using lexnet::Rng;

enum Kind : std::uint8_t { FUNC, NOUN, VERB, ADJ };

const std::vector<std::string>& plateau_words() {
    static const std::vector<std::string> words = {
        "the", "of", "and", "to", "a", "in", "is", "that", "was", "for",
        "it", "with", "on", "as", "be", "at", "by", "this"};
    return words;
}

std::string synth_lemma(Kind kind, std::uint32_t index) {
    static const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                   "p", "r", "s", "t", "v", "z", "br", "tr",
                                   "st", "pl", "gr", "sk"};
    static const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ea", "ou"};
    static const char* codas[] = {"", "n", "r", "l", "s", "m", "t", "nd"};
    const char* marker = kind == NOUN ? "" : (kind == VERB ? "v" : "j");
    std::string word = marker;
    std::uint32_t x = index;
    for (int syllable = 0; syllable < 3; ++syllable) {
        word += onsets[x % 20];
        x /= 20;
        word += nuclei[x % 8];
        x /= 8;
        if (syllable == 2 || x == 0) {
            word += codas[index % 8];
            break;
        }
    }
    word += std::to_string(index % 10);
    return word;
}

struct Word {
    std::string lemma;
    Kind kind = FUNC;
    double weight = 0.0;
    bool technical = false;
    double band_frac = 0.5;
    std::uint32_t func_menu[5] = {0, 0, 0, 0, 0}; // frequent content: function companions
    // rare/band words walk their own permutation of the plateau, so no
    // (word, function) bigram can ever repeat at low counts
    std::uint32_t func_offset = 0;
    std::uint32_t func_stride = 1;
    std::vector<std::uint32_t> successors;     // content repertoire (frequent words)
    std::vector<double> successor_cdf;
    std::uint32_t memberships = 0;
};

struct Sampler {
    std::vector<std::uint32_t> ids;
    std::vector<double> cumulative;

    void build(const std::vector<Word>& words, std::vector<std::uint32_t> members,
               double exponent = 1.0) {
        ids = std::move(members);
        cumulative.resize(ids.size());
        double total = 0.0;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            total += std::pow(words[ids[i]].weight, exponent);
            cumulative[i] = total;
        }
        for (double& c : cumulative) c /= total;
        if (!cumulative.empty()) cumulative.back() = 1.0;
    }

    std::uint32_t draw(Rng& rng) const {
        const double u = rng.next_double();
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        return ids[static_cast<std::size_t>(it - cumulative.begin())];
    }
};

struct Grammar {
    std::vector<Word> words;
    std::vector<std::uint32_t> plateau;
    std::vector<std::uint32_t> normal_band; // content ids, descending weight
    std::vector<std::uint32_t> tech_band;
    Sampler content;                        // normal band, Zipf weights
    Sampler content_spread;                 // flattened draw for repertoire slots
};

double draw_normal_deviate(Rng& rng) {
    const double u1 = std::max(rng.next_double(), 1e-12);
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::uint32_t draw_rank_local(const std::vector<std::uint32_t>& members,
                              double anchor_frac, double sigma, Rng& rng) {
    const double jitter = std::exp(sigma * draw_normal_deviate(rng));
    const double frac = std::min(0.999, std::max(1e-4, anchor_frac * jitter));
    const auto idx = static_cast<std::size_t>(frac * static_cast<double>(members.size()));
    return members[std::min(idx, members.size() - 1)];
}

Grammar build_grammar(const Config& cfg, Rng& rng) {
    Grammar g;

    const std::size_t plateau_count = plateau_words().size();
    for (const auto& lemma : plateau_words()) {
        Word word;
        word.lemma = lemma;
        word.kind = FUNC;
        word.weight = cfg.plateau_mass / static_cast<double>(plateau_count);
        g.plateau.push_back(static_cast<std::uint32_t>(g.words.size()));
        g.words.push_back(std::move(word));
    }
    // ring-with-chords menu keeps the plateau tightly interlinked under the
    // association test
    for (std::size_t i = 0; i < plateau_count; ++i) {
        Word& f = g.words[g.plateau[i]];
        f.func_menu[0] = g.plateau[(i + 1) % plateau_count];
        f.func_menu[1] = g.plateau[(i + 4) % plateau_count];
        f.func_menu[2] = g.plateau[(i + 7) % plateau_count];
        f.func_menu[3] = g.plateau[(i + 11) % plateau_count];
        f.func_menu[4] = g.plateau[(i + 15) % plateau_count];
    }

    // content lemmas: shuffled kinds, Zipf weights over the normal band and a
    // flat sliver for the technical band
    std::vector<Kind> kinds;
    for (std::uint32_t i = 0; i < cfg.content_lemmas; ++i)
        kinds.push_back(i % 10 < 5 ? NOUN : (i % 10 < 8 ? VERB : ADJ));
    for (std::size_t i = kinds.size(); i > 1; --i)
        std::swap(kinds[i - 1], kinds[rng.next_below(i)]);

    const std::uint32_t normal_count = cfg.content_lemmas - cfg.band_lemmas;
    double normal_norm = 0.0;
    for (std::uint32_t j = 1; j <= normal_count; ++j)
        normal_norm += std::pow(static_cast<double>(j), -cfg.content_exponent);
    const double normal_mass = 1.0 - cfg.plateau_mass;

    std::uint32_t counters[4] = {0, 0, 0, 0};
    for (std::uint32_t j = 0; j < cfg.content_lemmas; ++j) {
        Word word;
        word.kind = kinds[j];
        word.lemma = synth_lemma(word.kind, counters[word.kind]++);
        word.func_offset = static_cast<std::uint32_t>(rng.next_below(18));
        static const std::uint32_t strides[] = {1, 5, 7, 11, 13, 17};
        word.func_stride = strides[rng.next_below(6)];
        const auto id = static_cast<std::uint32_t>(g.words.size());
        if (j < normal_count) {
            word.weight = normal_mass *
                          std::pow(static_cast<double>(j + 1), -cfg.content_exponent) /
                          normal_norm;
            word.band_frac = (static_cast<double>(j) + 1.0) /
                             (static_cast<double>(normal_count) + 1.0);
            g.normal_band.push_back(id);
        } else {
            word.technical = true;
            word.weight = 0.0; // realized counts come from tech documents only
            word.band_frac = (static_cast<double>(j - normal_count) + 1.0) /
                             (static_cast<double>(cfg.band_lemmas) + 1.0);
            g.tech_band.push_back(id);
        }
        g.words.push_back(std::move(word));
    }

    g.content.build(g.words, g.normal_band, 1.0);

    // content repertoires for frequent words, with in-link capacities; the
    // repertoires draw only from the subsettable prefix, so no rare word is
    // ever adopted into one
    const auto tokens = static_cast<double>(cfg.target_tokens);
    std::vector<std::uint32_t> mids;
    for (const std::uint32_t id : g.normal_band)
        if (g.words[id].weight * tokens >= cfg.subset_min_count) mids.push_back(id);
    g.content_spread.build(g.words, mids, 0.72);
    for (const std::uint32_t id : mids) {
        Word& word = g.words[id];
        const double expected_count = word.weight * tokens;
        const auto size = static_cast<std::size_t>(std::clamp(
            cfg.repertoire_coef * std::pow(expected_count, cfg.repertoire_exponent),
            3.0, cfg.repertoire_cap));
        std::vector<std::uint32_t> picked;
        std::size_t guard = 0;
        while (picked.size() < size && guard++ < 60 * size) {
            const std::uint32_t candidate =
                rng.next_double() < cfg.local_member_prob
                    ? draw_rank_local(mids,
                                      word.band_frac * static_cast<double>(
                                          g.normal_band.size()) /
                                          static_cast<double>(mids.size()),
                                      0.9, rng)
                    : g.content_spread.draw(rng);
            if (candidate == id) continue;
            if (g.words[candidate].memberships >= cfg.membership_cap) continue;
            if (std::find(picked.begin(), picked.end(), candidate) != picked.end())
                continue;
            g.words[candidate].memberships++;
            picked.push_back(candidate);
        }
        for (auto& slot : word.func_menu)
            slot = g.plateau[rng.next_below(g.plateau.size())];
        word.successors = std::move(picked);
        word.successor_cdf.resize(word.successors.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < word.successors.size(); ++i) {
            acc += std::pow(g.words[word.successors[i]].weight, 0.55);
            word.successor_cdf[i] = acc;
        }
        for (double& c : word.successor_cdf) c /= acc;
        if (!word.successor_cdf.empty()) word.successor_cdf.back() = 1.0;
    }
    return g;
}

const char* draw_suffix(Kind kind, Rng& rng) {
    const double u = rng.next_double();
    switch (kind) {
        case NOUN: return u < 0.62 ? "" : "s";
        case VERB:
            if (u < 0.44) return "";
            if (u < 0.66) return "s";
            if (u < 0.86) return "ed";
            return "ing";
        case ADJ:
            if (u < 0.72) return "";
            if (u < 0.88) return "er";
            return "est";
        default: return "";
    }
}

const std::vector<const char*>& suffixes_of(Kind kind) {
    static const std::vector<const char*> noun = {"", "s"};
    static const std::vector<const char*> verb = {"", "s", "ed", "ing"};
    static const std::vector<const char*> adj = {"", "er", "est"};
    static const std::vector<const char*> none = {};
    switch (kind) {
        case NOUN: return noun;
        case VERB: return verb;
        case ADJ: return adj;
        default: return none;
    }
}

struct DocState {
    std::vector<std::uint32_t> topic;
    std::size_t topic_cursor = 0;
    std::uint32_t last_content = 0; // 0: none yet (0 is a plateau id)
};

// Corpus-wide emission state: how often each word has returned to a function
// word. Rare and technical words walk their personal plateau permutation, so
// none of their function bigrams can repeat before all 20 have been seen.
struct EmitState {
    std::vector<std::uint32_t> func_uses;
};

std::uint32_t next_cycled_func(const Grammar& g, const Word& word,
                               std::uint32_t word_id, EmitState& state) {
    const std::uint32_t k = state.func_uses[word_id]++;
    return g.plateau[(word.func_offset + k * word.func_stride) % g.plateau.size()];
}

void note_content(const Config& cfg, DocState& doc, std::uint32_t id) {
    doc.last_content = id;
    if (doc.topic.size() < cfg.topic_buffer) {
        doc.topic.push_back(id);
    } else {
        doc.topic[doc.topic_cursor] = id;
        doc.topic_cursor = (doc.topic_cursor + 1) % cfg.topic_buffer;
    }
}

// Normal prose is built from content units separated by function-word gaps.
// A gap function word is supplied by an adjacent content word: frequent
// words use their fixed menus (repeated pairs, the collocation spokes),
// rare words walk their plateau permutation (no repeats, ever). Frequent
// words may skip the gap and chain straight into their repertoires; rare
// words never touch another content word.
void build_normal_sentence(const Grammar& g, const Config& cfg, std::uint32_t length,
                           DocState& doc, EmitState& state, Rng& rng,
                           std::vector<std::uint32_t>& tokens) {
    tokens.clear();
    auto draw_content = [&]() -> std::uint32_t {
        const double u = rng.next_double();
        if (u < cfg.topic_repeat_prob && !doc.topic.empty())
            return doc.topic[rng.next_below(doc.topic.size())];
        if (u < cfg.topic_repeat_prob + cfg.local_content_prob && doc.last_content != 0)
            return draw_rank_local(g.normal_band,
                                   g.words[doc.last_content].band_frac, 0.9, rng);
        return g.content.draw(rng);
    };
    auto gap_func = [&](std::uint32_t id) {
        const Word& word = g.words[id];
        if (!word.successors.empty()) return word.func_menu[rng.next_below(5)];
        return next_cycled_func(g, word, id, state);
    };

    std::uint32_t current = draw_content();
    if (rng.next_double() < 0.5) tokens.push_back(gap_func(current));
    tokens.push_back(current);
    note_content(cfg, doc, current);
    while (tokens.size() < length) {
        const Word& word = g.words[current];
        if (!word.successors.empty() && rng.next_double() < cfg.subset_share) {
            const double v = rng.next_double();
            const auto it = std::lower_bound(word.successor_cdf.begin(),
                                             word.successor_cdf.end(), v);
            current = word.successors[static_cast<std::size_t>(
                it - word.successor_cdf.begin())];
            tokens.push_back(current);
            note_content(cfg, doc, current);
            continue;
        }
        const std::uint32_t next = draw_content();
        const bool current_rare = word.successors.empty();
        const bool next_rare = g.words[next].successors.empty();
        if (current_rare) tokens.push_back(gap_func(current));
        if (next_rare) tokens.push_back(gap_func(next));
        if (!current_rare && !next_rare)
            tokens.push_back(gap_func(rng.next_double() < 0.5 ? current : next));
        tokens.push_back(next);
        note_content(cfg, doc, next);
        current = next;
    }
}

// Technical prose: flat-band chains with occasional plateau interruptions;
// the word after an interruption is drawn fresh and uniformly.
std::uint32_t tech_successor(const Grammar& g, std::uint32_t current,
                             const Config& cfg, EmitState& state, Rng& rng) {
    const Word& word = g.words[current];
    if (!word.technical) return g.tech_band[rng.next_below(g.tech_band.size())];
    if (rng.next_double() < cfg.tech_glue_prob)
        return next_cycled_func(g, word, current, state);
    return draw_rank_local(g.tech_band, word.band_frac, cfg.tech_local_sigma, rng);
}

// Sentence lengths: discretized lognormal, clamped to [3, 48], mean ~15.
std::uint32_t draw_sentence_length(Rng& rng) {
    static const std::vector<double> cdf = [] {
        std::vector<double> weights;
        double total = 0.0;
        for (std::uint32_t len = 3; len <= 48; ++len) {
            const double x = std::log(static_cast<double>(len));
            const double mu = std::log(14.0);
            const double sigma = 0.5;
            const double w = std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)) /
                             static_cast<double>(len);
            total += w;
            weights.push_back(total);
        }
        for (double& w : weights) w /= total;
        weights.back() = 1.0;
        return weights;
    }();
    const double u = rng.next_double();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return 3 + static_cast<std::uint32_t>(it - cdf.begin());
}

} // namespace

Output generate(const Config& cfg, const std::filesystem::path& corpus_path,
                const std::filesystem::path& lemma_table_path) {
    Rng rng(cfg.seed);
    Grammar grammar = build_grammar(cfg, rng);

    std::ofstream corpus(corpus_path);
    if (!corpus) throw std::runtime_error("cannot write " + corpus_path.string());

    Output out;
    std::string line;
    DocState doc;
    EmitState state;
    state.func_uses.assign(grammar.words.size(), 0);
    while (out.tokens < cfg.target_tokens) {
        const bool tech_doc = rng.next_double() < cfg.tech_doc_prob;
        const std::uint32_t lo = tech_doc ? cfg.tech_min_doc_sentences : cfg.min_doc_sentences;
        const std::uint32_t hi = tech_doc ? cfg.tech_max_doc_sentences : cfg.max_doc_sentences;
        const std::uint32_t doc_sentences =
            lo + static_cast<std::uint32_t>(rng.next_below(hi - lo + 1));
        if (out.documents > 0) corpus << '\n';
        doc.topic.clear();
        doc.topic_cursor = 0;
        doc.last_content = 0;
        std::vector<std::uint32_t> tokens;
        for (std::uint32_t s = 0; s < doc_sentences; ++s) {
            const bool tech_sentence =
                tech_doc && rng.next_double() < cfg.tech_sentence_share;
            std::uint32_t length = draw_sentence_length(rng);
            if (tech_sentence) {
                length = static_cast<std::uint32_t>(
                    std::lround(length * cfg.tech_sentence_stretch));
                tokens.clear();
                std::uint32_t current =
                    grammar.tech_band[rng.next_below(grammar.tech_band.size())];
                tokens.push_back(current);
                while (tokens.size() < length) {
                    current = tech_successor(grammar, current, cfg, state, rng);
                    tokens.push_back(current);
                }
            } else {
                build_normal_sentence(grammar, cfg, length, doc, state, rng, tokens);
            }
            line.clear();
            for (std::size_t t = 0; t < tokens.size(); ++t) {
                if (t > 0) line += ' ';
                const Word& word = grammar.words[tokens[t]];
                line += word.lemma;
                if (word.kind != FUNC) line += draw_suffix(word.kind, rng);
            }
            corpus << line << '\n';
            out.sentences++;
            out.tokens += tokens.size();
        }
        out.documents++;
    }

    std::ofstream table(lemma_table_path);
    if (!table) throw std::runtime_error("cannot write " + lemma_table_path.string());
    for (const Word& word : grammar.words) {
        for (const char* suffix : suffixes_of(word.kind)) {
            if (*suffix == '\0') continue;
            table << word.lemma << suffix << '\t' << word.lemma << '\n';
        }
    }
    return out;
}

} // namespace textgen
