#include "lexnet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lexnet/errors.hpp"

namespace lexnet {

std::uint64_t Vocabulary::total_tokens() const {
    return std::accumulate(freq.begin(), freq.end(), std::uint64_t{0});
}

TokenId Vocabulary::intern(const std::string& token) {
    auto it = token_to_id.find(token);
    if (it != token_to_id.end()) return it->second;
    const auto id = static_cast<TokenId>(id_to_token.size());
    token_to_id.emplace(token, id);
    id_to_token.push_back(token);
    freq.push_back(0);
    lemma_of.push_back(id);
    return id;
}

std::size_t Corpus::sentence_count() const {
    std::size_t count = 0;
    for (const auto& doc : documents) count += doc.sentences.size();
    return count;
}

std::uint64_t Corpus::token_count() const {
    std::uint64_t count = 0;
    for (const auto& doc : documents)
        for (const auto& sent : doc.sentences) count += sent.size();
    return count;
}

namespace {

void fold_ascii_lower(std::string& s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

} // namespace

LoadResult load_corpus(std::istream& in, bool lowercase) {
    LoadResult result;
    Document current;
    std::string line;
    std::string token;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (!current.sentences.empty()) {
                result.corpus.documents.push_back(std::move(current));
                current = Document{};
            }
            continue;
        }
        Sentence sentence;
        std::istringstream fields(line);
        while (fields >> token) {
            if (lowercase) fold_ascii_lower(token);
            const TokenId id = result.vocab.intern(token);
            result.vocab.freq[id]++;
            sentence.push_back(id);
        }
        if (sentence.empty()) {
            result.skipped_lines++; // whitespace-only line
            continue;
        }
        current.sentences.push_back(std::move(sentence));
    }
    if (!current.sentences.empty())
        result.corpus.documents.push_back(std::move(current));
    if (result.corpus.sentence_count() == 0)
        throw DataError("empty corpus: no sentences found");
    return result;
}

LoadResult load_corpus(const std::filesystem::path& path, bool lowercase) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    return load_corpus(in, lowercase);
}

void save_corpus(const Corpus& corpus, const Vocabulary& vocab, std::ostream& out) {
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        if (d > 0) out << '\n';
        for (const auto& sentence : corpus.documents[d].sentences) {
            for (std::size_t t = 0; t < sentence.size(); ++t) {
                if (t > 0) out << ' ';
                out << vocab.id_to_token[sentence[t]];
            }
            out << '\n';
        }
    }
}

void save_corpus(const Corpus& corpus, const Vocabulary& vocab,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    save_corpus(corpus, vocab, out);
}

std::unordered_map<std::string, std::string>
load_lemma_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lemma table: " + path.string());
    std::unordered_map<std::string, std::string> table;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw DataError("malformed lemma table line: \"" + line + "\"");
        table[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return table;
}

std::pair<Corpus, Vocabulary>
apply_lemmatization(const Corpus& corpus, const Vocabulary& vocab,
                    const std::unordered_map<std::string, std::string>& lemma_table) {
    Vocabulary lemm_vocab;
    // Per raw id: its id in the lemma vocabulary, assigned on first use so
    // the output ordering only depends on the token stream.
    std::vector<TokenId> remap(vocab.size(), static_cast<TokenId>(-1));
    Corpus out;
    out.documents.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        Document new_doc;
        new_doc.sentences.reserve(doc.sentences.size());
        for (const auto& sentence : doc.sentences) {
            Sentence new_sentence;
            new_sentence.reserve(sentence.size());
            for (const TokenId id : sentence) {
                TokenId mapped = remap[id];
                if (mapped == static_cast<TokenId>(-1)) {
                    const std::string& surface = vocab.id_to_token[id];
                    auto it = lemma_table.find(surface);
                    mapped = lemm_vocab.intern(it == lemma_table.end() ? surface
                                                                       : it->second);
                    remap[id] = mapped;
                }
                lemm_vocab.freq[mapped]++;
                new_sentence.push_back(mapped);
            }
            new_doc.sentences.push_back(std::move(new_sentence));
        }
        out.documents.push_back(std::move(new_doc));
    }
    return {std::move(out), std::move(lemm_vocab)};
}

RankFrequency rank_frequency(const Vocabulary& vocab) {
    if (vocab.size() == 0) throw DataError("rank_frequency: empty vocabulary");
    RankFrequency rf;
    rf.entries.reserve(vocab.size());
    for (TokenId id = 0; id < vocab.size(); ++id)
        rf.entries.push_back({0, id, vocab.freq[id]});
    std::sort(rf.entries.begin(), rf.entries.end(),
              [](const RankFrequency::Entry& a, const RankFrequency::Entry& b) {
                  if (a.frequency != b.frequency) return a.frequency > b.frequency;
                  return a.id < b.id;
              });
    for (std::size_t i = 0; i < rf.entries.size(); ++i)
        rf.entries[i].rank = i + 1;
    return rf;
}

void save_rank_frequency(const RankFrequency& rf, const Vocabulary& vocab,
                         std::ostream& out) {
    for (const auto& entry : rf.entries)
        out << entry.rank << '\t' << vocab.id_to_token[entry.id] << '\t'
            << entry.frequency << '\n';
}

} // namespace lexnet
