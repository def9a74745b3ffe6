#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lexnet/colloc.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/errors.hpp"
#include "support/oracles.hpp"

using namespace lexnet;

namespace {

Corpus corpus_from(std::initializer_list<Sentence> sentences) {
    Corpus corpus;
    Document doc;
    for (const auto& s : sentences) doc.sentences.push_back(s);
    corpus.documents.push_back(std::move(doc));
    return corpus;
}

} // namespace

TEST_CASE("bigrams of a three-token sentence") {
    const BigramStats stats = count_bigrams(corpus_from({{0, 1, 2}}));
    CHECK(stats.total == 2);
    CHECK(stats.pair_count.at(BigramStats::key(0, 1)) == 1);
    CHECK(stats.pair_count.at(BigramStats::key(1, 2)) == 1);
    CHECK(stats.first_count[0] == 1);
    CHECK(stats.second_count[2] == 1);
}

TEST_CASE("single-token sentences contribute nothing") {
    const BigramStats stats = count_bigrams(corpus_from({{0}, {1}}));
    CHECK(stats.total == 0);
    CHECK(stats.pair_count.empty());
}

TEST_CASE("bigrams never cross sentence boundaries") {
    const BigramStats stats = count_bigrams(corpus_from({{0, 1}, {1, 0}}));
    CHECK(stats.total == 2);
    CHECK(stats.pair_count.at(BigramStats::key(0, 1)) == 1);
    CHECK(stats.pair_count.at(BigramStats::key(1, 0)) == 1);
    CHECK(stats.pair_count.count(BigramStats::key(1, 1)) == 0);
}

TEST_CASE("marginals are consistent on random corpora") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto [corpus, vocab] = oracles::random_corpus(seed);
        const BigramStats stats = count_bigrams(corpus);
        std::uint64_t expected_total = 0;
        for (const auto& doc : corpus.documents)
            for (const auto& s : doc.sentences)
                expected_total += s.empty() ? 0 : s.size() - 1;
        CHECK(stats.total == expected_total);

        std::vector<std::uint64_t> first(vocab.size(), 0), second(vocab.size(), 0);
        std::uint64_t sum = 0;
        for (const auto& [key, count] : stats.pair_count) {
            first[key >> 32] += count;
            second[key & 0xFFFFFFFFu] += count;
            sum += count;
        }
        CHECK(sum == stats.total);
        for (TokenId w = 0; w < vocab.size(); ++w) {
            const std::uint64_t f = w < stats.first_count.size() ? stats.first_count[w] : 0;
            const std::uint64_t s = w < stats.second_count.size() ? stats.second_count[w] : 0;
            CHECK(f == first[w]);
            CHECK(s == second[w]);
        }
    }
}

TEST_CASE("contingency table construction validates marginals") {
    const ContingencyTable t = ContingencyTable::from_marginals(2, 3, 2, 8);
    CHECK(t.n11 == 2);
    CHECK(t.n12 == 1);
    CHECK(t.n21 == 0);
    CHECK(t.n22 == 5);
    CHECK_THROWS_AS(ContingencyTable::from_marginals(5, 3, 2, 8), std::domain_error);
    CHECK_THROWS_AS(ContingencyTable::from_marginals(0, 7, 7, 8), std::domain_error);
}

TEST_CASE("right p-value is 1 when n11 is 0") {
    CHECK(fisher_right_pvalue({0, 4, 3, 5}) == 1.0);
    CHECK(fisher_right_pvalue({0, 0, 0, 9}) == 1.0);
}

TEST_CASE("frozen tail values from exhaustive enumeration") {
    // marginals (4,4;4,4): P(N11 >= 3) = (16 + 1)/70, P(N11 >= 4) = 1/70
    CHECK(fisher_right_pvalue({3, 1, 1, 3}) == doctest::Approx(17.0 / 70.0).epsilon(1e-12));
    CHECK(fisher_right_pvalue({4, 0, 0, 4}) == doctest::Approx(1.0 / 70.0).epsilon(1e-12));
}

TEST_CASE("log-gamma path matches the exact rational oracle") {
    const oracles::BinomialTable binom(50);
    const FisherExact fisher(50);
    // all tables with total 25, plus a seeded sample up to total 50
    for (unsigned n11 = 0; n11 <= 25; ++n11)
        for (unsigned n12 = 0; n11 + n12 <= 25; ++n12)
            for (unsigned n21 = 0; n11 + n12 + n21 <= 25; ++n21) {
                const unsigned n22 = 25 - n11 - n12 - n21;
                const double fast =
                    fisher.right_pvalue({n11, n12, n21, n22});
                const double exact = static_cast<double>(
                    oracles::exact_fisher_right(binom, n11, n12, n21, n22));
                CHECK(std::fabs(fast - exact) <= 1e-12 * exact);
            }
    Rng rng(5);
    for (int i = 0; i < 4000; ++i) {
        const auto n11 = static_cast<unsigned>(rng.next_below(51));
        const auto n12 = static_cast<unsigned>(rng.next_below(51 - n11));
        const auto n21 = static_cast<unsigned>(rng.next_below(51 - n11 - n12));
        const auto n22 = static_cast<unsigned>(rng.next_below(51 - n11 - n12 - n21));
        if (n11 + n12 + n21 + n22 == 0) continue;
        const double fast = fisher.right_pvalue({n11, n12, n21, n22});
        const double exact = static_cast<double>(
            oracles::exact_fisher_right(binom, n11, n12, n21, n22));
        CHECK(std::fabs(fast - exact) <= 1e-12 * exact);
    }
}

TEST_CASE("p-values stay in (0,1] and fall as n11 grows") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto r1 = 1 + rng.next_below(30);
        const auto c1 = 1 + rng.next_below(30);
        const auto n = std::max(r1 + c1, 1 + rng.next_below(60));
        double last = 2.0;
        const std::uint64_t lo = r1 + c1 > n ? r1 + c1 - n : 0;
        for (std::uint64_t n11 = lo; n11 <= std::min(r1, c1); ++n11) {
            const auto t = ContingencyTable::from_marginals(n11, r1, c1, n);
            const double p = fisher_right_pvalue(t);
            CHECK(p > 0.0);
            CHECK(p <= 1.0);
            CHECK(p <= last + 1e-15);
            last = p;
        }
    }
}

TEST_CASE("repeated bigram is extracted as a collocation") {
    // (0,1) ten times, (2,3) ten times: p((0,1)) = 1/C(20,10), far below 0.01
    std::vector<Sentence> sentences;
    for (int i = 0; i < 10; ++i) sentences.push_back({0, 1});
    for (int i = 0; i < 10; ++i) sentences.push_back({2, 3});
    Corpus corpus;
    Document doc;
    doc.sentences = sentences;
    corpus.documents.push_back(doc);

    const BigramStats stats = count_bigrams(corpus);
    const CollocationSet colls = extract_collocations(stats, 0.01);
    REQUIRE(colls.pairs.size() == 2);
    CHECK(colls.pairs[0].w1 == 0);
    CHECK(colls.pairs[0].w2 == 1);
    const oracles::BinomialTable binom(20);
    const double expected =
        static_cast<double>(oracles::exact_fisher_right(binom, 10, 0, 0, 10));
    CHECK(colls.pairs[0].pvalue == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("a single chance co-occurrence is not extracted") {
    // x and y both frequent with diverse partners; (x, y) happens once, which
    // is at or below the independence expectation
    Corpus corpus;
    Document doc;
    const TokenId x = 0, y = 1;
    TokenId filler = 2;
    for (int i = 0; i < 30; ++i) doc.sentences.push_back({x, filler++});
    for (int i = 0; i < 30; ++i) doc.sentences.push_back({filler++, y});
    doc.sentences.push_back({x, y});
    corpus.documents.push_back(doc);

    const BigramStats stats = count_bigrams(corpus);
    const auto table = ContingencyTable::from_marginals(
        1, stats.first_count[x], stats.second_count[y], stats.total);
    const oracles::BinomialTable binom(static_cast<unsigned>(stats.total));
    const long double exact = oracles::exact_fisher_right(
        binom, static_cast<unsigned>(table.n11), static_cast<unsigned>(table.n12),
        static_cast<unsigned>(table.n21), static_cast<unsigned>(table.n22));
    CHECK(exact > 0.5L);

    const CollocationSet colls = extract_collocations(stats, 0.01);
    for (const auto& entry : colls.pairs)
        CHECK(!(entry.w1 == x && entry.w2 == y));
}

TEST_CASE("alpha of 1 keeps every observed pair") {
    const auto [corpus, vocab] = oracles::random_corpus(3);
    const BigramStats stats = count_bigrams(corpus);
    const CollocationSet colls = extract_collocations(stats, 1.0);
    CHECK(colls.pairs.size() == stats.pair_count.size());
}

TEST_CASE("empty stats give an empty set; bad alpha is rejected") {
    CHECK(extract_collocations(BigramStats{}, 0.01).pairs.empty());
    CHECK_THROWS_AS(extract_collocations(BigramStats{}, 0.0), ConfigError);
    CHECK_THROWS_AS(extract_collocations(BigramStats{}, 1.5), ConfigError);
}

TEST_CASE("every stored pair re-verifies against its recomputed p-value") {
    for (std::uint64_t seed = 40; seed < 55; ++seed) {
        const auto [corpus, vocab] = oracles::random_corpus(seed);
        const BigramStats stats = count_bigrams(corpus);
        const CollocationSet colls = extract_collocations(stats, 0.2);
        const FisherExact fisher(stats.total);
        for (const auto& entry : colls.pairs) {
            const auto table = ContingencyTable::from_marginals(
                entry.n11, stats.first_count[entry.w1], stats.second_count[entry.w2],
                stats.total);
            const double p = fisher.right_pvalue(table);
            CHECK(p <= 0.2);
            CHECK(p == doctest::Approx(entry.pvalue).epsilon(1e-14));
        }
    }
}

TEST_CASE("parallel extraction matches single-threaded") {
    const auto [corpus, vocab] = oracles::random_corpus(77, 8, 10, 12, 12);
    const BigramStats stats = count_bigrams(corpus);
    const CollocationSet serial = extract_collocations(stats, 0.5, 1);
    const CollocationSet parallel = extract_collocations(stats, 0.5, 4);
    REQUIRE(serial.pairs.size() == parallel.pairs.size());
    for (std::size_t i = 0; i < serial.pairs.size(); ++i) {
        CHECK(serial.pairs[i].w1 == parallel.pairs[i].w1);
        CHECK(serial.pairs[i].w2 == parallel.pairs[i].w2);
        CHECK(serial.pairs[i].pvalue == parallel.pairs[i].pvalue);
    }
}

TEST_CASE("collocation export sorts by p-value then token strings") {
    Vocabulary vocab = oracles::synthetic_vocab(4);
    CollocationSet colls;
    colls.pairs = {{0, 1, 5, 0.002}, {2, 3, 2, 0.0005}, {1, 2, 2, 0.002}};
    std::ostringstream out;
    save_collocations(colls, vocab, out);
    std::istringstream lines(out.str());
    std::string first, second, third;
    std::getline(lines, first);
    std::getline(lines, second);
    std::getline(lines, third);
    CHECK(first.rfind("w2\tw3", 0) == 0);  // smallest p first
    CHECK(second.rfind("w0\tw1", 0) == 0); // then lexicographic
    CHECK(third.rfind("w1\tw2", 0) == 0);
}
