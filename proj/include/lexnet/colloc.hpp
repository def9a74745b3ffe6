#ifndef LEXNET_COLLOC_HPP
#define LEXNET_COLLOC_HPP

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/mathutil.hpp"

namespace lexnet {

/// Adjacent-bigram counts. Bigrams never cross sentence boundaries, so each
/// sentence of length L contributes exactly max(L-1, 0) of them.
struct BigramStats {
    // Key packs (w1 << 32) | w2.
    std::unordered_map<std::uint64_t, std::uint64_t> pair_count;
    std::vector<std::uint64_t> first_count;  // occurrences as left element
    std::vector<std::uint64_t> second_count; // occurrences as right element
    std::uint64_t total = 0;

    static std::uint64_t key(TokenId w1, TokenId w2) {
        return (static_cast<std::uint64_t>(w1) << 32) | w2;
    }
};

/// The 2x2 table for a bigram <w1 w2>:
///   n11 = #<w1 w2>,  n12 = #<w1 !w2>,  n21 = #<!w1 w2>,  n22 = rest.
struct ContingencyTable {
    std::uint64_t n11 = 0, n12 = 0, n21 = 0, n22 = 0;

    std::uint64_t row1() const { return n11 + n12; }
    std::uint64_t col1() const { return n11 + n21; }
    std::uint64_t total() const { return n11 + n12 + n21 + n22; }

    /// Builds from joint count and marginals; throws std::domain_error when
    /// the marginals are inconsistent (any derived cell would be negative).
    static ContingencyTable from_marginals(std::uint64_t n11, std::uint64_t row1,
                                           std::uint64_t col1, std::uint64_t total);
};

struct CollocationEntry {
    TokenId w1, w2;
    std::uint64_t n11;
    double pvalue;
};

/// Bigrams whose right-sided Fisher p-value is <= alpha, sorted by (w1, w2).
struct CollocationSet {
    double alpha = 0.01;
    std::vector<CollocationEntry> pairs;
};

BigramStats count_bigrams(const Corpus& corpus);

/// Right-sided Fisher's exact test with a shared log-factorial table, for
/// p-value computation over many tables with a common total.
class FisherExact {
public:
    /// max_total must be >= the total of every table passed in later.
    explicit FisherExact(std::uint64_t max_total) : lfact_(max_total) {}

    /// P(N11 >= n11) under the hypergeometric distribution with the table's
    /// marginals fixed. Absolute error <= 1e-10 (truncation kept below 1e-14).
    double right_pvalue(const ContingencyTable& t) const;

private:
    LogFactorialTable lfact_;
};

/// One-shot convenience wrapper; builds the factorial table per call, so use
/// FisherExact directly in loops.
double fisher_right_pvalue(const ContingencyTable& t);

/// All bigrams with p <= alpha. alpha must lie in (0, 1]. p-values are
/// computed in parallel over the sorted pair list; output is deterministic.
CollocationSet extract_collocations(const BigramStats& stats, double alpha = 0.01,
                                    unsigned threads = 0);

/// TSV "w1<TAB>w2<TAB>n11<TAB>pvalue", ascending p-value, then token strings.
void save_collocations(const CollocationSet& colls, const Vocabulary& vocab,
                       std::ostream& out);

} // namespace lexnet

#endif
