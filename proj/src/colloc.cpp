#include "lexnet/colloc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "lexnet/errors.hpp"
#include "lexnet/numfmt.hpp"

namespace lexnet {

ContingencyTable ContingencyTable::from_marginals(std::uint64_t n11, std::uint64_t row1,
                                                  std::uint64_t col1, std::uint64_t total) {
    if (n11 > row1 || n11 > col1)
        throw std::domain_error("contingency table: n11 exceeds a marginal");
    const std::uint64_t n12 = row1 - n11;
    const std::uint64_t n21 = col1 - n11;
    if (n11 + n12 + n21 > total)
        throw std::domain_error("contingency table: marginals exceed total");
    return {n11, n12, n21, total - n11 - n12 - n21};
}

BigramStats count_bigrams(const Corpus& corpus) {
    BigramStats stats;
    auto bump = [](std::vector<std::uint64_t>& v, TokenId id) {
        if (id >= v.size()) v.resize(id + 1, 0);
        v[id]++;
    };
    for (const auto& doc : corpus.documents) {
        for (const auto& sentence : doc.sentences) {
            for (std::size_t t = 0; t + 1 < sentence.size(); ++t) {
                const TokenId w1 = sentence[t];
                const TokenId w2 = sentence[t + 1];
                stats.pair_count[BigramStats::key(w1, w2)]++;
                bump(stats.first_count, w1);
                bump(stats.second_count, w2);
                stats.total++;
            }
        }
    }
    return stats;
}

double FisherExact::right_pvalue(const ContingencyTable& t) const {
    const std::uint64_t r1 = t.row1();
    const std::uint64_t c1 = t.col1();
    const std::uint64_t n = t.total();
    if (n == 0) throw std::domain_error("fisher: empty table");
    if (n > lfact_.max_n()) throw std::domain_error("fisher: total exceeds table size");

    const std::uint64_t lo = (r1 + c1 > n) ? r1 + c1 - n : 0;
    const std::uint64_t hi = std::min(r1, c1);
    if (t.n11 <= lo) return 1.0; // the tail covers the whole support

    const double log_denom = lfact_.log_choose(n, r1);
    auto log_pmf = [&](std::uint64_t k) {
        return lfact_.log_choose(c1, k) + lfact_.log_choose(n - c1, r1 - k) - log_denom;
    };

    // Sum P(N11 = k) for k = n11..hi in linear space relative to a running
    // reference, rescaling if terms grow past it.
    double ref = log_pmf(t.n11);
    double sum = 1.0;
    for (std::uint64_t k = t.n11 + 1; k <= hi; ++k) {
        const double lp = log_pmf(k);
        if (lp > ref + 200.0) {
            sum *= std::exp(ref - lp);
            ref = lp;
        }
        const double term = std::exp(lp - ref);
        sum += term;
        // Past the mode the pmf ratio decreases monotonically, so the
        // remainder is bounded by a geometric series.
        if (k < hi) {
            const double ratio = static_cast<double>(r1 - k) * static_cast<double>(c1 - k) /
                                 (static_cast<double>(k + 1) *
                                  static_cast<double>(n - r1 - c1 + k + 1));
            if (ratio < 1.0) {
                const double bound = term * ratio / (1.0 - ratio);
                if (bound < 1e-16 * sum && bound * std::exp(ref) < 1e-14) break;
            }
        }
    }
    return std::min(1.0, sum * std::exp(ref));
}

double fisher_right_pvalue(const ContingencyTable& t) {
    return FisherExact(t.total()).right_pvalue(t);
}

CollocationSet extract_collocations(const BigramStats& stats, double alpha,
                                    unsigned threads) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ConfigError("alpha must lie in (0, 1]");
    CollocationSet out;
    out.alpha = alpha;
    if (stats.pair_count.empty()) return out;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(stats.pair_count.begin(),
                                                               stats.pair_count.end());
    std::sort(pairs.begin(), pairs.end());

    const FisherExact fisher(stats.total);
    std::vector<double> pvalues(pairs.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto w1 = static_cast<TokenId>(pairs[i].first >> 32);
            const auto w2 = static_cast<TokenId>(pairs[i].first & 0xFFFFFFFFu);
            const auto table = ContingencyTable::from_marginals(
                pairs[i].second, stats.first_count[w1], stats.second_count[w2],
                stats.total);
            pvalues[i] = fisher.right_pvalue(table);
        }
    };

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || pairs.size() < 1024) {
        worker(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (pairs.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min<std::size_t>(t * chunk, pairs.size());
            const std::size_t end = std::min(begin + chunk, pairs.size());
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pvalues[i] <= alpha) {
            out.pairs.push_back({static_cast<TokenId>(pairs[i].first >> 32),
                                 static_cast<TokenId>(pairs[i].first & 0xFFFFFFFFu),
                                 pairs[i].second, pvalues[i]});
        }
    }
    return out;
}

void save_collocations(const CollocationSet& colls, const Vocabulary& vocab,
                       std::ostream& out) {
    std::vector<const CollocationEntry*> order;
    order.reserve(colls.pairs.size());
    for (const auto& entry : colls.pairs) order.push_back(&entry);
    std::sort(order.begin(), order.end(),
              [&](const CollocationEntry* a, const CollocationEntry* b) {
                  if (a->pvalue != b->pvalue) return a->pvalue < b->pvalue;
                  return std::tie(vocab.id_to_token[a->w1], vocab.id_to_token[a->w2]) <
                         std::tie(vocab.id_to_token[b->w1], vocab.id_to_token[b->w2]);
              });
    for (const auto* entry : order) {
        out << vocab.id_to_token[entry->w1] << '\t' << vocab.id_to_token[entry->w2]
            << '\t' << entry->n11 << '\t' << format_double(entry->pvalue) << '\n';
    }
}

} // namespace lexnet
