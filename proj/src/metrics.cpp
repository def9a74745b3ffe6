#include "lexnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "lexnet/errors.hpp"
#include "lexnet/mathutil.hpp"
#include "lexnet/numfmt.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {

DegreeDistribution degree_distribution(const WordNetwork& net) {
    const std::uint32_t n = net.vertex_count();
    if (n == 0) throw std::domain_error("degree_distribution: empty network");
    std::vector<std::uint64_t> histogram;
    for (TokenId v = 0; v < n; ++v) {
        const std::uint32_t k = net.degree(v);
        if (k >= histogram.size()) histogram.resize(k + 1, 0);
        histogram[k]++;
    }
    DegreeDistribution dist;
    dist.vertex_count = n;
    std::uint64_t seen = 0;
    for (std::uint32_t k = 0; k < histogram.size(); ++k) {
        if (histogram[k] == 0) continue;
        const double ccdf = static_cast<double>(n - seen) / static_cast<double>(n);
        dist.points.push_back({k, histogram[k],
                               static_cast<double>(histogram[k]) / static_cast<double>(n),
                               ccdf});
        seen += histogram[k];
    }
    return dist;
}

void save_degree_distribution(const DegreeDistribution& dist, std::ostream& out) {
    for (const auto& pt : dist.points)
        out << pt.k << '\t' << pt.count << '\t' << format_double(pt.p) << '\t'
            << format_double(pt.ccdf) << '\n';
}

namespace {

struct TailView {
    // ascending degrees >= k_min with their counts
    std::vector<std::uint32_t> degrees;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

TailView tail_of(const DegreeDistribution& dist, std::uint32_t k_min) {
    TailView tail;
    for (const auto& pt : dist.points) {
        if (pt.k < k_min || pt.k == 0) continue;
        tail.degrees.push_back(pt.k);
        tail.counts.push_back(pt.count);
        tail.total += pt.count;
    }
    return tail;
}

double mle_gamma(const TailView& tail, std::uint32_t k_min) {
    double log_sum = 0.0;
    const double shift = static_cast<double>(k_min) - 0.5;
    for (std::size_t i = 0; i < tail.degrees.size(); ++i)
        log_sum += static_cast<double>(tail.counts[i]) *
                   std::log(static_cast<double>(tail.degrees[i]) / shift);
    return 1.0 + static_cast<double>(tail.total) / log_sum;
}

// KS distance between the empirical tail CCDF and the fitted discrete
// power-law CCDF zeta(gamma, k) / zeta(gamma, k_min), evaluated at the
// observed degrees. zeta values walk down from the largest degree so the
// Euler-Maclaurin series runs only once.
double ks_distance(const TailView& tail, std::uint32_t k_min, double gamma) {
    const std::size_t d = tail.degrees.size();
    std::vector<double> fitted(d);
    double zeta = hurwitz_zeta(gamma, static_cast<double>(tail.degrees[d - 1]));
    std::uint32_t cursor = tail.degrees[d - 1];
    for (std::size_t i = d; i-- > 0;) {
        while (cursor > tail.degrees[i]) {
            cursor--;
            zeta += std::pow(static_cast<double>(cursor), -gamma);
        }
        fitted[i] = zeta;
    }
    double norm = zeta;
    std::uint32_t base = tail.degrees[0];
    while (base > k_min) {
        base--;
        norm += std::pow(static_cast<double>(base), -gamma);
    }

    double worst = 0.0;
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < d; ++i) {
        const double emp = static_cast<double>(tail.total - seen) /
                           static_cast<double>(tail.total);
        worst = std::max(worst, std::fabs(emp - fitted[i] / norm));
        seen += tail.counts[i];
    }
    return worst;
}

} // namespace

PowerLawFit fit_power_law(const DegreeDistribution& dist,
                          std::optional<std::uint32_t> k_min) {
    constexpr std::size_t kMinTail = 10;
    if (k_min) {
        const std::uint32_t km = std::max<std::uint32_t>(*k_min, 1);
        const TailView tail = tail_of(dist, km);
        if (tail.total < kMinTail)
            throw FitError("power-law tail has fewer than 10 samples", tail.total);
        if (tail.degrees.size() < 2)
            throw FitError("power-law tail is a single degree value", tail.total);
        PowerLawFit fit;
        fit.k_min = km;
        fit.n_tail = tail.total;
        fit.gamma = mle_gamma(tail, km);
        fit.ks_distance = ks_distance(tail, km, fit.gamma);
        return fit;
    }

    std::optional<PowerLawFit> best;
    std::uint64_t largest_tail = 0;
    for (const auto& pt : dist.points) {
        if (pt.k == 0) continue;
        const TailView tail = tail_of(dist, pt.k);
        largest_tail = std::max(largest_tail, tail.total);
        if (tail.total < kMinTail || tail.degrees.size() < 2) continue;
        PowerLawFit fit;
        fit.k_min = pt.k;
        fit.n_tail = tail.total;
        fit.gamma = mle_gamma(tail, pt.k);
        fit.ks_distance = ks_distance(tail, pt.k, fit.gamma);
        if (!best || fit.ks_distance < best->ks_distance) best = fit;
    }
    if (!best)
        throw FitError("no k_min candidate leaves a fittable tail", largest_tail);
    return *best;
}

double ccdf_tail_exponent(const DegreeDistribution& dist, std::uint32_t k_min) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& pt : dist.points) {
        if (pt.k < std::max<std::uint32_t>(k_min, 1)) continue;
        const double x = std::log(static_cast<double>(pt.k));
        const double y = std::log(pt.ccdf);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        count++;
    }
    if (count < 2) throw FitError("ccdf tail regression needs >= 2 points", count);
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    const double slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
    return 1.0 - slope; // CCDF ~ k^(1-gamma)
}

namespace {

// One BFS per source; distance counts land in an integer histogram, so the
// reduction over threads is order-independent and results do not depend on
// the degree of parallelism.
struct BfsAccumulator {
    std::vector<std::uint64_t> histogram;
    std::uint32_t max_distance = 0;

    void merge(const BfsAccumulator& other) {
        if (other.histogram.size() > histogram.size())
            histogram.resize(other.histogram.size(), 0);
        for (std::size_t i = 0; i < other.histogram.size(); ++i)
            histogram[i] += other.histogram[i];
        max_distance = std::max(max_distance, other.max_distance);
    }
};

void bfs_from(const WordNetwork& net, TokenId source, std::vector<std::uint32_t>& stamp,
              std::uint32_t epoch, std::vector<std::uint32_t>& dist,
              std::vector<TokenId>& queue, BfsAccumulator& acc) {
    queue.clear();
    queue.push_back(source);
    stamp[source] = epoch;
    dist[source] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
        const TokenId v = queue[head++];
        const std::uint32_t next = dist[v] + 1;
        for (const TokenId u : net.neighbors(v)) {
            if (stamp[u] != epoch) {
                stamp[u] = epoch;
                dist[u] = next;
                queue.push_back(u);
            }
        }
    }
    for (const TokenId v : queue) {
        const std::uint32_t d = dist[v];
        if (d == 0) continue;
        if (d >= acc.histogram.size()) acc.histogram.resize(d + 1, 0);
        acc.histogram[d]++;
        acc.max_distance = std::max(acc.max_distance, d);
    }
}

} // namespace

PathStats path_stats(const WordNetwork& component, const PathMode& mode,
                     unsigned threads) {
    const std::uint32_t n = component.vertex_count();
    if (n == 0) throw MetricError("path_stats: empty component");

    PathStats stats;
    stats.component_size = n;
    stats.sampled = !mode.exact;

    std::vector<TokenId> sources;
    if (mode.exact || mode.sources >= n) {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), 0);
    } else {
        if (mode.sources == 0) throw MetricError("path_stats: zero sources");
        // Partial Fisher-Yates over the identity permutation: a uniform
        // sample of distinct sources.
        std::vector<TokenId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        Rng rng(mode.seed);
        for (std::uint32_t i = 0; i < mode.sources; ++i) {
            const auto j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
            std::swap(perm[i], perm[j]);
        }
        sources.assign(perm.begin(), perm.begin() + mode.sources);
    }
    stats.sources = static_cast<std::uint32_t>(sources.size());

    if (threads == 0) threads = std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, sources.size()));

    std::vector<BfsAccumulator> partial(threads);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&](unsigned tid) {
        std::vector<std::uint32_t> stamp(n, UINT32_MAX);
        std::vector<std::uint32_t> dist(n, 0);
        std::vector<TokenId> queue;
        queue.reserve(n);
        std::uint32_t epoch = 0;
        for (;;) {
            const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= sources.size()) break;
            bfs_from(component, sources[i], stamp, epoch, dist, queue, partial[tid]);
            epoch++;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    BfsAccumulator total;
    for (const auto& acc : partial) total.merge(acc);

    std::uint64_t pairs = 0, sum = 0;
    unsigned __int128 sum_sq = 0;
    for (std::size_t d = 1; d < total.histogram.size(); ++d) {
        const std::uint64_t count = total.histogram[d];
        pairs += count;
        sum += d * count;
        sum_sq += static_cast<unsigned __int128>(d) * d * count;
    }
    stats.diameter = total.max_distance;
    if (pairs > 0) {
        stats.mean = static_cast<double>(sum) / static_cast<double>(pairs);
        const double mean_sq = static_cast<double>(sum_sq) / static_cast<double>(pairs);
        stats.stddev = std::sqrt(std::max(0.0, mean_sq - stats.mean * stats.mean));
    }
    return stats;
}

namespace {

// Loop-free adjacency restated as sorted out-lists toward higher
// (degree, id) rank; triangle counts attribute to all three corners.
struct LoopFree {
    std::vector<std::uint32_t> degree;
    std::vector<std::vector<TokenId>> forward;
};

LoopFree strip_loops(const WordNetwork& net) {
    const std::uint32_t n = net.vertex_count();
    LoopFree lf;
    lf.degree.assign(n, 0);
    for (TokenId v = 0; v < n; ++v) {
        std::uint32_t k = net.degree(v);
        for (const TokenId u : net.neighbors(v))
            if (u == v) k--;
        lf.degree[v] = k;
    }
    return lf;
}

} // namespace

ClusteringStats clustering(const WordNetwork& net) {
    const std::uint32_t n = net.vertex_count();
    if (n == 0) throw std::domain_error("clustering: empty network");
    LoopFree lf = strip_loops(net);

    auto rank_less = [&](TokenId a, TokenId b) {
        if (lf.degree[a] != lf.degree[b]) return lf.degree[a] < lf.degree[b];
        return a < b;
    };
    lf.forward.assign(n, {});
    for (const auto& [a, b] : net.edges()) {
        if (a == b) continue;
        if (rank_less(a, b)) lf.forward[a].push_back(b);
        else lf.forward[b].push_back(a);
    }
    for (auto& list : lf.forward) std::sort(list.begin(), list.end());

    std::vector<std::uint64_t> triangles(n, 0);
    for (TokenId v = 0; v < n; ++v) {
        for (const TokenId u : lf.forward[v]) {
            // common forward neighbors of v and u close a triangle
            const auto& a = lf.forward[v];
            const auto& b = lf.forward[u];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) i++;
                else if (a[i] > b[j]) j++;
                else {
                    triangles[v]++;
                    triangles[u]++;
                    triangles[a[i]]++;
                    i++;
                    j++;
                }
            }
        }
    }

    ClusteringStats stats;
    double local_sum = 0.0;
    std::uint64_t eligible = 0;
    std::uint64_t triplet_count = 0;
    std::uint64_t closed = 0;
    for (TokenId v = 0; v < n; ++v) {
        const std::uint64_t k = lf.degree[v];
        if (k < 2) continue;
        const std::uint64_t pairs = k * (k - 1) / 2;
        local_sum += static_cast<double>(triangles[v]) / static_cast<double>(pairs);
        eligible++;
        triplet_count += pairs;
        closed += triangles[v];
    }
    if (eligible > 0) stats.local = local_sum / static_cast<double>(eligible);
    if (triplet_count > 0)
        stats.global = static_cast<double>(closed) / static_cast<double>(triplet_count);
    return stats;
}

KnnCurve knn_curve(const WordNetwork& net) {
    const std::uint32_t n = net.vertex_count();
    if (n == 0) throw std::domain_error("knn_curve: empty network");
    const LoopFree lf = strip_loops(net);

    KnnCurve curve;
    std::uint64_t degree_sum = 0;
    for (TokenId v = 0; v < n; ++v) degree_sum += lf.degree[v];
    if (degree_sum == 0) return curve; // edgeless once loops are gone
    curve.mean_degree = static_cast<double>(degree_sum) / static_cast<double>(n);

    // per-degree accumulation of each vertex's mean neighbor degree
    std::vector<double> sums;
    std::vector<std::uint64_t> counts;
    for (TokenId v = 0; v < n; ++v) {
        const std::uint32_t k = lf.degree[v];
        if (k == 0) continue;
        std::uint64_t neighbor_sum = 0;
        for (const TokenId u : net.neighbors(v)) {
            if (u == v) continue;
            neighbor_sum += lf.degree[u];
        }
        if (k >= sums.size()) {
            sums.resize(k + 1, 0.0);
            counts.resize(k + 1, 0);
        }
        sums[k] += static_cast<double>(neighbor_sum) / static_cast<double>(k);
        counts[k]++;
    }
    for (std::uint32_t k = 1; k < sums.size(); ++k) {
        if (counts[k] == 0) continue;
        const double knn = sums[k] / static_cast<double>(counts[k]);
        curve.points.push_back({k, knn, knn / curve.mean_degree});
    }
    return curve;
}

void save_knn_curve(const KnnCurve& curve, std::ostream& out) {
    for (const auto& pt : curve.points)
        out << pt.k << '\t' << format_double(pt.knn_normalized) << '\n';
}

RegressionResult freq_degree_regression(const Vocabulary& vocab, const WordNetwork& net,
                                        std::uint64_t outlier_cutoff) {
    if (vocab.size() != net.vertex_count())
        throw MetricError("freq_degree_regression: vocabulary/network size mismatch");
    std::vector<double> x, y;
    RegressionResult result;
    for (TokenId v = 0; v < net.vertex_count(); ++v) {
        const std::uint64_t f = vocab.freq[v];
        if (f == 0) continue;
        if (f > outlier_cutoff) {
            result.excluded_outliers++;
            continue;
        }
        x.push_back(static_cast<double>(f));
        y.push_back(static_cast<double>(net.degree(v)));
    }
    const std::size_t n = x.size();
    if (n < 3) throw MetricError("freq_degree_regression: fewer than 3 points");

    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw MetricError("freq_degree_regression: constant frequencies");

    result.slope = sxy / sxx;
    result.intercept = mean_y - result.slope * mean_x;
    if (syy == 0.0) {
        result.r_squared = 0.0; // flat response: no variance explained
        result.p_value = 1.0;
        return result;
    }
    const double ss_residual = syy - result.slope * sxy;
    result.r_squared = 1.0 - ss_residual / syy;
    const double df = static_cast<double>(n - 2);
    if (ss_residual <= 0.0) {
        result.p_value = 0.0; // perfect line
    } else {
        const double se = std::sqrt(ss_residual / df / sxx);
        result.p_value = student_t_two_sided(result.slope / se, df);
    }
    return result;
}

ZipfFit zipf_fit(const RankFrequency& rf, std::uint64_t rank_lo, std::uint64_t rank_hi) {
    if (rank_lo < 1 || rank_hi > rf.entries.size() || rank_lo > rank_hi)
        throw MetricError("zipf_fit: rank range outside 1..V");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::uint64_t r = rank_lo; r <= rank_hi; ++r) {
        const auto& entry = rf.entries[r - 1];
        if (entry.frequency == 0) continue;
        const double x = std::log(static_cast<double>(r));
        const double y = std::log(static_cast<double>(entry.frequency));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n++;
    }
    if (n < 10) throw MetricError("zipf_fit: fewer than 10 usable ranks");
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    const double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / static_cast<double>(n);
    return {-slope, std::exp(intercept), rank_lo, rank_hi};
}

std::vector<std::pair<std::string, std::uint32_t>>
top_connected(const WordNetwork& net, const Vocabulary& vocab, std::size_t m) {
    if (m < 1) throw std::domain_error("top_connected: m must be >= 1");
    std::vector<TokenId> order(net.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
        const auto da = net.degree(a), db = net.degree(b);
        if (da != db) return da > db;
        return vocab.id_to_token[a] < vocab.id_to_token[b];
    });
    std::vector<std::pair<std::string, std::uint32_t>> result;
    const std::size_t take = std::min<std::size_t>(m, order.size());
    result.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        result.emplace_back(vocab.id_to_token[order[i]], net.degree(order[i]));
    return result;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) j++;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) return std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double mean = 0.5 * static_cast<double>(n + 1);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

} // namespace lexnet
