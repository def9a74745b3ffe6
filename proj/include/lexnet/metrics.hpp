#ifndef LEXNET_METRICS_HPP
#define LEXNET_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/network.hpp"

namespace lexnet {

/// Exact degree histogram over all vertices (k = 0 included), with
/// probabilities and the complementary cumulative P(K >= k).
struct DegreeDistribution {
    struct Point {
        std::uint32_t k;
        std::uint64_t count;
        double p;
        double ccdf;
    };
    std::vector<Point> points; // ascending k
    std::uint64_t vertex_count = 0;
};

DegreeDistribution degree_distribution(const WordNetwork& net);

/// TSV "k<TAB>count<TAB>p<TAB>ccdf".
void save_degree_distribution(const DegreeDistribution& dist, std::ostream& out);

struct PowerLawFit {
    double gamma = 0.0;
    std::uint32_t k_min = 1;
    std::size_t n_tail = 0;
    double ks_distance = 0.0;
};

/// Discrete maximum-likelihood fit over degrees k >= k_min:
///   gamma = 1 + n_tail / sum(ln(k_i / (k_min - 1/2))).
/// Without an explicit k_min, every candidate k_min is tried and the one
/// minimizing the Kolmogorov-Smirnov distance between the empirical tail and
/// the fitted discrete power law wins (ties go to the smaller k_min).
/// Throws FitError when the tail has fewer than 10 samples or fewer than two
/// distinct degrees.
PowerLawFit fit_power_law(const DegreeDistribution& dist,
                          std::optional<std::uint32_t> k_min = std::nullopt);

/// Secondary estimate for comparison: slope of the least-squares line fitted
/// to log CCDF vs log k over k >= k_min maps to an exponent 1 - slope.
double ccdf_tail_exponent(const DegreeDistribution& dist, std::uint32_t k_min);

struct PathStats {
    std::uint32_t diameter = 0;
    double mean = 0.0;
    double stddev = 0.0; // population std over the same distance multiset
    std::uint32_t component_size = 0;
    bool sampled = false;
    std::uint32_t sources = 0;
};

struct PathMode {
    bool exact = true;
    std::uint32_t sources = 0; // sampled mode: number of seeded BFS sources
    std::uint64_t seed = 0;
};

/// BFS path statistics over a connected network (as produced by
/// largest_component). Exact mode runs one BFS per vertex; sampled mode runs
/// BFS from a seeded uniform sample of distinct sources and flags the result.
/// Distances exclude self-pairs. Deterministic regardless of thread count.
PathStats path_stats(const WordNetwork& component, const PathMode& mode = {},
                     unsigned threads = 0);

struct ClusteringStats {
    double local = 0.0;  // mean vertex clustering over vertices with >= 2 neighbors
    double global = 0.0; // closed triplets / all connected triplets
};

/// Loops are removed first; isolated and degree-1 vertices are excluded from
/// the local mean. Returns zeros when nothing is eligible.
ClusteringStats clustering(const WordNetwork& net);

/// Mean degree of neighbors of degree-k vertices, on the loop-free graph,
/// normalized by its mean degree. Empty for edgeless graphs.
struct KnnCurve {
    struct Point {
        std::uint32_t k;
        double knn;            // mean neighbor degree
        double knn_normalized; // knn / mean degree
    };
    std::vector<Point> points; // ascending k, only degrees with >= 1 vertex
    double mean_degree = 0.0;
};

KnnCurve knn_curve(const WordNetwork& net);

/// TSV "k<TAB>knn_normalized".
void save_knn_curve(const KnnCurve& curve, std::ostream& out);

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double p_value = 1.0; // two-sided, H0: zero slope
    std::uint64_t excluded_outliers = 0;
};

/// OLS of degree on frequency over vertices with 0 < freq <= outlier_cutoff.
/// Throws MetricError with fewer than 3 usable points.
RegressionResult freq_degree_regression(const Vocabulary& vocab, const WordNetwork& net,
                                        std::uint64_t outlier_cutoff = 100000);

struct ZipfFit {
    double alpha = 0.0;
    double amplitude = 0.0;
    std::uint64_t rank_lo = 1, rank_hi = 1;
};

/// Least squares on (log rank, log frequency) over ranks [rank_lo, rank_hi].
/// Needs at least 10 in-range entries with nonzero frequency.
ZipfFit zipf_fit(const RankFrequency& rf, std::uint64_t rank_lo, std::uint64_t rank_hi);

/// Top-m vertices by degree; ties broken by ascending token string.
std::vector<std::pair<std::string, std::uint32_t>>
top_connected(const WordNetwork& net, const Vocabulary& vocab, std::size_t m);

/// Spearman rank correlation with average ranks for ties. NaN when either
/// side has no variation or fewer than 2 points.
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace lexnet

#endif
