#ifndef LEXNET_PIPELINE_HPP
#define LEXNET_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lexnet/metrics.hpp"
#include "lexnet/network.hpp"

namespace lexnet {

enum class VertexKind { RAW, LEMM };

std::string to_string(VertexKind kind);

struct BfsConfig {
    enum class Mode { AUTO, EXACT, SAMPLE } mode = Mode::AUTO;
    std::uint32_t sample_sources = 10000;
    // AUTO: exact below this many component vertices, sampled above.
    std::uint32_t exact_threshold = 50000;
};

struct RunConfig {
    std::filesystem::path corpus_path;
    std::optional<std::filesystem::path> lemma_table_path;
    VertexKind vertex = VertexKind::RAW;
    std::vector<ConstraintLevel> levels = {ConstraintLevel::COLL, ConstraintLevel::PLAIN,
                                           ConstraintLevel::RANSEN,
                                           ConstraintLevel::RANDOC};
    std::uint64_t seed = 0;
    double alpha = 0.01;
    std::optional<std::uint32_t> k_min; // nullopt: KS-selected
    BfsConfig bfs;
    double rewire_swaps_per_edge = 10.0;
    bool lowercase = false;
    std::filesystem::path out_dir;
    unsigned threads = 0; // 0: hardware concurrency
    std::uint64_t regression_outlier_cutoff = 100000;
    std::uint64_t zipf_rank_lo = 10, zipf_rank_hi = 1000;
    std::size_t top_m = 10;
};

/// Per-network slice of the report. Fit and regression failures on degenerate
/// networks are recorded as diagnostics instead of aborting the run.
struct NetworkReport {
    ConstraintLevel level = ConstraintLevel::PLAIN;
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t loops = 0;
    double mean_degree = 0.0;
    double link_density = 0.0;
    std::optional<PowerLawFit> fit;
    std::optional<double> gamma_tail_regression;
    std::optional<std::string> fit_error;
    PathStats paths;
    ClusteringStats clustering;
    double knn_spearman = 0.0;
    double freq_degree_spearman = 0.0;
    std::optional<RegressionResult> regression;
    std::optional<std::string> regression_error;
    double rewired_knn_spearman = 0.0;
    std::uint64_t rewire_attempted = 0;
    std::uint64_t rewire_accepted = 0;
    bool rewire_noop = false;
    std::vector<std::pair<std::string, std::uint32_t>> top_connected;
};

struct OrderingVerdicts {
    // strict chains; unset when a required level is missing
    std::optional<bool> mean_degree_chain; // COLL < PLAIN < RANSEN < RANDOC
    std::optional<bool> asp_chain;         // COLL < RANDOC < RANSEN < PLAIN
    std::optional<bool> diameter_chain;    // COLL < RANDOC < RANSEN < PLAIN
};

struct StatsReport {
    std::string corpus_path;
    std::uint64_t documents = 0, sentences = 0, tokens = 0, vocabulary = 0;
    std::uint64_t skipped_lines = 0;
    VertexKind vertex = VertexKind::RAW;
    std::uint64_t seed = 0;
    double alpha = 0.01;
    std::vector<NetworkReport> networks;
    std::vector<std::pair<std::string, std::uint64_t>> top_frequent;
    std::optional<ZipfFit> zipf;
    std::optional<std::string> zipf_error;
    OrderingVerdicts orderings;

    const NetworkReport* find(ConstraintLevel level) const;
};

/// Runs ingest -> shuffle -> collocations -> networks -> metrics -> null
/// models, writing report.json plus edge lists, distribution/k_nn TSVs and
/// the collocation TSV into cfg.out_dir. Deterministic for a fixed
/// (corpus bytes, config). On error, files written by this run are removed
/// before the exception leaves.
StatsReport run_pipeline(const RunConfig& cfg);

/// Computes the full per-network metric bundle. vocab may be null (e.g. for
/// a bare edge list); frequency-based metrics are then skipped.
NetworkReport analyze_network(const WordNetwork& net, const Vocabulary* vocab,
                              ConstraintLevel level, std::size_t level_index,
                              const RunConfig& cfg);

std::string network_report_to_json(const NetworkReport& report);

/// Evaluates the cross-level ordering chains on a finished report.
OrderingVerdicts check_orderings(const StatsReport& report);

struct RawLemmVerdict {
    ConstraintLevel level;
    bool asp_raw_greater;       // mean shortest path: raw > lemmatized
    bool density_raw_smaller;   // link density: raw < lemmatized
    bool diameter_raw_at_least; // diameter: raw >= lemmatized
};

/// Per-level comparison of a RAW report against a LEMM report over the same
/// corpus. Throws MetricError when the level sets differ.
std::vector<RawLemmVerdict> compare_raw_vs_lemm(const StatsReport& raw,
                                                const StatsReport& lemm);

std::string report_to_json(const StatsReport& report);
StatsReport report_from_json(const std::string& text);
StatsReport load_report(const std::filesystem::path& path);

} // namespace lexnet

#endif
