#include "lexnet/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "lexnet/colloc.hpp"
#include "lexnet/errors.hpp"
#include "lexnet/nullmodel.hpp"
#include "lexnet/permute.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {

using json = nlohmann::ordered_json;

std::string to_string(VertexKind kind) {
    return kind == VertexKind::RAW ? "raw" : "lemm";
}

const NetworkReport* StatsReport::find(ConstraintLevel level) const {
    for (const auto& net : networks)
        if (net.level == level) return &net;
    return nullptr;
}

namespace {

constexpr std::uint64_t kRewireTag = 0x52455749ULL; // "REWI"
constexpr std::uint64_t kBfsTag = 0x42465353ULL;    // "BFSS"

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Removes the files this run has written if it dies midway.
class ArtifactTracker {
public:
    explicit ArtifactTracker(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    std::filesystem::path open(const std::string& name, std::ofstream& stream) {
        const auto path = dir_ / name;
        stream.open(path);
        if (!stream) throw DataError("cannot write artifact: " + path.string());
        written_.push_back(path);
        return path;
    }

    void commit() { committed_ = true; }

    ~ArtifactTracker() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& path : written_) std::filesystem::remove(path, ec);
    }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

double knn_curve_spearman(const KnnCurve& curve) {
    std::vector<double> ks, knns;
    ks.reserve(curve.points.size());
    knns.reserve(curve.points.size());
    for (const auto& pt : curve.points) {
        ks.push_back(static_cast<double>(pt.k));
        knns.push_back(pt.knn);
    }
    return spearman(ks, knns);
}

double freq_degree_spearman(const Vocabulary& vocab, const WordNetwork& net) {
    std::vector<double> freqs, degrees;
    freqs.reserve(vocab.size());
    degrees.reserve(vocab.size());
    for (TokenId v = 0; v < net.vertex_count(); ++v) {
        if (vocab.freq[v] == 0) continue;
        freqs.push_back(static_cast<double>(vocab.freq[v]));
        degrees.push_back(static_cast<double>(net.degree(v)));
    }
    return spearman(freqs, degrees);
}

} // namespace

NetworkReport analyze_network(const WordNetwork& net, const Vocabulary* vocab,
                              ConstraintLevel level, std::size_t level_index,
                              const RunConfig& cfg) {
    NetworkReport report;
    report.level = level;
    report.n = net.vertex_count();
    report.m = net.edge_count();
    report.loops = net.loop_count();

    const DensityStats density = density_stats(net);
    report.mean_degree = density.mean_degree;
    report.link_density = density.link_density;

    const DegreeDistribution dist = degree_distribution(net);
    try {
        report.fit = fit_power_law(dist, cfg.k_min);
        report.gamma_tail_regression = ccdf_tail_exponent(dist, report.fit->k_min);
    } catch (const FitError& err) {
        report.fit_error = err.what();
    }

    const WordNetwork component = largest_component(net);
    PathMode mode;
    switch (cfg.bfs.mode) {
        case BfsConfig::Mode::EXACT: mode.exact = true; break;
        case BfsConfig::Mode::SAMPLE:
            mode.exact = false;
            mode.sources = cfg.bfs.sample_sources;
            break;
        case BfsConfig::Mode::AUTO:
            mode.exact = component.vertex_count() < cfg.bfs.exact_threshold;
            mode.sources = cfg.bfs.sample_sources;
            break;
    }
    mode.seed = derive_seed(cfg.seed, kBfsTag, level_index);
    report.paths = path_stats(component, mode, cfg.threads);

    report.clustering = clustering(net);
    report.knn_spearman = knn_curve_spearman(knn_curve(net));
    if (vocab) {
        report.freq_degree_spearman = freq_degree_spearman(*vocab, net);
        try {
            report.regression =
                freq_degree_regression(*vocab, net, cfg.regression_outlier_cutoff);
        } catch (const MetricError& err) {
            report.regression_error = err.what();
        }
    } else {
        report.freq_degree_spearman = std::numeric_limits<double>::quiet_NaN();
        report.regression_error = "no vocabulary available";
    }

    RewireConfig rewire_cfg;
    rewire_cfg.swaps_per_edge = cfg.rewire_swaps_per_edge;
    rewire_cfg.seed = derive_seed(cfg.seed, kRewireTag, level_index);
    const RewireOutcome rewired = rewire(net, rewire_cfg);
    report.rewire_attempted = rewired.attempted;
    report.rewire_accepted = rewired.accepted;
    report.rewire_noop = rewired.noop;
    report.rewired_knn_spearman = knn_curve_spearman(knn_curve(rewired.net));

    if (vocab) report.top_connected = top_connected(net, *vocab, cfg.top_m);
    return report;
}

StatsReport run_pipeline(const RunConfig& cfg) {
    if (cfg.levels.empty()) throw ConfigError("at least one level must be selected");
    if (cfg.out_dir.empty()) throw ConfigError("output directory not set");
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha outside (0, 1]");

    ArtifactTracker artifacts(cfg.out_dir);

    LoadResult loaded = [&] {
        try {
            return load_corpus(cfg.corpus_path, cfg.lowercase);
        } catch (const DataError& err) {
            throw DataError(std::string("ingest: ") + err.what());
        }
    }();

    if (cfg.vertex == VertexKind::LEMM) {
        if (!cfg.lemma_table_path)
            throw ConfigError("vertex=lemm requires a lemma table");
        const auto table = load_lemma_table(*cfg.lemma_table_path);
        auto [corpus, vocab] =
            apply_lemmatization(loaded.corpus, loaded.vocab, table);
        loaded.corpus = std::move(corpus);
        loaded.vocab = std::move(vocab);
    }

    auto vocab = std::make_shared<const Vocabulary>(std::move(loaded.vocab));
    const Corpus& corpus = loaded.corpus;
    const std::string vertex_name = to_string(cfg.vertex);

    StatsReport report;
    report.corpus_path = cfg.corpus_path.string();
    report.documents = corpus.documents.size();
    report.sentences = corpus.sentence_count();
    report.tokens = corpus.token_count();
    report.vocabulary = vocab->size();
    report.skipped_lines = loaded.skipped_lines;
    report.vertex = cfg.vertex;
    report.seed = cfg.seed;
    report.alpha = cfg.alpha;

    const RankFrequency rf = rank_frequency(*vocab);
    {
        std::ofstream out;
        artifacts.open("rankfreq_" + vertex_name + ".tsv", out);
        save_rank_frequency(rf, *vocab, out);
    }
    for (std::size_t i = 0; i < std::min(cfg.top_m, rf.entries.size()); ++i)
        report.top_frequent.emplace_back(vocab->id_to_token[rf.entries[i].id],
                                         rf.entries[i].frequency);
    try {
        const std::uint64_t hi = std::min<std::uint64_t>(cfg.zipf_rank_hi, vocab->size());
        report.zipf = zipf_fit(rf, cfg.zipf_rank_lo, hi);
    } catch (const MetricError& err) {
        report.zipf_error = err.what();
    }

    for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
        const ConstraintLevel level = cfg.levels[li];
        WordNetwork net;
        switch (level) {
            case ConstraintLevel::PLAIN:
                net = build_cooccurrence(corpus, vocab);
                break;
            case ConstraintLevel::RANSEN:
                net = build_cooccurrence(shuffle_ransen(corpus, {cfg.seed}), vocab);
                break;
            case ConstraintLevel::RANDOC:
                net = build_cooccurrence(shuffle_randoc(corpus, {cfg.seed}), vocab);
                break;
            case ConstraintLevel::COLL: {
                const BigramStats stats = count_bigrams(corpus);
                const CollocationSet colls =
                    extract_collocations(stats, cfg.alpha, cfg.threads);
                std::ofstream out;
                artifacts.open("colloc_" + vertex_name + ".tsv", out);
                save_collocations(colls, *vocab, out);
                net = build_collocation_network(colls, vocab);
                break;
            }
        }
        const std::string tag = lower(to_string(level)) + "_" + vertex_name;
        {
            std::ofstream out;
            artifacts.open("edges_" + tag + ".txt", out);
            save_edge_list(net, {level, vertex_name, std::nullopt}, out);
        }
        NetworkReport net_report = analyze_network(net, vocab.get(), level, li, cfg);
        {
            std::ofstream out;
            artifacts.open("dist_" + tag + ".tsv", out);
            save_degree_distribution(degree_distribution(net), out);
        }
        {
            std::ofstream out;
            artifacts.open("knn_" + tag + ".tsv", out);
            save_knn_curve(knn_curve(net), out);
        }
        report.networks.push_back(std::move(net_report));
    }

    report.orderings = check_orderings(report);

    {
        std::ofstream out;
        artifacts.open("report.json", out);
        out << report_to_json(report) << '\n';
    }
    artifacts.commit();
    return report;
}

OrderingVerdicts check_orderings(const StatsReport& report) {
    OrderingVerdicts verdicts;
    const NetworkReport* coll = report.find(ConstraintLevel::COLL);
    const NetworkReport* plain = report.find(ConstraintLevel::PLAIN);
    const NetworkReport* ransen = report.find(ConstraintLevel::RANSEN);
    const NetworkReport* randoc = report.find(ConstraintLevel::RANDOC);
    if (!coll || !plain || !ransen || !randoc) return verdicts;

    verdicts.mean_degree_chain = coll->mean_degree < plain->mean_degree &&
                                 plain->mean_degree < ransen->mean_degree &&
                                 ransen->mean_degree < randoc->mean_degree;
    verdicts.asp_chain = coll->paths.mean < randoc->paths.mean &&
                         randoc->paths.mean < ransen->paths.mean &&
                         ransen->paths.mean < plain->paths.mean;
    verdicts.diameter_chain = coll->paths.diameter < randoc->paths.diameter &&
                              randoc->paths.diameter < ransen->paths.diameter &&
                              ransen->paths.diameter < plain->paths.diameter;
    return verdicts;
}

std::vector<RawLemmVerdict> compare_raw_vs_lemm(const StatsReport& raw,
                                                const StatsReport& lemm) {
    std::vector<RawLemmVerdict> verdicts;
    for (const auto& net : raw.networks) {
        const NetworkReport* other = lemm.find(net.level);
        if (!other) throw MetricError("compare: level sets differ");
        verdicts.push_back({net.level, net.paths.mean > other->paths.mean,
                            net.link_density < other->link_density,
                            net.paths.diameter >= other->paths.diameter});
    }
    if (lemm.networks.size() != raw.networks.size())
        throw MetricError("compare: level sets differ");
    return verdicts;
}

namespace {

json fit_to_json(const NetworkReport& net) {
    json fit;
    if (net.fit) {
        fit["gamma"] = net.fit->gamma;
        fit["k_min"] = net.fit->k_min;
        fit["n_tail"] = net.fit->n_tail;
        fit["ks_distance"] = net.fit->ks_distance;
        if (net.gamma_tail_regression)
            fit["gamma_tail_regression"] = *net.gamma_tail_regression;
    } else if (net.fit_error) {
        fit["error"] = *net.fit_error;
    }
    return fit;
}

json network_to_json(const NetworkReport& net) {
    json entry;
    entry["level"] = to_string(net.level);
    entry["n"] = net.n;
    entry["m"] = net.m;
    entry["loops"] = net.loops;
    entry["mean_degree"] = net.mean_degree;
    entry["link_density"] = net.link_density;
    entry["degree_fit"] = fit_to_json(net);
    entry["paths"] = {{"component_size", net.paths.component_size},
                      {"diameter", net.paths.diameter},
                      {"mean", net.paths.mean},
                      {"stddev", net.paths.stddev},
                      {"sampled", net.paths.sampled},
                      {"sources", net.paths.sources}};
    entry["clustering"] = {{"local", net.clustering.local},
                           {"global", net.clustering.global}};
    entry["knn_spearman"] = net.knn_spearman;
    entry["freq_degree_spearman"] = net.freq_degree_spearman;
    if (net.regression) {
        entry["regression"] = {{"slope", net.regression->slope},
                               {"intercept", net.regression->intercept},
                               {"r_squared", net.regression->r_squared},
                               {"p_value", net.regression->p_value},
                               {"excluded_outliers", net.regression->excluded_outliers}};
    } else if (net.regression_error) {
        entry["regression"] = {{"error", *net.regression_error}};
    }
    entry["rewired"] = {{"knn_spearman", net.rewired_knn_spearman},
                        {"attempted", net.rewire_attempted},
                        {"accepted", net.rewire_accepted},
                        {"noop", net.rewire_noop}};
    json top = json::array();
    for (const auto& [token, degree] : net.top_connected)
        top.push_back({{"token", token}, {"degree", degree}});
    entry["top_connected"] = std::move(top);
    return entry;
}

} // namespace

std::string network_report_to_json(const NetworkReport& report) {
    return network_to_json(report).dump(2);
}

std::string report_to_json(const StatsReport& report) {
    json doc;
    doc["corpus"] = {{"path", report.corpus_path},
                     {"documents", report.documents},
                     {"sentences", report.sentences},
                     {"tokens", report.tokens},
                     {"vocabulary", report.vocabulary},
                     {"skipped_lines", report.skipped_lines}};
    doc["config"] = {{"vertex", to_string(report.vertex)},
                     {"seed", report.seed},
                     {"alpha", report.alpha}};

    doc["networks"] = json::array();
    for (const auto& net : report.networks)
        doc["networks"].push_back(network_to_json(net));

    json top_freq = json::array();
    for (const auto& [token, freq] : report.top_frequent)
        top_freq.push_back({{"token", token}, {"frequency", freq}});
    doc["top_frequent"] = std::move(top_freq);

    if (report.zipf) {
        doc["zipf"] = {{"alpha", report.zipf->alpha},
                       {"amplitude", report.zipf->amplitude},
                       {"rank_lo", report.zipf->rank_lo},
                       {"rank_hi", report.zipf->rank_hi}};
    } else if (report.zipf_error) {
        doc["zipf"] = {{"error", *report.zipf_error}};
    }

    json orderings;
    auto verdict = [](const std::optional<bool>& v) {
        return v ? json(*v) : json(nullptr);
    };
    orderings["mean_degree_chain"] = verdict(report.orderings.mean_degree_chain);
    orderings["asp_chain"] = verdict(report.orderings.asp_chain);
    orderings["diameter_chain"] = verdict(report.orderings.diameter_chain);
    doc["orderings"] = std::move(orderings);

    return doc.dump(2);
}

StatsReport report_from_json(const std::string& text) {
    const json doc = json::parse(text);
    StatsReport report;
    const auto& corpus = doc.at("corpus");
    report.corpus_path = corpus.at("path").get<std::string>();
    report.documents = corpus.at("documents").get<std::uint64_t>();
    report.sentences = corpus.at("sentences").get<std::uint64_t>();
    report.tokens = corpus.at("tokens").get<std::uint64_t>();
    report.vocabulary = corpus.at("vocabulary").get<std::uint64_t>();
    report.skipped_lines = corpus.at("skipped_lines").get<std::uint64_t>();
    const auto& config = doc.at("config");
    report.vertex = config.at("vertex").get<std::string>() == "lemm" ? VertexKind::LEMM
                                                                     : VertexKind::RAW;
    report.seed = config.at("seed").get<std::uint64_t>();
    report.alpha = config.at("alpha").get<double>();

    for (const auto& entry : doc.at("networks")) {
        NetworkReport net;
        const auto level = parse_level(entry.at("level").get<std::string>());
        if (!level) throw DataError("report: unknown level name");
        net.level = *level;
        net.n = entry.at("n").get<std::uint32_t>();
        net.m = entry.at("m").get<std::uint64_t>();
        net.loops = entry.at("loops").get<std::uint64_t>();
        net.mean_degree = entry.at("mean_degree").get<double>();
        net.link_density = entry.at("link_density").get<double>();
        const auto& fit = entry.at("degree_fit");
        if (fit.contains("gamma")) {
            PowerLawFit parsed;
            parsed.gamma = fit.at("gamma").get<double>();
            parsed.k_min = fit.at("k_min").get<std::uint32_t>();
            parsed.n_tail = fit.at("n_tail").get<std::size_t>();
            parsed.ks_distance = fit.at("ks_distance").get<double>();
            net.fit = parsed;
            if (fit.contains("gamma_tail_regression"))
                net.gamma_tail_regression = fit.at("gamma_tail_regression").get<double>();
        } else if (fit.contains("error")) {
            net.fit_error = fit.at("error").get<std::string>();
        }
        const auto& paths = entry.at("paths");
        net.paths.component_size = paths.at("component_size").get<std::uint32_t>();
        net.paths.diameter = paths.at("diameter").get<std::uint32_t>();
        net.paths.mean = paths.at("mean").get<double>();
        net.paths.stddev = paths.at("stddev").get<double>();
        net.paths.sampled = paths.at("sampled").get<bool>();
        net.paths.sources = paths.at("sources").get<std::uint32_t>();
        const auto& clus = entry.at("clustering");
        net.clustering.local = clus.at("local").get<double>();
        net.clustering.global = clus.at("global").get<double>();
        auto number_or_nan = [](const json& v) {
            return v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                               : v.get<double>();
        };
        net.knn_spearman = number_or_nan(entry.at("knn_spearman"));
        net.freq_degree_spearman = number_or_nan(entry.at("freq_degree_spearman"));
        if (entry.contains("regression")) {
            const auto& reg = entry.at("regression");
            if (reg.contains("slope")) {
                RegressionResult parsed;
                parsed.slope = reg.at("slope").get<double>();
                parsed.intercept = reg.at("intercept").get<double>();
                parsed.r_squared = reg.at("r_squared").get<double>();
                parsed.p_value = reg.at("p_value").get<double>();
                parsed.excluded_outliers = reg.at("excluded_outliers").get<std::uint64_t>();
                net.regression = parsed;
            } else if (reg.contains("error")) {
                net.regression_error = reg.at("error").get<std::string>();
            }
        }
        const auto& rewired = entry.at("rewired");
        net.rewired_knn_spearman = number_or_nan(rewired.at("knn_spearman"));
        net.rewire_attempted = rewired.at("attempted").get<std::uint64_t>();
        net.rewire_accepted = rewired.at("accepted").get<std::uint64_t>();
        net.rewire_noop = rewired.at("noop").get<bool>();
        for (const auto& top : entry.at("top_connected"))
            net.top_connected.emplace_back(top.at("token").get<std::string>(),
                                           top.at("degree").get<std::uint32_t>());
        report.networks.push_back(std::move(net));
    }

    for (const auto& top : doc.at("top_frequent"))
        report.top_frequent.emplace_back(top.at("token").get<std::string>(),
                                         top.at("frequency").get<std::uint64_t>());
    if (doc.contains("zipf")) {
        const auto& zipf = doc.at("zipf");
        if (zipf.contains("alpha")) {
            report.zipf = ZipfFit{zipf.at("alpha").get<double>(),
                                  zipf.at("amplitude").get<double>(),
                                  zipf.at("rank_lo").get<std::uint64_t>(),
                                  zipf.at("rank_hi").get<std::uint64_t>()};
        } else if (zipf.contains("error")) {
            report.zipf_error = zipf.at("error").get<std::string>();
        }
    }
    const auto& orderings = doc.at("orderings");
    auto maybe_bool = [](const json& v) -> std::optional<bool> {
        if (v.is_null()) return std::nullopt;
        return v.get<bool>();
    };
    report.orderings.mean_degree_chain = maybe_bool(orderings.at("mean_degree_chain"));
    report.orderings.asp_chain = maybe_bool(orderings.at("asp_chain"));
    report.orderings.diameter_chain = maybe_bool(orderings.at("diameter_chain"));
    return report;
}

StatsReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    try {
        return report_from_json(text);
    } catch (const json::exception& err) {
        throw DataError("malformed report " + path.string() + ": " + err.what());
    }
}

} // namespace lexnet
