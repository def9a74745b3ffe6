// Command-line front end for the lexical-network toolkit. Verbs mirror the
// pipeline stages so each step can run standalone on prior artifacts:
//   ingest, shuffle, colloc, build, stats, rewire, report, check
// Exit codes: 0 success, 2 config error, 3 data error, 4 metric error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexnet/colloc.hpp"
#include "lexnet/errors.hpp"
#include "lexnet/metrics.hpp"
#include "lexnet/network.hpp"
#include "lexnet/nullmodel.hpp"
#include "lexnet/permute.hpp"
#include "lexnet/pipeline.hpp"
#include "lexnet/numfmt.hpp"
#include "lexnet/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CorpusOpts {
    std::string corpus;
    std::string lemma_table;
    std::string vertex = "raw";
    bool lowercase = false;
};

void add_corpus_opts(CLI::App* cmd, CorpusOpts& opts) {
    cmd->add_option("--corpus", opts.corpus, "corpus file (one sentence per line)")
        ->required();
    cmd->add_option("--lemma-table", opts.lemma_table,
                    "TSV surface<TAB>lemma mapping");
    cmd->add_option("--vertex", opts.vertex, "vertex kind")
        ->check(CLI::IsMember({"raw", "lemm"}));
    cmd->add_flag("--lowercase", opts.lowercase, "fold tokens to lowercase (ASCII)");
}

// Loads the corpus and applies lemmatization when vertex=lemm.
std::pair<lexnet::Corpus, std::shared_ptr<const lexnet::Vocabulary>>
prepare_corpus(const CorpusOpts& opts, std::uint64_t* skipped = nullptr) {
    lexnet::LoadResult loaded = lexnet::load_corpus(opts.corpus, opts.lowercase);
    if (skipped) *skipped = loaded.skipped_lines;
    if (opts.vertex == "lemm") {
        if (opts.lemma_table.empty())
            throw lexnet::ConfigError("--vertex lemm requires --lemma-table");
        const auto table = lexnet::load_lemma_table(opts.lemma_table);
        auto [corpus, vocab] =
            lexnet::apply_lemmatization(loaded.corpus, loaded.vocab, table);
        return {std::move(corpus),
                std::make_shared<const lexnet::Vocabulary>(std::move(vocab))};
    }
    return {std::move(loaded.corpus),
            std::make_shared<const lexnet::Vocabulary>(std::move(loaded.vocab))};
}

std::optional<std::uint32_t> parse_kmin(const std::string& text) {
    if (text == "auto") return std::nullopt;
    return static_cast<std::uint32_t>(std::stoul(text));
}

lexnet::BfsConfig parse_bfs(const std::string& text) {
    lexnet::BfsConfig bfs;
    if (text == "auto") return bfs;
    if (text == "exact") {
        bfs.mode = lexnet::BfsConfig::Mode::EXACT;
        return bfs;
    }
    if (text.rfind("sample:", 0) == 0) {
        bfs.mode = lexnet::BfsConfig::Mode::SAMPLE;
        bfs.sample_sources = static_cast<std::uint32_t>(std::stoul(text.substr(7)));
        if (bfs.sample_sources == 0)
            throw lexnet::ConfigError("--bfs sample:<n> needs n >= 1");
        return bfs;
    }
    throw lexnet::ConfigError("--bfs expects exact, sample:<n>, or auto");
}

std::vector<lexnet::ConstraintLevel> parse_levels(const std::string& csv) {
    std::vector<lexnet::ConstraintLevel> levels;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string name =
            csv.substr(start, comma == std::string::npos ? csv.size() - start
                                                         : comma - start);
        if (!name.empty()) {
            const auto level = lexnet::parse_level(name);
            if (!level) throw lexnet::ConfigError("unknown level: " + name);
            levels.push_back(*level);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (levels.empty()) throw lexnet::ConfigError("--levels selected nothing");
    return levels;
}

std::ofstream open_output(const std::string& path) {
    if (const fs::path parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream out(path);
    if (!out) throw lexnet::DataError("cannot write: " + path);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"word co-occurrence and collocation network toolkit"};
    app.require_subcommand(1);

    // ingest ---------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "normalize a corpus and export rank-frequency data");
    ingest->set_config("--config");
    CorpusOpts ingest_opts;
    std::string ingest_out;
    add_corpus_opts(ingest, ingest_opts);
    ingest->add_option("--out", ingest_out, "output directory")->required();

    // shuffle --------------------------------------------------------------
    auto* shuffle = app.add_subcommand("shuffle", "write a RANSEN or RANDOC permutation of the corpus");
    shuffle->set_config("--config");
    CorpusOpts shuffle_opts;
    std::string shuffle_level, shuffle_out;
    std::uint64_t shuffle_seed = 0;
    add_corpus_opts(shuffle, shuffle_opts);
    shuffle->add_option("--level", shuffle_level, "ransen or randoc")
        ->required()
        ->check(CLI::IsMember({"ransen", "randoc"}));
    shuffle->add_option("--seed", shuffle_seed, "shuffle seed");
    shuffle->add_option("--out", shuffle_out, "output corpus file")->required();

    // colloc ---------------------------------------------------------------
    auto* colloc = app.add_subcommand("colloc", "extract collocations with a right-sided Fisher test");
    colloc->set_config("--config");
    CorpusOpts colloc_opts;
    std::string colloc_out;
    double colloc_alpha = 0.01;
    unsigned colloc_threads = 0;
    add_corpus_opts(colloc, colloc_opts);
    colloc->add_option("--alpha", colloc_alpha, "significance threshold");
    colloc->add_option("--threads", colloc_threads, "worker threads (0 = all)");
    colloc->add_option("--out", colloc_out, "output TSV")->required();

    // build ----------------------------------------------------------------
    auto* build = app.add_subcommand("build", "build one network level and export its edge list");
    build->set_config("--config");
    CorpusOpts build_opts;
    std::string build_level, build_out;
    std::uint64_t build_seed = 0;
    double build_alpha = 0.01;
    unsigned build_threads = 0;
    add_corpus_opts(build, build_opts);
    build->add_option("--level", build_level, "coll, plain, ransen, or randoc")
        ->required();
    build->add_option("--seed", build_seed, "seed for the shuffled levels");
    build->add_option("--alpha", build_alpha, "Fisher threshold for coll");
    build->add_option("--threads", build_threads, "worker threads (0 = all)");
    build->add_option("--out", build_out, "output edge list")->required();

    // stats ----------------------------------------------------------------
    auto* stats = app.add_subcommand("stats", "compute the metric bundle for one edge list");
    stats->set_config("--config");
    std::string stats_edges, stats_out, stats_kmin = "auto", stats_bfs = "auto";
    CorpusOpts stats_corpus_opts;
    bool stats_have_corpus = false;
    std::uint64_t stats_seed = 0;
    double stats_swaps = 10.0;
    unsigned stats_threads = 0;
    stats->add_option("--edges", stats_edges, "edge list file")->required();
    auto* stats_corpus_opt =
        stats->add_option("--corpus", stats_corpus_opts.corpus,
                          "corpus the edge list came from (enables frequency metrics)");
    stats->add_option("--lemma-table", stats_corpus_opts.lemma_table, "lemma TSV");
    stats->add_option("--vertex", stats_corpus_opts.vertex, "vertex kind")
        ->check(CLI::IsMember({"raw", "lemm"}));
    stats->add_flag("--lowercase", stats_corpus_opts.lowercase, "fold case on ingest");
    stats->add_option("--kmin", stats_kmin, "power-law cutoff: auto or an integer");
    stats->add_option("--bfs", stats_bfs, "path mode: exact, sample:<n>, or auto");
    stats->add_option("--seed", stats_seed, "seed for sampling and rewiring");
    stats->add_option("--swaps", stats_swaps, "rewiring swaps per edge");
    stats->add_option("--threads", stats_threads, "worker threads (0 = all)");
    stats->add_option("--out", stats_out, "output JSON (default stdout)");

    // rewire ---------------------------------------------------------------
    auto* rewire_cmd = app.add_subcommand("rewire", "degree-preserving randomization of an edge list");
    rewire_cmd->set_config("--config");
    std::string rewire_edges, rewire_out;
    double rewire_swaps = 10.0;
    std::uint64_t rewire_seed = 0;
    rewire_cmd->add_option("--edges", rewire_edges, "edge list file")->required();
    rewire_cmd->add_option("--swaps", rewire_swaps, "swaps per edge");
    rewire_cmd->add_option("--seed", rewire_seed, "rewiring seed");
    rewire_cmd->add_option("--out", rewire_out, "output edge list")->required();

    // report ---------------------------------------------------------------
    auto* report = app.add_subcommand("report", "run the full pipeline and write all artifacts");
    report->set_config("--config");
    CorpusOpts report_opts;
    std::string report_levels = "coll,plain,ransen,randoc";
    std::string report_kmin = "auto", report_bfs = "auto", report_out;
    std::uint64_t report_seed = 0;
    double report_alpha = 0.01, report_swaps = 10.0;
    unsigned report_threads = 0;
    add_corpus_opts(report, report_opts);
    report->add_option("--levels", report_levels, "comma-separated level subset");
    report->add_option("--seed", report_seed, "master seed");
    report->add_option("--alpha", report_alpha, "Fisher threshold");
    report->add_option("--kmin", report_kmin, "power-law cutoff: auto or an integer");
    report->add_option("--bfs", report_bfs, "path mode: exact, sample:<n>, or auto");
    report->add_option("--swaps", report_swaps, "rewiring swaps per edge");
    report->add_option("--threads", report_threads, "worker threads (0 = all)");
    report->add_option("--out", report_out, "output directory")->required();

    // check ----------------------------------------------------------------
    auto* check = app.add_subcommand("check", "evaluate ordering verdicts on finished reports");
    check->set_config("--config");
    std::string check_report, check_report2;
    check->add_option("--report", check_report, "report.json from a run")->required();
    check->add_option("--report2", check_report2,
                      "second report (lemm) for raw-vs-lemm verdicts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad flags are config errors
    }

    if (*ingest) {
        std::uint64_t skipped = 0;
        auto [corpus, vocab] = prepare_corpus(ingest_opts, &skipped);
        fs::create_directories(ingest_out);
        const std::string vertex = ingest_opts.vertex;
        lexnet::save_corpus(corpus, *vocab,
                            fs::path(ingest_out) / ("corpus_" + vertex + ".txt"));
        auto rf_out = open_output(
            (fs::path(ingest_out) / ("rankfreq_" + vertex + ".tsv")).string());
        lexnet::save_rank_frequency(lexnet::rank_frequency(*vocab), *vocab, rf_out);
        std::cout << "documents=" << corpus.documents.size()
                  << " sentences=" << corpus.sentence_count()
                  << " tokens=" << corpus.token_count()
                  << " vocabulary=" << vocab->size()
                  << " skipped_lines=" << skipped << '\n';
    } else if (*shuffle) {
        auto [corpus, vocab] = prepare_corpus(shuffle_opts);
        const lexnet::Corpus shuffled =
            shuffle_level == "ransen"
                ? lexnet::shuffle_ransen(corpus, {shuffle_seed})
                : lexnet::shuffle_randoc(corpus, {shuffle_seed});
        auto out = open_output(shuffle_out);
        lexnet::save_corpus(shuffled, *vocab, out);
    } else if (*colloc) {
        auto [corpus, vocab] = prepare_corpus(colloc_opts);
        const auto stats_bundle = lexnet::count_bigrams(corpus);
        const auto colls =
            lexnet::extract_collocations(stats_bundle, colloc_alpha, colloc_threads);
        auto out = open_output(colloc_out);
        lexnet::save_collocations(colls, *vocab, out);
        std::cout << "bigrams=" << stats_bundle.total
                  << " distinct=" << stats_bundle.pair_count.size()
                  << " collocations=" << colls.pairs.size() << '\n';
    } else if (*build) {
        auto [corpus, vocab] = prepare_corpus(build_opts);
        const auto level = lexnet::parse_level(build_level);
        if (!level) throw lexnet::ConfigError("unknown level: " + build_level);
        lexnet::WordNetwork net;
        switch (*level) {
            case lexnet::ConstraintLevel::PLAIN:
                net = lexnet::build_cooccurrence(corpus, vocab);
                break;
            case lexnet::ConstraintLevel::RANSEN:
                net = lexnet::build_cooccurrence(
                    lexnet::shuffle_ransen(corpus, {build_seed}), vocab);
                break;
            case lexnet::ConstraintLevel::RANDOC:
                net = lexnet::build_cooccurrence(
                    lexnet::shuffle_randoc(corpus, {build_seed}), vocab);
                break;
            case lexnet::ConstraintLevel::COLL:
                net = lexnet::build_collocation_network(
                    lexnet::extract_collocations(lexnet::count_bigrams(corpus),
                                                 build_alpha, build_threads),
                    vocab);
                break;
        }
        auto out = open_output(build_out);
        lexnet::save_edge_list(net, {*level, build_opts.vertex, std::nullopt}, out);
    } else if (*stats) {
        auto [net, meta] = lexnet::load_edge_list(stats_edges);
        std::shared_ptr<const lexnet::Vocabulary> vocab;
        if (!stats_corpus_opt->empty()) {
            stats_have_corpus = true;
            auto [corpus, loaded_vocab] = prepare_corpus(stats_corpus_opts);
            if (loaded_vocab->size() != net.vertex_count())
                throw lexnet::DataError(
                    "corpus vocabulary does not match edge-list vertex count");
            vocab = loaded_vocab;
        }
        lexnet::RunConfig cfg;
        cfg.k_min = parse_kmin(stats_kmin);
        cfg.bfs = parse_bfs(stats_bfs);
        cfg.seed = stats_seed;
        cfg.rewire_swaps_per_edge = stats_swaps;
        cfg.threads = stats_threads;
        const auto level = meta.level.value_or(lexnet::ConstraintLevel::PLAIN);
        const lexnet::NetworkReport bundle =
            lexnet::analyze_network(net, stats_have_corpus ? vocab.get() : nullptr,
                                    level, 0, cfg);
        const std::string text = lexnet::network_report_to_json(bundle);
        if (stats_out.empty()) {
            std::cout << text << '\n';
        } else {
            auto out = open_output(stats_out);
            out << text << '\n';
        }
    } else if (*rewire_cmd) {
        auto [net, meta] = lexnet::load_edge_list(rewire_edges);
        lexnet::RewireConfig cfg;
        cfg.swaps_per_edge = rewire_swaps;
        cfg.seed = rewire_seed;
        const lexnet::RewireOutcome outcome = lexnet::rewire(net, cfg);
        meta.extra = "rewired seed=" + std::to_string(rewire_seed) +
                     " Q=" + lexnet::format_double(rewire_swaps);
        auto out = open_output(rewire_out);
        lexnet::save_edge_list(outcome.net, meta, out);
        std::cout << "attempted=" << outcome.attempted
                  << " accepted=" << outcome.accepted
                  << " noop=" << (outcome.noop ? "true" : "false") << '\n';
    } else if (*report) {
        lexnet::RunConfig cfg;
        cfg.corpus_path = report_opts.corpus;
        if (!report_opts.lemma_table.empty()) cfg.lemma_table_path = report_opts.lemma_table;
        cfg.vertex = report_opts.vertex == "lemm" ? lexnet::VertexKind::LEMM
                                                  : lexnet::VertexKind::RAW;
        cfg.levels = parse_levels(report_levels);
        cfg.seed = report_seed;
        cfg.alpha = report_alpha;
        cfg.k_min = parse_kmin(report_kmin);
        cfg.bfs = parse_bfs(report_bfs);
        cfg.rewire_swaps_per_edge = report_swaps;
        cfg.lowercase = report_opts.lowercase;
        cfg.out_dir = report_out;
        cfg.threads = report_threads;
        const lexnet::StatsReport result = lexnet::run_pipeline(cfg);
        std::cout << "report written to "
                  << (fs::path(report_out) / "report.json").string() << " ("
                  << result.networks.size() << " networks)\n";
    } else if (*check) {
        const lexnet::StatsReport first = lexnet::load_report(check_report);
        ordered_json doc;
        auto verdict = [](const std::optional<bool>& v) {
            return v ? ordered_json(*v) : ordered_json(nullptr);
        };
        const lexnet::OrderingVerdicts orderings = lexnet::check_orderings(first);
        doc["orderings"] = {{"mean_degree_chain", verdict(orderings.mean_degree_chain)},
                            {"asp_chain", verdict(orderings.asp_chain)},
                            {"diameter_chain", verdict(orderings.diameter_chain)}};
        if (!check_report2.empty()) {
            const lexnet::StatsReport second = lexnet::load_report(check_report2);
            ordered_json comparisons = ordered_json::array();
            for (const auto& v : lexnet::compare_raw_vs_lemm(first, second)) {
                comparisons.push_back(
                    {{"level", lexnet::to_string(v.level)},
                     {"asp_raw_greater", v.asp_raw_greater},
                     {"density_raw_smaller", v.density_raw_smaller},
                     {"diameter_raw_at_least", v.diameter_raw_at_least}});
            }
            doc["comparisons"] = std::move(comparisons);
        }
        std::cout << doc.dump(2) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lexnet::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const lexnet::FitError& err) {
        std::cerr << "metric error: " << err.what() << '\n';
        return 4;
    } catch (const lexnet::DataError& err) {
        std::cerr << "data error: " << err.what() << '\n';
        return 3;
    } catch (const lexnet::MetricError& err) {
        std::cerr << "metric error: " << err.what() << '\n';
        return 4;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
