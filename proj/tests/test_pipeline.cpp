#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "lexnet/errors.hpp"
#include "lexnet/pipeline.hpp"
#include "support/tmpdir.hpp"

using namespace lexnet;
namespace fs = std::filesystem;

namespace {

// Three-document fixture. PLAIN network, worked out by hand:
//   ids: the=0 cat=1 sat=2 dog=3 ran=4 dogs=5 fast=6
//   edges {0,1},{1,2},{0,3},{2,3},{1,4},{4,5},{4,6} -> n=7, m=7
//   degrees 2,3,2,2,3,1,1 -> mean 2, density 7/28
//   distances over 21 pairs sum 44, squares 112 -> mean 44/21, dmax 4
//   no triangles -> clustering 0
const char* kToyCorpus =
    "the cat sat\n"
    "the dog sat\n"
    "\n"
    "the cat ran\n"
    "\n"
    "dogs ran fast\n";

RunConfig toy_config(const fs::path& corpus, const fs::path& out) {
    RunConfig cfg;
    cfg.corpus_path = corpus;
    cfg.levels = {ConstraintLevel::PLAIN};
    cfg.out_dir = out;
    cfg.seed = 5;
    cfg.threads = 1;
    cfg.top_m = 3;
    return cfg;
}

} // namespace

TEST_CASE("toy corpus PLAIN numbers match the hand computation") {
    testsupport::TmpDir dir("pipeline_toy");
    const auto corpus = dir.write("toy.txt", kToyCorpus);
    const StatsReport report = run_pipeline(toy_config(corpus, dir.file("out")));

    CHECK(report.documents == 3);
    CHECK(report.sentences == 4);
    CHECK(report.tokens == 12);
    CHECK(report.vocabulary == 7);

    REQUIRE(report.networks.size() == 1);
    const NetworkReport& plain = report.networks[0];
    CHECK(plain.level == ConstraintLevel::PLAIN);
    CHECK(plain.n == 7);
    CHECK(plain.m == 7);
    CHECK(plain.loops == 0);
    CHECK(plain.mean_degree == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(plain.link_density == doctest::Approx(7.0 / 28.0).epsilon(1e-15));

    CHECK(plain.paths.component_size == 7);
    CHECK(plain.paths.diameter == 4);
    CHECK(plain.paths.mean == doctest::Approx(44.0 / 21.0).epsilon(1e-12));
    const double var = 112.0 / 21.0 - (44.0 / 21.0) * (44.0 / 21.0);
    CHECK(plain.paths.stddev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
    CHECK(!plain.paths.sampled);

    CHECK(plain.clustering.local == doctest::Approx(0.0));
    CHECK(plain.clustering.global == doctest::Approx(0.0));

    // knn curve: k=1 -> 3, k=2 -> 7/3, k=3 -> 2; monotone decreasing
    CHECK(plain.knn_spearman == doctest::Approx(-1.0));

    REQUIRE(plain.top_connected.size() == 3);
    CHECK(plain.top_connected[0].first == "cat"); // degree 3, before "ran"
    CHECK(plain.top_connected[0].second == 3);
    CHECK(plain.top_connected[1].first == "ran");

    REQUIRE(report.top_frequent.size() == 3);
    CHECK(report.top_frequent[0].first == "the");
    CHECK(report.top_frequent[0].second == 3);

    // rank 10..1000 clamps to V=7: too short to fit
    CHECK(!report.zipf.has_value());
    CHECK(report.zipf_error.has_value());

    // single level: ordering verdicts stay unset
    CHECK(!report.orderings.mean_degree_chain.has_value());

    CHECK(fs::exists(dir.file("out") / "report.json"));
    CHECK(fs::exists(dir.file("out") / "edges_plain_raw.txt"));
    CHECK(fs::exists(dir.file("out") / "dist_plain_raw.tsv"));
    CHECK(fs::exists(dir.file("out") / "knn_plain_raw.tsv"));
    CHECK(fs::exists(dir.file("out") / "rankfreq_raw.tsv"));
}

TEST_CASE("pipeline runs are byte-identical for a fixed seed") {
    testsupport::TmpDir dir("pipeline_det");
    const auto corpus = dir.write("toy.txt", kToyCorpus);
    RunConfig cfg_a = toy_config(corpus, dir.file("a"));
    cfg_a.levels = {ConstraintLevel::COLL, ConstraintLevel::PLAIN,
                    ConstraintLevel::RANSEN, ConstraintLevel::RANDOC};
    RunConfig cfg_b = cfg_a;
    cfg_b.out_dir = dir.file("b");
    cfg_b.threads = 2; // parallelism must not affect the bytes
    run_pipeline(cfg_a);
    run_pipeline(cfg_b);
    for (const char* name :
         {"report.json", "edges_plain_raw.txt", "edges_coll_raw.txt",
          "edges_ransen_raw.txt", "edges_randoc_raw.txt", "dist_plain_raw.tsv",
          "knn_plain_raw.tsv", "colloc_raw.tsv", "rankfreq_raw.tsv"}) {
        CAPTURE(name);
        CHECK(testsupport::slurp(dir.file("a") / name) ==
              testsupport::slurp(dir.file("b") / name));
    }
}

TEST_CASE("all four levels populate ordering verdicts") {
    testsupport::TmpDir dir("pipeline_levels");
    const auto corpus = dir.write("toy.txt", kToyCorpus);
    RunConfig cfg = toy_config(corpus, dir.file("out"));
    cfg.levels = {ConstraintLevel::COLL, ConstraintLevel::PLAIN,
                  ConstraintLevel::RANSEN, ConstraintLevel::RANDOC};
    const StatsReport report = run_pipeline(cfg);
    REQUIRE(report.networks.size() == 4);
    CHECK(report.orderings.mean_degree_chain.has_value());
    CHECK(report.orderings.asp_chain.has_value());
    CHECK(report.orderings.diameter_chain.has_value());
    for (const auto& net : report.networks) CHECK(net.n == report.vocabulary);
}

TEST_CASE("report JSON round trips") {
    testsupport::TmpDir dir("pipeline_json");
    const auto corpus = dir.write("toy.txt", kToyCorpus);
    RunConfig cfg = toy_config(corpus, dir.file("out"));
    cfg.levels = {ConstraintLevel::COLL, ConstraintLevel::PLAIN,
                  ConstraintLevel::RANSEN, ConstraintLevel::RANDOC};
    const StatsReport report = run_pipeline(cfg);
    const StatsReport back = report_from_json(report_to_json(report));
    CHECK(back.tokens == report.tokens);
    CHECK(back.vocabulary == report.vocabulary);
    REQUIRE(back.networks.size() == report.networks.size());
    for (std::size_t i = 0; i < report.networks.size(); ++i) {
        CHECK(back.networks[i].level == report.networks[i].level);
        CHECK(back.networks[i].m == report.networks[i].m);
        CHECK(back.networks[i].mean_degree == report.networks[i].mean_degree);
        CHECK(back.networks[i].link_density == report.networks[i].link_density);
        CHECK(back.networks[i].paths.mean == report.networks[i].paths.mean);
        CHECK(back.networks[i].paths.diameter == report.networks[i].paths.diameter);
        CHECK(back.networks[i].clustering.local == report.networks[i].clustering.local);
        CHECK(back.networks[i].top_connected == report.networks[i].top_connected);
    }
    CHECK(back.orderings.mean_degree_chain == report.orderings.mean_degree_chain);

    // loading from disk matches too
    const StatsReport loaded = load_report(dir.file("out") / "report.json");
    CHECK(loaded.tokens == report.tokens);
    CHECK(loaded.networks.size() == report.networks.size());
}

namespace {

StatsReport synthetic_report(double coll, double plain, double ransen, double randoc) {
    StatsReport report;
    const ConstraintLevel levels[] = {ConstraintLevel::COLL, ConstraintLevel::PLAIN,
                                      ConstraintLevel::RANSEN, ConstraintLevel::RANDOC};
    const double values[] = {coll, plain, ransen, randoc};
    for (int i = 0; i < 4; ++i) {
        NetworkReport net;
        net.level = levels[i];
        net.mean_degree = values[i];
        report.networks.push_back(net);
    }
    return report;
}

} // namespace

TEST_CASE("mean-degree chain verdicts") {
    // the published English row ordering holds
    CHECK(*check_orderings(synthetic_report(0.32, 37.18, 52.97, 55.50)).mean_degree_chain);
    // ties break the strict chain
    CHECK(!*check_orderings(synthetic_report(0.3, 37.0, 37.0, 55.0)).mean_degree_chain);
    // the published Chinese row violates PLAIN < RANSEN
    CHECK(!*check_orderings(synthetic_report(8.41, 171.07, 114.43, 436.01)).mean_degree_chain);
}

TEST_CASE("missing levels leave verdicts unset") {
    StatsReport report = synthetic_report(1, 2, 3, 4);
    report.networks.pop_back();
    const OrderingVerdicts verdicts = check_orderings(report);
    CHECK(!verdicts.mean_degree_chain.has_value());
    CHECK(!verdicts.asp_chain.has_value());
}

TEST_CASE("raw vs lemmatized comparison") {
    StatsReport raw = synthetic_report(1, 2, 3, 4);
    StatsReport lemm = synthetic_report(1, 2, 3, 4);
    // published English PLAIN values: asp 3.08 vs 3.02, diameter 26 vs 22
    for (auto& net : raw.networks) {
        net.paths.mean = 3.08;
        net.paths.diameter = 26;
        net.link_density = 0.001;
    }
    for (auto& net : lemm.networks) {
        net.paths.mean = 3.02;
        net.paths.diameter = 22;
        net.link_density = 0.002;
    }
    const auto verdicts = compare_raw_vs_lemm(raw, lemm);
    REQUIRE(verdicts.size() == 4);
    for (const auto& v : verdicts) {
        CHECK(v.asp_raw_greater);
        CHECK(v.density_raw_smaller);
        CHECK(v.diameter_raw_at_least);
    }

    // identical reports: >-verdicts false, >=-verdicts true
    const auto equal_verdicts = compare_raw_vs_lemm(raw, raw);
    for (const auto& v : equal_verdicts) {
        CHECK(!v.asp_raw_greater);
        CHECK(!v.density_raw_smaller);
        CHECK(v.diameter_raw_at_least);
    }

    StatsReport short_report = raw;
    short_report.networks.pop_back();
    CHECK_THROWS_AS(compare_raw_vs_lemm(raw, short_report), MetricError);
}

TEST_CASE("config errors carry no artifacts") {
    testsupport::TmpDir dir("pipeline_errors");
    const auto corpus = dir.write("toy.txt", kToyCorpus);

    RunConfig no_levels = toy_config(corpus, dir.file("out1"));
    no_levels.levels.clear();
    CHECK_THROWS_AS(run_pipeline(no_levels), ConfigError);

    RunConfig bad_alpha = toy_config(corpus, dir.file("out2"));
    bad_alpha.alpha = 0.0;
    CHECK_THROWS_AS(run_pipeline(bad_alpha), ConfigError);

    RunConfig missing_corpus = toy_config(dir.file("absent.txt"), dir.file("out3"));
    CHECK_THROWS_AS(run_pipeline(missing_corpus), DataError);
    CHECK(!fs::exists(dir.file("out3") / "report.json"));

    RunConfig lemm_without_table = toy_config(corpus, dir.file("out4"));
    lemm_without_table.vertex = VertexKind::LEMM;
    CHECK_THROWS_AS(run_pipeline(lemm_without_table), ConfigError);
}

TEST_CASE("lemmatized run merges vertices") {
    testsupport::TmpDir dir("pipeline_lemm");
    const auto corpus = dir.write("toy.txt", kToyCorpus);
    const auto table = dir.write("lemmas.tsv", "dogs\tdog\nran\trun\nsat\tsit\n");
    RunConfig cfg = toy_config(corpus, dir.file("out"));
    cfg.vertex = VertexKind::LEMM;
    cfg.lemma_table_path = table;
    const StatsReport report = run_pipeline(cfg);
    CHECK(report.vocabulary == 6); // dogs folds into dog
    CHECK(report.tokens == 12);
    CHECK(fs::exists(dir.file("out") / "edges_plain_lemm.txt"));
}
