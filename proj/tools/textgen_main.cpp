// Standalone generator for the evaluation corpus used by the acceptance
// suite; handy for reproducing its inputs outside the test harness.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "textgen.hpp"

int main(int argc, char** argv) {
    CLI::App app{"deterministic English-like corpus generator"};
    textgen::Config cfg;
    std::string corpus_out = "corpus.txt";
    std::string lemma_out = "lemmas.tsv";
    app.add_option("--seed", cfg.seed, "generator seed");
    app.add_option("--tokens", cfg.target_tokens, "approximate token count");
    app.add_option("--out", corpus_out, "corpus output path");
    app.add_option("--lemma-out", lemma_out, "lemma table output path");
    CLI11_PARSE(app, argc, argv);

    const textgen::Output result = textgen::generate(cfg, corpus_out, lemma_out);
    std::cout << "documents=" << result.documents << " sentences=" << result.sentences
              << " tokens=" << result.tokens << '\n';
    return 0;
}
