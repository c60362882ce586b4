// Writes a synthetic fixture set: seed corpus, lexicon, comparable document
// pairs and a gold-aligned development set.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pmine/synthetic.h"

namespace fs = std::filesystem;

int main(int argc, char* argv[]) {
  CLI::App app{"Generate synthetic pmine fixtures"};
  std::string dir;
  std::uint64_t seed = 42;
  std::size_t vocabulary = 600;
  std::size_t lexicon_entries = 500;
  std::size_t seed_pairs = 2000;
  std::size_t docs = 200;
  std::size_t gold_docs = 60;
  app.add_option("--dir", dir, "Output directory")->required();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--vocabulary", vocabulary, "Words per language")->capture_default_str();
  app.add_option("--lexicon-entries", lexicon_entries, "Lexicon entries")->capture_default_str();
  app.add_option("--seed-pairs", seed_pairs, "Seed corpus size")->capture_default_str();
  app.add_option("--docs", docs, "Comparable document pairs")->capture_default_str();
  app.add_option("--gold-docs", gold_docs, "Gold development document pairs")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto lp = pmine::synth::make_language_pair(vocabulary, lexicon_entries, seed);
  fs::create_directories(dir);
  const fs::path root(dir);

  {
    std::ofstream src(root / ("seed." + lp.src_lang));
    std::ofstream tgt(root / ("seed." + lp.tgt_lang));
    for (const auto& [s, t] : pmine::synth::parallel_text(lp, seed_pairs, seed + 1)) {
      src << s << '\n';
      tgt << t << '\n';
    }
  }
  {
    std::ofstream out(root / "lexicon.tsv");
    pmine::synth::write_lexicon_tsv(out, lp);
  }
  {
    pmine::synth::ComparableOptions options;
    options.docs = docs;
    const auto corpus = pmine::synth::comparable_corpus(lp, options, seed + 2);
    std::ofstream out(root / "docs.jsonl");
    std::ofstream gold(root / "docs.gold.jsonl");
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
      out << pmine::synth::document_pair_json(corpus.docs[d]) << '\n';
      gold << pmine::synth::document_pair_json(corpus.docs[d], &corpus.gold[d]) << '\n';
    }
  }
  {
    pmine::synth::ComparableOptions options;
    options.docs = gold_docs;
    const auto dev = pmine::synth::comparable_corpus(lp, options, seed + 3);
    std::ofstream out(root / "dev.gold.jsonl");
    for (std::size_t d = 0; d < dev.docs.size(); ++d) {
      out << pmine::synth::document_pair_json(dev.docs[d], &dev.gold[d]) << '\n';
    }
  }
  std::cout << "fixtures written to " << root.string() << '\n';
  return 0;
}
