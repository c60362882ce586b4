#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmine/corpus.h"
#include "pmine/lexicon.h"
#include "pmine/metrics.h"
#include "pmine/random.h"

// Synthetic bilingual data: an artificial language pair with a known
// word-for-word translation, noisy sentence translations, and comparable
// documents that interleave translated pairs with unrelated sentences.
namespace pmine::synth {

struct LanguagePair {
  std::string src_lang = "pl";
  std::string tgt_lang = "en";
  std::vector<std::string> src_words;  // by frequency rank
  std::vector<std::string> tgt_words;  // tgt_words[k] translates src_words[k]
  Lexicon lexicon;                     // covers the most frequent words
  std::vector<double> rank_cdf;        // cumulative 1/(rank+1) weights
};

LanguagePair make_language_pair(std::size_t vocabulary, std::size_t lexicon_entries,
                                std::uint64_t seed);

// Random source-language sentence.
std::string source_sentence(const LanguagePair& lp, Rng& rng);
// Random target-language sentence unrelated to any particular source.
std::string target_sentence(const LanguagePair& lp, Rng& rng);
// A source sentence and a noisy translation of it (dropped, substituted,
// inserted and locally reordered words).
TextPair translation_pair(const LanguagePair& lp, Rng& rng);

std::vector<TextPair> parallel_text(const LanguagePair& lp, std::size_t pairs, std::uint64_t seed);
SeedCorpus seed_corpus(const LanguagePair& lp, std::size_t pairs, std::uint64_t seed);

struct ComparableOptions {
  std::size_t docs = 100;
  std::size_t min_pairs = 4;
  std::size_t max_pairs = 10;
  std::size_t min_distractors = 1;  // per side
  std::size_t max_distractors = 5;
};

struct ComparableCorpus {
  std::vector<DocumentPair> docs;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> gold;
};

ComparableCorpus comparable_corpus(const LanguagePair& lp, const ComparableOptions& options,
                                   std::uint64_t seed);

// JSONL record in pre-segmented list form; `gold` is added when non-null.
std::string document_pair_json(const DocumentPair& pair,
                               const std::set<std::pair<std::size_t, std::size_t>>* gold = nullptr);

void write_lexicon_tsv(std::ostream& out, const LanguagePair& lp);

}  // namespace pmine::synth
