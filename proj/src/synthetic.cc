#include "pmine/synthetic.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace pmine::synth {
namespace {

constexpr const char* kSourceSyllables[] = {"ka", "ro", "wie", "szy", "mo", "ta", "pol", "dzi",
                                            "ne", "cze", "lu", "bra", "ko", "wy", "sta", "gro"};
constexpr const char* kTargetSyllables[] = {"the", "an", "ol", "ing", "ber", "ton", "sa", "ly",
                                            "mer", "ve", "dor", "pri", "ex", "ul", "con", "fa"};
constexpr std::size_t kSyllables = 16;

std::string make_word(const char* const* syllables, std::size_t index) {
  // Index in base 16 with at least two syllables.
  std::string word;
  std::size_t value = index + kSyllables;
  while (value > 0) {
    word += syllables[value % kSyllables];
    value /= kSyllables;
  }
  return word;
}

std::size_t zipf_rank(const LanguagePair& lp, Rng& rng) {
  const double target = rng.uniform() * lp.rank_cdf.back();
  const auto it = std::upper_bound(lp.rank_cdf.begin(), lp.rank_cdf.end(), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - lp.rank_cdf.begin()),
                               lp.rank_cdf.size() - 1);
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty() && w != "," && w != ".") out += ' ';
    out += w;
  }
  return capitalize(out);
}

struct Draft {
  std::vector<std::size_t> words;  // ranks
  std::string number;              // empty for none
  std::size_t number_slot = 0;
  std::size_t comma_slot = 0;      // 0 for none
};

Draft draft(const LanguagePair& lp, Rng& rng) {
  Draft d;
  const auto length = static_cast<std::size_t>(rng.between(5, 14));
  for (std::size_t k = 0; k < length; ++k) d.words.push_back(zipf_rank(lp, rng));
  if (rng.chance(0.3)) {
    d.number = std::to_string(rng.between(1, 2100));
    d.number_slot = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(length)));
  }
  if (rng.chance(0.3)) d.comma_slot = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(length - 1)));
  return d;
}

std::vector<std::string> render(const std::vector<std::string>& words, const Draft& d,
                                bool with_number, bool with_comma) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k <= words.size(); ++k) {
    if (with_number && !d.number.empty() && k == std::min(d.number_slot, words.size())) {
      out.push_back(d.number);
    }
    if (with_comma && d.comma_slot != 0 && k == std::min(d.comma_slot, words.size())) out.push_back(",");
    if (k < words.size()) out.push_back(words[k]);
  }
  out.push_back(".");
  return out;
}

std::vector<std::string> source_words(const LanguagePair& lp, const Draft& d) {
  std::vector<std::string> words;
  for (const auto r : d.words) words.push_back(lp.src_words[r]);
  return words;
}

}  // namespace

LanguagePair make_language_pair(std::size_t vocabulary, std::size_t lexicon_entries,
                                std::uint64_t seed) {
  Rng rng(seed);
  LanguagePair lp;
  // A seeded permutation decouples word shape from frequency rank.
  std::vector<std::size_t> src_ids(vocabulary);
  std::vector<std::size_t> tgt_ids(vocabulary);
  for (std::size_t k = 0; k < vocabulary; ++k) src_ids[k] = tgt_ids[k] = k;
  rng.shuffle(std::span<std::size_t>(src_ids));
  rng.shuffle(std::span<std::size_t>(tgt_ids));
  for (std::size_t k = 0; k < vocabulary; ++k) {
    lp.src_words.push_back(make_word(kSourceSyllables, src_ids[k]));
    lp.tgt_words.push_back(make_word(kTargetSyllables, tgt_ids[k]));
  }
  double acc = 0.0;
  for (std::size_t r = 0; r < vocabulary; ++r) {
    acc += 1.0 / static_cast<double>(r + 1);
    lp.rank_cdf.push_back(acc);
  }
  lp.lexicon.direction = {lp.src_lang, lp.tgt_lang};
  for (std::size_t k = 0; k < std::min(lexicon_entries, vocabulary); ++k) {
    const double prob = 0.5 + 0.5 * rng.uniform();
    lp.lexicon.add(lp.src_words[k], lp.tgt_words[k], prob);
  }
  return lp;
}

std::string source_sentence(const LanguagePair& lp, Rng& rng) {
  const Draft d = draft(lp, rng);
  return join(render(source_words(lp, d), d, true, true));
}

std::string target_sentence(const LanguagePair& lp, Rng& rng) {
  const Draft d = draft(lp, rng);
  std::vector<std::string> words;
  for (const auto r : d.words) words.push_back(lp.tgt_words[r]);
  return join(render(words, d, true, true));
}

TextPair translation_pair(const LanguagePair& lp, Rng& rng) {
  const Draft d = draft(lp, rng);
  std::vector<std::string> translated;
  for (const auto r : d.words) {
    const double roll = rng.uniform();
    if (roll < 0.08) continue;
    if (roll < 0.15) {
      translated.push_back(lp.tgt_words[rng.below(lp.tgt_words.size())]);
    } else {
      translated.push_back(lp.tgt_words[r]);
    }
    if (rng.chance(0.1)) translated.push_back(lp.tgt_words[zipf_rank(lp, rng)]);
  }
  for (std::size_t k = 1; k < translated.size(); ++k) {
    if (rng.chance(0.15)) std::swap(translated[k - 1], translated[k]);
  }
  if (translated.empty()) translated.push_back(lp.tgt_words[d.words.front()]);
  const bool keep_number = rng.chance(0.9);
  const bool keep_comma = rng.chance(0.8);
  return {join(render(source_words(lp, d), d, true, true)),
          join(render(translated, d, keep_number, keep_comma))};
}

std::vector<TextPair> parallel_text(const LanguagePair& lp, std::size_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TextPair> out;
  out.reserve(pairs);
  for (std::size_t k = 0; k < pairs; ++k) out.push_back(translation_pair(lp, rng));
  return out;
}

SeedCorpus seed_corpus(const LanguagePair& lp, std::size_t pairs, std::uint64_t seed) {
  SeedCorpus corpus;
  for (const auto& [src, tgt] : parallel_text(lp, pairs, seed)) {
    corpus.pairs.emplace_back(*make_sentence(src), *make_sentence(tgt));
  }
  return corpus;
}

ComparableCorpus comparable_corpus(const LanguagePair& lp, const ComparableOptions& options,
                                   std::uint64_t seed) {
  Rng rng(seed);
  ComparableCorpus corpus;
  auto count_in = [&](std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  };
  // Interleaves `gold` entries (marked true) with distractors at random slots.
  auto layout = [&](std::size_t gold_count, std::size_t distractors) {
    std::vector<bool> slots(gold_count, true);
    for (std::size_t k = 0; k < distractors; ++k) {
      slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(rng.below(slots.size() + 1)), false);
    }
    return slots;
  };
  for (std::size_t d = 0; d < options.docs; ++d) {
    const std::size_t pair_count = count_in(options.min_pairs, options.max_pairs);
    std::vector<TextPair> pairs;
    for (std::size_t k = 0; k < pair_count; ++k) pairs.push_back(translation_pair(lp, rng));
    const auto src_slots = layout(pair_count, count_in(options.min_distractors, options.max_distractors));
    const auto tgt_slots = layout(pair_count, count_in(options.min_distractors, options.max_distractors));

    DocumentPair doc;
    doc.id = "doc" + std::to_string(d);
    doc.source = {doc.id, lp.src_lang, {}};
    doc.target = {doc.id, lp.tgt_lang, {}};
    std::vector<std::size_t> src_pos;
    std::vector<std::size_t> tgt_pos;
    std::size_t next = 0;
    for (const bool is_gold : src_slots) {
      if (is_gold) src_pos.push_back(doc.source.sentences.size());
      doc.source.sentences.push_back(
          *make_sentence(is_gold ? pairs[next++].first : source_sentence(lp, rng)));
    }
    next = 0;
    for (const bool is_gold : tgt_slots) {
      if (is_gold) tgt_pos.push_back(doc.target.sentences.size());
      doc.target.sentences.push_back(
          *make_sentence(is_gold ? pairs[next++].second : target_sentence(lp, rng)));
    }
    std::set<std::pair<std::size_t, std::size_t>> gold;
    for (std::size_t k = 0; k < pair_count; ++k) gold.emplace(src_pos[k], tgt_pos[k]);
    corpus.docs.push_back(std::move(doc));
    corpus.gold.push_back(std::move(gold));
  }
  return corpus;
}

std::string document_pair_json(const DocumentPair& pair,
                               const std::set<std::pair<std::size_t, std::size_t>>* gold) {
  nlohmann::ordered_json j;
  j["id"] = pair.id;
  j["src_lang"] = pair.source.lang;
  j["tgt_lang"] = pair.target.lang;
  auto& src = j["src"] = nlohmann::ordered_json::array();
  for (const auto& s : pair.source.sentences) src.push_back(s.raw);
  auto& tgt = j["tgt"] = nlohmann::ordered_json::array();
  for (const auto& s : pair.target.sentences) tgt.push_back(s.raw);
  if (gold) {
    auto& g = j["gold"] = nlohmann::ordered_json::array();
    for (const auto& [i, k] : *gold) g.push_back({i, k});
  }
  return j.dump();
}

void write_lexicon_tsv(std::ostream& out, const LanguagePair& lp) {
  out << "# src\ttgt\tprob\n";
  for (const auto& word : lp.src_words) {
    for (const auto& t : lp.lexicon.translations(word)) {
      char prob[32];
      std::snprintf(prob, sizeof prob, "%.6f", t.prob);
      out << word << '\t' << t.word << '\t' << prob << '\n';
    }
  }
}

}  // namespace pmine::synth
