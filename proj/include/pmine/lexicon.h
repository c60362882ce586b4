#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace pmine {

struct Translation {
  std::string word;
  double prob;
};

// Bilingual word-translation table. Keys and translations are normalized
// (see text::normalize). Per source word, translations are sorted by
// descending probability, ties by word.
class Lexicon {
 public:
  Lexicon() = default;

  // Adds or strengthens an entry; duplicate (src, tgt) keeps the max
  // probability. Throws DataError if prob is outside (0, 1].
  void add(std::string_view src, std::string_view tgt, double prob);

  // Translations of a normalized source word (empty when unknown).
  std::span<const Translation> translations(std::string_view src_word) const;
  // Source words translating to a normalized target word.
  std::span<const Translation> reverse_translations(std::string_view tgt_word) const;

  // Same table with the roles of source and target exchanged.
  Lexicon reversed() const;

  std::size_t size() const { return pair_count_; }
  std::size_t source_words() const { return forward_.size(); }

  std::pair<std::string, std::string> direction;  // (source lang, target lang); may be blank

 private:
  using Table = std::unordered_map<std::string, std::vector<Translation>>;
  static void insert(Table& table, std::string_view key, std::string_view value, double prob);

  Table forward_;
  Table backward_;
  std::size_t pair_count_ = 0;
};

// TSV `src<TAB>tgt<TAB>prob`, '#' comment lines ignored.
Lexicon load_lexicon(const std::filesystem::path& path);
Lexicon parse_lexicon(std::istream& in);

// Fraction of alphabetic source tokens (tokens with at least one letter) that
// have a translation present among the target tokens. 0 when the source has
// no alphabetic token. Tokens are normalized before lookup.
double coverage(const Lexicon& lex, std::span<const std::string> src_tokens,
                std::span<const std::string> tgt_tokens);

// Same, with source tokens looked up through the reverse table.
double reverse_coverage(const Lexicon& lex, std::span<const std::string> src_tokens,
                        std::span<const std::string> tgt_tokens);

bool has_letter(std::string_view token);
bool is_number_token(std::string_view token);

}  // namespace pmine
