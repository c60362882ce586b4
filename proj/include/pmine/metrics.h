#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmine {

using TokenList = std::vector<std::string>;

// Whitespace split, no further tokenization.
TokenList split_words(std::string_view line);

// n-gram counts for n = 1..max_n of one token list.
class NGramProfile {
 public:
  NGramProfile(std::span<const std::string> tokens, std::size_t max_n);

  std::size_t count(const std::vector<std::string>& ngram) const;
  const std::map<std::vector<std::string>, std::size_t>& order(std::size_t n) const {
    return orders_[n - 1];
  }
  std::size_t max_n() const { return orders_.size(); }

 private:
  std::vector<std::map<std::vector<std::string>, std::size_t>> orders_;
};

struct BleuResult {
  double score = 0.0;
  std::vector<double> precisions;  // smoothed, per order
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  double brevity = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

// Corpus BLEU, single reference. An order with no clipped match uses
// precision 1 / (2 * max(1, total n-grams at that order)).
// Throws DataError on empty input or mismatched lengths.
BleuResult bleu_details(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
                        std::size_t max_n = 4);
double bleu(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
            std::size_t max_n = 4);

struct NistResult {
  double score = 0.0;
  std::vector<double> info_sums;   // per order, before division by hypothesis n-gram count
  std::vector<double> order_scores;
  double brevity = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

// NIST with info(w1..wn) = log2(count(w1..wn-1) / count(w1..wn)) over the
// references (the unigram prefix count is the reference word total) and
// brevity factor exp(beta * ln(min(1, c / r))^2), beta = ln 0.5 / ln(1.5)^2.
NistResult nist_details(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
                        std::size_t max_n = 5);
double nist(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
            std::size_t max_n = 5);

using TextPair = std::pair<std::string, std::string>;

struct TestSplit {
  std::vector<TextPair> test;
  std::vector<TextPair> remainder;
  std::vector<std::size_t> test_indices;  // ascending corpus positions
  std::uint64_t seed = 0;
};

// Splits the corpus into `segments` contiguous near-equal parts and draws
// `per_segment` pairs from each without replacement. Both outputs keep
// corpus order. Throws DataError if the corpus is too small.
TestSplit sample_test_set(std::span<const TextPair> corpus, std::size_t segments = 200,
                          std::size_t per_segment = 10, std::uint64_t seed = 42);

}  // namespace pmine
