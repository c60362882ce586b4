#include "pmine/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "pmine/errors.h"
#include "pmine/random.h"

namespace pmine {
namespace {

void check_inputs(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
                  std::size_t max_n) {
  if (hypotheses.empty()) throw DataError("no hypotheses to score");
  if (hypotheses.size() != references.size()) {
    throw DataError("hypothesis count " + std::to_string(hypotheses.size()) +
                    " differs from reference count " + std::to_string(references.size()));
  }
  if (max_n < 1) throw DataError("max n-gram order must be >= 1");
}

std::size_t ngram_total(std::size_t length, std::size_t n) { return length >= n ? length - n + 1 : 0; }

std::size_t total_length(std::span<const TokenList> lists) {
  std::size_t total = 0;
  for (const auto& l : lists) total += l.size();
  return total;
}

}  // namespace

TokenList split_words(std::string_view line) {
  TokenList words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t begin = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > begin) words.emplace_back(line.substr(begin, pos - begin));
  }
  return words;
}

NGramProfile::NGramProfile(std::span<const std::string> tokens, std::size_t max_n) : orders_(max_n) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::size_t k = 0; k + n <= tokens.size(); ++k) {
      ++orders_[n - 1][std::vector<std::string>(tokens.begin() + k, tokens.begin() + k + n)];
    }
  }
}

std::size_t NGramProfile::count(const std::vector<std::string>& ngram) const {
  if (ngram.empty() || ngram.size() > orders_.size()) return 0;
  const auto& table = orders_[ngram.size() - 1];
  auto it = table.find(ngram);
  return it == table.end() ? 0 : it->second;
}

BleuResult bleu_details(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
                        std::size_t max_n) {
  check_inputs(hypotheses, references, max_n);
  BleuResult r;
  r.matches.assign(max_n, 0);
  r.totals.assign(max_n, 0);
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const NGramProfile hyp(hypotheses[s], max_n);
    const NGramProfile ref(references[s], max_n);
    for (std::size_t n = 1; n <= max_n; ++n) {
      r.totals[n - 1] += ngram_total(hypotheses[s].size(), n);
      for (const auto& [gram, count] : hyp.order(n)) {
        r.matches[n - 1] += std::min(count, ref.count(gram));
      }
    }
  }
  r.hyp_length = total_length(hypotheses);
  r.ref_length = total_length(references);

  double log_sum = 0.0;
  for (std::size_t n = 0; n < max_n; ++n) {
    const double p = r.matches[n] > 0
                         ? static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n])
                         : 1.0 / (2.0 * static_cast<double>(std::max<std::size_t>(1, r.totals[n])));
    r.precisions.push_back(p);
    log_sum += std::log(p);
  }
  if (r.hyp_length == 0) {
    r.brevity = 0.0;
    r.score = 0.0;
    return r;
  }
  r.brevity = std::exp(std::min(0.0, 1.0 - static_cast<double>(r.ref_length) /
                                              static_cast<double>(r.hyp_length)));
  r.score = std::clamp(r.brevity * std::exp(log_sum / static_cast<double>(max_n)), 0.0, 1.0);
  return r;
}

double bleu(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
            std::size_t max_n) {
  return bleu_details(hypotheses, references, max_n).score;
}

NistResult nist_details(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
                        std::size_t max_n) {
  check_inputs(hypotheses, references, max_n);
  NistResult r;
  r.hyp_length = total_length(hypotheses);
  r.ref_length = total_length(references);

  // Reference-side n-gram counts for the information weights.
  std::vector<std::map<std::vector<std::string>, std::size_t>> ref_counts(max_n);
  for (const auto& ref : references) {
    const NGramProfile profile(ref, max_n);
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (const auto& [gram, count] : profile.order(n)) ref_counts[n - 1][gram] += count;
    }
  }
  auto info = [&](const std::vector<std::string>& gram) {
    const double count = static_cast<double>(ref_counts[gram.size() - 1].at(gram));
    double prefix = static_cast<double>(r.ref_length);
    if (gram.size() > 1) {
      const std::vector<std::string> head(gram.begin(), gram.end() - 1);
      prefix = static_cast<double>(ref_counts[gram.size() - 2].at(head));
    }
    return std::log2(prefix / count);
  };

  r.info_sums.assign(max_n, 0.0);
  std::vector<std::size_t> totals(max_n, 0);
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const NGramProfile hyp(hypotheses[s], max_n);
    const NGramProfile ref(references[s], max_n);
    for (std::size_t n = 1; n <= max_n; ++n) {
      totals[n - 1] += ngram_total(hypotheses[s].size(), n);
      for (const auto& [gram, count] : hyp.order(n)) {
        const std::size_t matched = std::min(count, ref.count(gram));
        if (matched > 0) r.info_sums[n - 1] += static_cast<double>(matched) * info(gram);
      }
    }
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < max_n; ++n) {
    const double order_score =
        totals[n] == 0 ? 0.0 : r.info_sums[n] / static_cast<double>(totals[n]);
    r.order_scores.push_back(order_score);
    sum += order_score;
  }
  const double beta = std::log(0.5) / std::pow(std::log(1.5), 2);
  double ratio = r.ref_length == 0 ? 1.0
                                   : static_cast<double>(r.hyp_length) /
                                         static_cast<double>(r.ref_length);
  ratio = std::min(1.0, ratio);
  r.brevity = ratio <= 0.0 ? 0.0 : std::exp(beta * std::pow(std::log(ratio), 2));
  r.score = sum * r.brevity;
  return r;
}

double nist(std::span<const TokenList> hypotheses, std::span<const TokenList> references,
            std::size_t max_n) {
  return nist_details(hypotheses, references, max_n).score;
}

TestSplit sample_test_set(std::span<const TextPair> corpus, std::size_t segments,
                          std::size_t per_segment, std::uint64_t seed) {
  if (segments < 1 || per_segment < 1) throw DataError("segments and per-segment must be >= 1");
  const std::size_t required = segments * per_segment;
  if (corpus.size() < required) {
    throw DataError("corpus has " + std::to_string(corpus.size()) + " pairs; at least " +
                    std::to_string(required) + " are required");
  }
  Rng rng(seed);
  TestSplit split;
  split.seed = seed;
  std::vector<bool> chosen(corpus.size(), false);
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t begin = corpus.size() * s / segments;
    const std::size_t end = corpus.size() * (s + 1) / segments;
    std::vector<std::size_t> positions(end - begin);
    std::iota(positions.begin(), positions.end(), begin);
    // Partial Fisher-Yates: the first per_segment slots are the draw.
    for (std::size_t k = 0; k < per_segment; ++k) {
      std::swap(positions[k], positions[k + rng.below(positions.size() - k)]);
      chosen[positions[k]] = true;
    }
  }
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    if (chosen[k]) {
      split.test.push_back(corpus[k]);
      split.test_indices.push_back(k);
    } else {
      split.remainder.push_back(corpus[k]);
    }
  }
  return split;
}

}  // namespace pmine
