#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pmine/corpus.h"
#include "pmine/lexicon.h"
#include "pmine/random.h"

namespace pmine {

inline constexpr std::size_t kFeatureCount = 7;
inline constexpr std::string_view kSchemaId = "pmine-f7-v1";
inline constexpr int kModelVersion = 1;

// Feature order:
//   0 length ratio        min(|s|,|t|) / max(|s|,|t|) over token counts
//   1 coverage s->t       lexicon coverage of source tokens in the target
//   2 coverage t->s       reverse-lexicon coverage of target tokens in the source
//   3 number overlap      Jaccard of the number-token sets (1 when both empty)
//   4 punctuation ratio   min/max of punctuation counts (1 when both zero)
//   5 position proximity  1 - |src_pos - tgt_pos|
//   6 constant            1
struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::string schema_id{kSchemaId};
};

struct ClassifierModel {
  int version = kModelVersion;
  std::string schema_id{kSchemaId};
  std::vector<double> weights = std::vector<double>(kFeatureCount, 0.0);
  double bias = 0.0;
  std::pair<std::string, std::string> direction;  // (source lang, target lang)
  double default_threshold = 0.5;
  double default_penalty = 0.2;
  std::size_t trained_on_pairs = 0;
  std::uint64_t trained_on_seed = 0;
};

// Per-sentence data the features need, computed once per sentence so that a
// similarity matrix costs O(n + m) lookups plus O(n * m) cheap set probes.
struct SentenceProfile {
  std::size_t token_count = 0;
  std::size_t punct_count = 0;
  std::unordered_set<std::string_view> tokens;       // normalized
  std::vector<std::string_view> numbers;              // sorted, unique
  std::vector<std::span<const Translation>> forward;  // per alphabetic token
  std::vector<std::span<const Translation>> reverse;  // per alphabetic token
};

// Binds a lexicon. Profiles hold views into the sentence and the lexicon,
// both of which must outlive them.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const Lexicon& lex) : lex_(&lex) {}

  SentenceProfile profile(const Sentence& sentence) const;
  FeatureVector features(const SentenceProfile& src, const SentenceProfile& tgt, double src_pos,
                         double tgt_pos) const;

 private:
  const Lexicon* lex_;
};

FeatureVector extract_features(const Sentence& src, const Sentence& tgt, double src_pos,
                               double tgt_pos, const Lexicon& lex);

// Relative position of sentence `index` in a document of `length` sentences:
// index / max(1, length - 1).
double relative_position(std::size_t index, std::size_t length);

double sigmoid(double margin);

// sigmoid(weights . values + bias), kept strictly inside (0, 1).
// Throws DataError when the schema ids differ.
double confidence(const ClassifierModel& model, const FeatureVector& f);

struct TrainingExample {
  FeatureVector features;
  bool positive = false;
};

struct TrainOptions {
  std::size_t negatives_per_positive = 2;
  std::size_t epochs = 20;
  std::uint64_t seed = 42;
  std::pair<std::string, std::string> direction{"src", "tgt"};
};

struct TrainResult {
  ClassifierModel model;
  std::size_t train_examples = 0;
  std::size_t heldout_examples = 0;
  double heldout_f1 = 0.0;
  double heldout_auc = 0.0;
  std::vector<std::string> warnings;
};

// Positives are the aligned pairs; for each, `negatives_per_positive`
// mismatches are drawn: the first ceil(k/2) uniformly, the rest 1-3
// positions away from the positive.
std::vector<TrainingExample> make_training_examples(const SeedCorpus& corpus, const Lexicon& lex,
                                                    std::size_t negatives_per_positive, Rng& rng);

// Logistic-loss SGD, learning rate 0.1 / (1 + 0.01 * step), examples
// reshuffled every epoch. Returns weights and bias in `model`.
void fit_logistic_sgd(std::span<const TrainingExample> examples, std::size_t epochs, Rng& rng,
                      ClassifierModel& model);

// Full training run: examples, 10% held-out split, SGD on the rest, and the
// default threshold picked from {0.05, ..., 0.95} by held-out F1.
// Throws DataError for corpora smaller than 10 pairs.
TrainResult train(const SeedCorpus& corpus, const Lexicon& lex, const TrainOptions& options);

struct ScoredLabel {
  double score;
  bool positive;
};

// Area under the ROC curve; tied scores count one half. 0.5 when either
// class is absent.
double roc_auc(std::span<const ScoredLabel> scored);

std::string model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(std::string_view json_text);
void save_model(const ClassifierModel& model, const std::filesystem::path& path);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace pmine
