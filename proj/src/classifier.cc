#include "pmine/classifier.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "pmine/errors.h"

namespace pmine {
namespace {

double min_max_ratio(std::size_t a, std::size_t b) {
  if (a == 0 && b == 0) return 1.0;
  return static_cast<double>(std::min(a, b)) / static_cast<double>(std::max(a, b));
}

double jaccard(std::span<const std::string_view> a, std::span<const std::string_view> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double profile_coverage(std::span<const std::span<const Translation>> lookups,
                        const std::unordered_set<std::string_view>& targets) {
  if (lookups.empty()) return 0.0;
  std::size_t covered = 0;
  for (const auto& translations : lookups) {
    for (const auto& t : translations) {
      if (targets.contains(t.word)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(lookups.size());
}

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;
};

double f1_of(const Counts& c) {
  if (c.tp == 0) return 0.0;
  const double p = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double r = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  return 2.0 * p * r / (p + r);
}

}  // namespace

SentenceProfile FeatureExtractor::profile(const Sentence& sentence) const {
  SentenceProfile p;
  p.token_count = sentence.norm_tokens.size();
  for (const auto& token : sentence.norm_tokens) {
    p.tokens.insert(token);
    if (has_letter(token)) {
      p.forward.push_back(lex_->translations(token));
      p.reverse.push_back(lex_->reverse_translations(token));
    } else if (is_number_token(token)) {
      p.numbers.push_back(token);
    } else {
      ++p.punct_count;
    }
  }
  std::sort(p.numbers.begin(), p.numbers.end());
  p.numbers.erase(std::unique(p.numbers.begin(), p.numbers.end()), p.numbers.end());
  return p;
}

FeatureVector FeatureExtractor::features(const SentenceProfile& src, const SentenceProfile& tgt,
                                         double src_pos, double tgt_pos) const {
  FeatureVector f;
  f.values[0] = min_max_ratio(src.token_count, tgt.token_count);
  f.values[1] = profile_coverage(src.forward, tgt.tokens);
  f.values[2] = profile_coverage(tgt.reverse, src.tokens);
  f.values[3] = jaccard(src.numbers, tgt.numbers);
  f.values[4] = min_max_ratio(src.punct_count, tgt.punct_count);
  f.values[5] = 1.0 - std::abs(src_pos - tgt_pos);
  f.values[6] = 1.0;
  return f;
}

FeatureVector extract_features(const Sentence& src, const Sentence& tgt, double src_pos,
                               double tgt_pos, const Lexicon& lex) {
  const FeatureExtractor extractor(lex);
  return extractor.features(extractor.profile(src), extractor.profile(tgt), src_pos, tgt_pos);
}

double relative_position(std::size_t index, std::size_t length) {
  const std::size_t denom = length > 1 ? length - 1 : 1;
  return static_cast<double>(index) / static_cast<double>(denom);
}

double sigmoid(double margin) {
  if (margin >= 0) return 1.0 / (1.0 + std::exp(-margin));
  const double e = std::exp(margin);
  return e / (1.0 + e);
}

double confidence(const ClassifierModel& model, const FeatureVector& f) {
  if (f.schema_id != model.schema_id) {
    throw DataError("feature schema '" + f.schema_id + "' does not match model schema '" +
                    model.schema_id + "'");
  }
  double margin = model.bias;
  for (std::size_t k = 0; k < kFeatureCount; ++k) margin += model.weights[k] * f.values[k];
  return std::clamp(sigmoid(margin), std::numeric_limits<double>::min(), 1.0 - 0x1.0p-53);
}

std::vector<TrainingExample> make_training_examples(const SeedCorpus& corpus, const Lexicon& lex,
                                                    std::size_t negatives_per_positive, Rng& rng) {
  const std::size_t n = corpus.size();
  const FeatureExtractor extractor(lex);
  std::vector<SentenceProfile> src_profiles;
  std::vector<SentenceProfile> tgt_profiles;
  src_profiles.reserve(n);
  tgt_profiles.reserve(n);
  for (const auto& [src, tgt] : corpus.pairs) {
    src_profiles.push_back(extractor.profile(src));
    tgt_profiles.push_back(extractor.profile(tgt));
  }

  const std::size_t uniform_count = negatives_per_positive - negatives_per_positive / 2;
  std::vector<TrainingExample> examples;
  examples.reserve(n * (1 + negatives_per_positive));
  for (std::size_t i = 0; i < n; ++i) {
    const double pos_i = relative_position(i, n);
    examples.push_back({extractor.features(src_profiles[i], tgt_profiles[i], pos_i, pos_i), true});
    for (std::size_t k = 0; k < negatives_per_positive; ++k) {
      std::size_t j;
      if (k < uniform_count) {
        j = rng.below(n - 1);
        if (j >= i) ++j;
      } else {
        const auto offset = static_cast<std::int64_t>(rng.between(1, 3));
        const auto si = static_cast<std::int64_t>(i);
        const auto sn = static_cast<std::int64_t>(n);
        std::int64_t candidate = rng.chance(0.5) ? si + offset : si - offset;
        if (candidate < 0 || candidate >= sn) candidate = 2 * si - candidate;
        j = static_cast<std::size_t>(candidate);
      }
      examples.push_back({extractor.features(src_profiles[i], tgt_profiles[j], pos_i,
                                             relative_position(j, n)),
                          false});
    }
  }
  return examples;
}

void fit_logistic_sgd(std::span<const TrainingExample> examples, std::size_t epochs, Rng& rng,
                      ClassifierModel& model) {
  model.weights.assign(kFeatureCount, 0.0);
  model.bias = 0.0;
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t idx : order) {
      const auto& ex = examples[idx];
      const double rate = 0.1 / (1.0 + 0.01 * static_cast<double>(step));
      double margin = model.bias;
      for (std::size_t k = 0; k < kFeatureCount; ++k) {
        margin += model.weights[k] * ex.features.values[k];
      }
      const double gradient = sigmoid(margin) - (ex.positive ? 1.0 : 0.0);
      for (std::size_t k = 0; k < kFeatureCount; ++k) {
        model.weights[k] -= rate * gradient * ex.features.values[k];
      }
      model.bias -= rate * gradient;
      ++step;
    }
  }
}

TrainResult train(const SeedCorpus& corpus, const Lexicon& lex, const TrainOptions& options) {
  if (corpus.size() < 10) {
    throw DataError("seed corpus has " + std::to_string(corpus.size()) +
                    " pairs; at least 10 are required");
  }
  if (options.negatives_per_positive < 1) throw DataError("negatives per positive must be >= 1");
  if (options.epochs < 1) throw DataError("epochs must be >= 1");

  Rng rng(options.seed);
  auto examples = make_training_examples(corpus, lex, options.negatives_per_positive, rng);
  rng.shuffle(std::span<TrainingExample>(examples));
  const std::size_t heldout_count = std::max<std::size_t>(1, examples.size() / 10);
  const std::span<const TrainingExample> heldout(examples.data(), heldout_count);
  const std::span<const TrainingExample> training(examples.data() + heldout_count,
                                                   examples.size() - heldout_count);

  TrainResult result;
  ClassifierModel& model = result.model;
  model.direction = options.direction;
  model.trained_on_pairs = corpus.size();
  model.trained_on_seed = options.seed;
  fit_logistic_sgd(training, options.epochs, rng, model);

  std::vector<ScoredLabel> scored;
  scored.reserve(heldout.size());
  for (const auto& ex : heldout) scored.push_back({confidence(model, ex.features), ex.positive});

  double best_f1 = -1.0;
  for (int step = 1; step <= 19; ++step) {
    const double threshold = step / 20.0;
    Counts c;
    for (const auto& [score, positive] : scored) {
      const bool predicted = score >= threshold;
      if (predicted && positive) ++c.tp;
      if (predicted && !positive) ++c.fp;
      if (!predicted && positive) ++c.fn;
    }
    const double f1 = f1_of(c);
    if (f1 >= best_f1) {  // later (higher) thresholds win ties
      best_f1 = f1;
      model.default_threshold = threshold;
    }
  }
  model.default_penalty = 0.2;

  result.train_examples = training.size();
  result.heldout_examples = heldout.size();
  result.heldout_f1 = best_f1;
  result.heldout_auc = roc_auc(scored);
  if (result.heldout_f1 < 0.6) {
    result.warnings.push_back("held-out F1 " + std::to_string(result.heldout_f1) +
                              " is below 0.6; the seed corpus may be degenerate");
  }
  return result;
}

double roc_auc(std::span<const ScoredLabel> scored) {
  std::vector<ScoredLabel> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) { return a.score < b.score; });
  // Rank-sum formulation with average ranks for ties.
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  std::size_t k = 0;
  while (k < sorted.size()) {
    std::size_t end = k;
    while (end < sorted.size() && sorted[end].score == sorted[k].score) ++end;
    const double average_rank = (static_cast<double>(k + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t t = k; t < end; ++t) {
      if (sorted[t].positive) {
        positive_rank_sum += average_rank;
        ++positives;
      }
    }
    k = end;
  }
  const std::size_t negatives = sorted.size() - positives;
  if (positives == 0 || negatives == 0) return 0.5;
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

std::string model_to_json(const ClassifierModel& model) {
  nlohmann::ordered_json j;
  j["version"] = model.version;
  j["schema_id"] = model.schema_id;
  j["direction"] = {model.direction.first, model.direction.second};
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["default_threshold"] = model.default_threshold;
  j["default_penalty"] = model.default_penalty;
  j["trained_on"] = {{"pairs", model.trained_on_pairs}, {"seed", model.trained_on_seed}};
  return j.dump(2) + "\n";
}

ClassifierModel model_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  ClassifierModel model;
  try {
    model.version = j.at("version").get<int>();
    if (model.version != kModelVersion) {
      throw DataError("unsupported model version " + std::to_string(model.version));
    }
    model.schema_id = j.at("schema_id").get<std::string>();
    const auto& direction = j.at("direction");
    if (!direction.is_array() || direction.size() != 2) {
      throw DataError("model direction must be a [src, tgt] pair");
    }
    model.direction = {direction[0].get<std::string>(), direction[1].get<std::string>()};
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.default_threshold = j.at("default_threshold").get<double>();
    model.default_penalty = j.at("default_penalty").get<double>();
    if (j.contains("trained_on")) {
      model.trained_on_pairs = j["trained_on"].value("pairs", std::size_t{0});
      model.trained_on_seed = j["trained_on"].value("seed", std::uint64_t{0});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad model file: ") + e.what());
  }
  if (model.schema_id != kSchemaId) {
    throw DataError("unknown feature schema '" + model.schema_id + "'");
  }
  if (model.weights.size() != kFeatureCount) {
    throw DataError("model has " + std::to_string(model.weights.size()) + " weights; expected " +
                    std::to_string(kFeatureCount));
  }
  if (!(model.default_threshold >= 0.0 && model.default_threshold <= 1.0)) {
    throw DataError("model default_threshold outside [0,1]");
  }
  if (!(model.default_penalty >= 0.0)) throw DataError("model default_penalty must be >= 0");
  return model;
}

void save_model(const ClassifierModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << model_to_json(model);
  if (!out) throw SinkError("cannot write model " + path.string());
}

ClassifierModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace pmine
