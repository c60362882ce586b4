#include "pmine/tuner.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <fstream>
#include <iostream>
#include <thread>

#include "json.hpp"
#include "pmine/errors.h"

namespace pmine {
namespace {

using GoldPairs = std::vector<std::set<std::pair<std::size_t, std::size_t>>>;

std::set<AlignmentKey> keys_of(const GoldPairs& gold) {
  std::set<AlignmentKey> keys;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    for (const auto& [i, j] : gold[d]) keys.emplace(d, i, j);
  }
  return keys;
}

// Predictions for every threshold at one penalty; paths are computed once.
std::vector<PrecisionRecall> score_thresholds(const std::vector<SimilarityMatrix>& matrices,
                                              const std::set<AlignmentKey>& gold,
                                              const std::vector<double>& thresholds,
                                              double penalty, Engine engine) {
  std::vector<AlignmentPath> paths;
  paths.reserve(matrices.size());
  for (const auto& s : matrices) paths.push_back(align(s, penalty, engine));
  std::vector<PrecisionRecall> scores;
  scores.reserve(thresholds.size());
  for (const double threshold : thresholds) {
    std::set<AlignmentKey> predicted;
    for (std::size_t d = 0; d < matrices.size(); ++d) {
      for (const Move& move : paths[d].moves) {
        if (move.kind == MoveKind::kDiag && matrices[d].at(move.i, move.j) >= threshold) {
          predicted.emplace(d, move.i, move.j);
        }
      }
    }
    scores.push_back(f_measure(predicted, gold));
  }
  return scores;
}

bool better(const TracePoint& a, const TracePoint& b) {
  if (a.score.f1 != b.score.f1) return a.score.f1 > b.score.f1;
  if (a.params.threshold != b.params.threshold) return a.params.threshold > b.params.threshold;
  return a.params.penalty < b.params.penalty;
}

void validate_grid(const TuneOptions& options) {
  if (options.thresholds.empty() || options.penalties.empty()) {
    throw DataError("tuning grid is empty");
  }
  for (const double t : options.thresholds) MiningParams{t, 0.0}.validate();
  for (const double p : options.penalties) MiningParams{0.0, p}.validate();
}

// Runs `evaluate(penalty_index)` for every penalty, spreading penalties
// over up to `workers` threads. Each call writes only its own slots.
template <typename Fn>
void for_each_penalty(std::size_t count, std::size_t workers, Fn evaluate) {
  workers = std::clamp<std::size_t>(workers, 1, count);
  if (workers == 1) {
    for (std::size_t p = 0; p < count; ++p) evaluate(p);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto loop = [&] {
    for (std::size_t p = next++; p < count; p = next++) {
      try {
        evaluate(p);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(loop);
    loop();
  }
  if (failure) std::rethrow_exception(failure);
}

TuneResult assemble(const TuneOptions& options,
                    const std::vector<std::vector<PrecisionRecall>>& by_penalty) {
  TuneResult result;
  for (std::size_t p = 0; p < options.penalties.size(); ++p) {
    for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
      result.trace.push_back(
          {MiningParams{options.thresholds[t], options.penalties[p]}, by_penalty[p][t]});
    }
  }
  const TracePoint* best = &result.trace.front();
  for (const auto& point : result.trace) {
    if (better(point, *best)) best = &point;
  }
  result.best = best->params;
  result.score = best->score;
  return result;
}

}  // namespace

PrecisionRecall f_measure(const std::set<AlignmentKey>& predicted,
                          const std::set<AlignmentKey>& gold) {
  if (predicted.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  std::size_t hits = 0;
  for (const auto& key : predicted) hits += gold.count(key);
  PrecisionRecall pr;
  pr.precision = predicted.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(predicted.size());
  pr.recall = gold.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(gold.size());
  pr.f1 = pr.precision + pr.recall == 0.0
              ? 0.0
              : 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall);
  return pr;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int step = 1; step <= 19; ++step) grid.push_back(step / 20.0);
  return grid;
}

std::vector<double> default_penalty_grid() { return {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}; }

std::set<AlignmentKey> gold_keys(const GoldSet& dev) { return keys_of(dev.gold); }

PrecisionRecall evaluate_params(const std::vector<SimilarityMatrix>& matrices,
                                const GoldPairs& gold, const MiningParams& params,
                                Engine engine) {
  params.validate();
  return score_thresholds(matrices, keys_of(gold), {params.threshold}, params.penalty, engine)
      .front();
}

TuneResult tune_on_matrices(const std::vector<SimilarityMatrix>& matrices, const GoldPairs& gold,
                            const TuneOptions& options) {
  validate_grid(options);
  if (matrices.empty()) throw DataError("development set is empty");
  if (matrices.size() != gold.size()) throw DataError("matrix and gold counts differ");
  const auto keys = keys_of(gold);
  std::vector<std::vector<PrecisionRecall>> by_penalty(options.penalties.size());
  for_each_penalty(options.penalties.size(), options.workers, [&](std::size_t p) {
    by_penalty[p] =
        score_thresholds(matrices, keys, options.thresholds, options.penalties[p], options.engine);
  });
  return assemble(options, by_penalty);
}

TuneResult tune(const ClassifierModel& model, const Lexicon& lex, const GoldSet& dev,
                const TuneOptions& options) {
  validate_grid(options);
  if (dev.docs.empty()) throw DataError("development set is empty");
  auto build_all = [&] {
    std::vector<SimilarityMatrix> matrices;
    matrices.reserve(dev.docs.size());
    for (const auto& pair : dev.docs) matrices.push_back(build_similarity_matrix(pair, model, lex));
    return matrices;
  };
  if (options.reuse_matrices) return tune_on_matrices(build_all(), dev.gold, options);

  const auto keys = keys_of(dev.gold);
  std::vector<std::vector<PrecisionRecall>> by_penalty(options.penalties.size());
  for_each_penalty(options.penalties.size(), options.workers, [&](std::size_t p) {
    for (const double threshold : options.thresholds) {
      const auto matrices = build_all();
      by_penalty[p].push_back(
          score_thresholds(matrices, keys, {threshold}, options.penalties[p], options.engine)
              .front());
    }
  });
  return assemble(options, by_penalty);
}

GoldSet load_gold_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold set " + path.string());
  GoldSet set;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto pair = parse_document_pair(line, line_number);
    const auto obj = nlohmann::json::parse(line);
    const auto it = obj.find("gold");
    if (it == obj.end()) {
      throw DataError("line " + std::to_string(line_number) + ": missing field 'gold'");
    }
    if (!pair) {
      std::cerr << "warning: line " << line_number << ": empty document, gold entry skipped\n";
      continue;
    }
    std::set<std::pair<std::size_t, std::size_t>> gold;
    if (!it->is_array()) {
      throw DataError("line " + std::to_string(line_number) + ": field 'gold' must be a list");
    }
    for (const auto& entry : *it) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() ||
          !entry[1].is_number_unsigned()) {
        throw DataError("line " + std::to_string(line_number) +
                        ": gold entries must be [i, j] pairs of non-negative integers");
      }
      const auto i = entry[0].get<std::size_t>();
      const auto j = entry[1].get<std::size_t>();
      if (i >= pair->source.size() || j >= pair->target.size()) {
        throw DataError("line " + std::to_string(line_number) + ": gold pair [" +
                        std::to_string(i) + ", " + std::to_string(j) + "] out of bounds for " +
                        std::to_string(pair->source.size()) + "x" +
                        std::to_string(pair->target.size()) + " document");
      }
      gold.emplace(i, j);
    }
    set.docs.push_back(std::move(*pair));
    set.gold.push_back(std::move(gold));
  }
  return set;
}

std::string tune_result_to_json(const TuneResult& result) {
  nlohmann::ordered_json j;
  j["best"] = {{"threshold", result.best.threshold}, {"penalty", result.best.penalty}};
  j["precision"] = result.score.precision;
  j["recall"] = result.score.recall;
  j["f1"] = result.score.f1;
  auto& trace = j["trace"] = nlohmann::ordered_json::array();
  for (const auto& point : result.trace) {
    trace.push_back({{"threshold", point.params.threshold},
                     {"penalty", point.params.penalty},
                     {"precision", point.score.precision},
                     {"recall", point.score.recall},
                     {"f1", point.score.f1}});
  }
  return j.dump(2) + "\n";
}

}  // namespace pmine
