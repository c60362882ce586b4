#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pmine/aligner.h"
#include "pmine/classifier.h"
#include "pmine/corpus.h"
#include "pmine/lexicon.h"

namespace pmine {

// Development documents with their true (source index, target index) pairs.
struct GoldSet {
  std::vector<DocumentPair> docs;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> gold;  // parallel to docs
};

// Document pair JSONL plus "gold": [[i, j], ...]. Throws DataError naming the
// line for out-of-bounds indices.
GoldSet load_gold_set(const std::filesystem::path& path);

using AlignmentKey = std::tuple<std::size_t, std::size_t, std::size_t>;  // (doc, i, j)

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Both sets empty gives (1, 1, 1); an empty prediction against non-empty gold
// gives precision 0.
PrecisionRecall f_measure(const std::set<AlignmentKey>& predicted,
                          const std::set<AlignmentKey>& gold);

struct TracePoint {
  MiningParams params;
  PrecisionRecall score;
};

struct TuneResult {
  MiningParams best;
  PrecisionRecall score;
  std::vector<TracePoint> trace;  // penalty-major, then threshold, in grid order
};

std::vector<double> default_threshold_grid();  // 0.05, 0.10, ..., 0.95
std::vector<double> default_penalty_grid();    // 0.05, 0.1, 0.2, 0.4, 0.8, 1.6

struct TuneOptions {
  std::vector<double> thresholds = default_threshold_grid();
  std::vector<double> penalties = default_penalty_grid();
  Engine engine = Engine::kSequential;
  std::size_t workers = 1;      // grid points evaluated concurrently
  bool reuse_matrices = true;   // false recomputes matrices per grid point
};

// Grid search over (threshold, penalty) maximizing F1 against gold. Ties go
// to the higher threshold, then the lower penalty. Throws DataError on an
// empty grid or empty dev set.
TuneResult tune(const ClassifierModel& model, const Lexicon& lex, const GoldSet& dev,
                const TuneOptions& options = {});

// Same search over precomputed matrices (one per gold document).
TuneResult tune_on_matrices(const std::vector<SimilarityMatrix>& matrices,
                            const std::vector<std::set<std::pair<std::size_t, std::size_t>>>& gold,
                            const TuneOptions& options = {});

// Gold keys and predictions for one parameter setting.
std::set<AlignmentKey> gold_keys(const GoldSet& dev);
PrecisionRecall evaluate_params(const std::vector<SimilarityMatrix>& matrices,
                                const std::vector<std::set<std::pair<std::size_t, std::size_t>>>& gold,
                                const MiningParams& params, Engine engine = Engine::kSequential);

std::string tune_result_to_json(const TuneResult& result);

}  // namespace pmine
