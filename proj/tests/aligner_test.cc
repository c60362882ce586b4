#include "pmine/aligner.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "pmine/errors.h"
#include "pmine/random.h"
#include "pmine/synthetic.h"

namespace pmine {
namespace {

SimilarityMatrix random_matrix(Rng& rng, std::size_t n, std::size_t m, bool quantized) {
  SimilarityMatrix s(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      s.at(i, j) = quantized ? static_cast<double>(rng.below(5)) / 4.0 : rng.uniform();
    }
  }
  return s;
}

// Exhaustive enumeration of every monotone lattice path.
double brute_force_min_cost(const SimilarityMatrix& s, double penalty, std::size_t i = 0,
                            std::size_t j = 0) {
  const std::size_t n = s.rows();
  const std::size_t m = s.cols();
  if (i == n && j == m) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (i < n && j < m) best = std::min(best, 1.0 - s.at(i, j) + brute_force_min_cost(s, penalty, i + 1, j + 1));
  if (i < n) best = std::min(best, penalty + brute_force_min_cost(s, penalty, i + 1, j));
  if (j < m) best = std::min(best, penalty + brute_force_min_cost(s, penalty, i, j + 1));
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> diagonal_cells(const AlignmentPath& path) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (const auto& move : path.moves) {
    if (move.kind == MoveKind::kDiag) cells.emplace_back(move.i, move.j);
  }
  return cells;
}

TEST(NwAlign, OneByOneMatchIsDiagonal) {
  const auto s = SimilarityMatrix::from_rows({{0.9}});
  const auto path = nw_align(s, 0.2);
  ASSERT_EQ(path.moves.size(), 1u);
  EXPECT_EQ(path.moves[0], (Move{MoveKind::kDiag, 0, 0}));
  EXPECT_NEAR(path.total_cost, 0.1, 1e-12);
}

TEST(NwAlign, OneByOneMismatchSkipsBoth) {
  // 1 - 0.1 = 0.9 > 2 * 0.2: both sentences are skipped. Both gap orders
  // cost the same; the final cell prefers skip-source.
  const auto path = nw_align(SimilarityMatrix::from_rows({{0.1}}), 0.2);
  ASSERT_EQ(path.moves.size(), 2u);
  EXPECT_EQ(path.moves[0].kind, MoveKind::kSkipTarget);
  EXPECT_EQ(path.moves[1].kind, MoveKind::kSkipSource);
  EXPECT_NEAR(path.total_cost, 0.4, 1e-12);
}

TEST(NwAlign, IdentityMatrixAlignsDiagonal) {
  SimilarityMatrix s(3, 3);
  for (std::size_t k = 0; k < 3; ++k) s.at(k, k) = 1.0;
  const auto path = nw_align(s, 0.2);
  EXPECT_EQ(diagonal_cells(path), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_DOUBLE_EQ(path.total_cost, 0.0);
}

TEST(NwAlign, SkipsInsertedTargetSentence) {
  const auto s = SimilarityMatrix::from_rows({{0.9, 0.1, 0.1}, {0.1, 0.1, 0.9}});
  const auto path = nw_align(s, 0.2);
  EXPECT_EQ(diagonal_cells(path), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 2}}));
  EXPECT_NEAR(path.total_cost, 0.1 + 0.2 + 0.1, 1e-12);
}

TEST(NwAlign, TieBreaksDiagonalFirst) {
  // All three moves from (0,0) to (1,1) cost 1.0 with penalty 0.5.
  const auto path = nw_align(SimilarityMatrix::from_rows({{0.0}}), 0.5);
  ASSERT_EQ(path.moves.size(), 1u);
  EXPECT_EQ(path.moves[0].kind, MoveKind::kDiag);
}

TEST(NwAlign, MatchesBruteForceOnRandomSmallMatrices) {
  Rng rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 4));
    const auto m = static_cast<std::size_t>(rng.between(1, 4));
    const auto s = random_matrix(rng, n, m, trial % 2 == 0);
    const double penalty = static_cast<double>(rng.below(9)) / 8.0;
    const auto path = nw_align(s, penalty);
    EXPECT_NEAR(path.total_cost, brute_force_min_cost(s, penalty), 1e-9);
    EXPECT_NEAR(replay_path_cost(path, s, penalty), path.total_cost, 1e-9);
  }
}

TEST(NwAlign, PathsAreValidAndReplayToTheirCost) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 30));
    const auto m = static_cast<std::size_t>(rng.between(1, 30));
    const auto s = random_matrix(rng, n, m, false);
    const double penalty = rng.uniform();
    const auto path = nw_align(s, penalty);
    EXPECT_NEAR(replay_path_cost(path, s, penalty), path.total_cost, 1e-9);
  }
}

TEST(NwAlign, ZeroPenaltyCostIsZero) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_matrix(rng, rng.between(1, 12), rng.between(1, 12), false);
    EXPECT_DOUBLE_EQ(nw_align(s, 0.0).total_cost, 0.0);
  }
}

TEST(NwAlign, CostNeverExceedsAllGapPath) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 15));
    const auto m = static_cast<std::size_t>(rng.between(1, 15));
    const double penalty = rng.uniform();
    EXPECT_LE(nw_align(random_matrix(rng, n, m, false), penalty).total_cost,
              penalty * static_cast<double>(n + m) + 1e-12);
  }
}

TEST(ReplayPathCost, RejectsInvalidPaths) {
  const auto s = SimilarityMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  AlignmentPath incomplete;
  incomplete.moves = {{MoveKind::kDiag, 0, 0}};
  EXPECT_THROW(replay_path_cost(incomplete, s, 0.2), DataError);
  AlignmentPath jumping;
  jumping.moves = {{MoveKind::kDiag, 0, 0}, {MoveKind::kDiag, 1, 0}, {MoveKind::kSkipTarget, 0, 1}};
  EXPECT_THROW(replay_path_cost(jumping, s, 0.2), DataError);
}

TEST(Wavefront, BitIdenticalToSequential) {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 120));
    const auto m = static_cast<std::size_t>(rng.between(1, 120));
    const auto s = random_matrix(rng, n, m, trial % 3 == 0);
    const double penalty = static_cast<double>(rng.below(10)) / 10.0;
    const auto expected = nw_align(s, penalty);
    for (std::size_t workers : {1u, 2u, 4u, 8u}) {
      EXPECT_EQ(nw_align_wavefront(s, penalty, workers), expected) << n << "x" << m << " w" << workers;
    }
  }
}

TEST(Search, SameCostAsDynamicProgramming) {
  Rng rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_matrix(rng, 10, 10, trial % 2 == 0);
    const double penalty = static_cast<double>(rng.below(10)) / 10.0;
    const auto path = search_align(s, penalty);
    EXPECT_NEAR(path.total_cost, nw_align(s, penalty).total_cost, 1e-9);
    EXPECT_NEAR(replay_path_cost(path, s, penalty), path.total_cost, 1e-9);
  }
}

TEST(Search, ConstantMatricesFullOfTies) {
  for (double value : {0.0, 0.5, 0.6, 1.0}) {
    SimilarityMatrix s(7, 5, value);
    for (double penalty : {0.0, 0.25, 0.5}) {
      EXPECT_NEAR(search_align(s, penalty).total_cost, nw_align(s, penalty).total_cost, 1e-9);
    }
  }
}

TEST(Align, DispatchesEngines) {
  Rng rng(9);
  const auto s = random_matrix(rng, 20, 25, false);
  const auto expected = nw_align(s, 0.3);
  EXPECT_EQ(align(s, 0.3, Engine::kSequential), expected);
  EXPECT_EQ(align(s, 0.3, Engine::kWavefront, 3), expected);
  EXPECT_NEAR(align(s, 0.3, Engine::kSearch).total_cost, expected.total_cost, 1e-9);
  EXPECT_EQ(parse_engine("wavefront"), Engine::kWavefront);
  EXPECT_THROW(parse_engine("quantum"), DataError);
}

DocumentPair sample_pair(std::size_t n, std::size_t m) {
  DocumentPair pair;
  pair.id = "d";
  pair.source.lang = "pl";
  pair.target.lang = "en";
  for (std::size_t i = 0; i < n; ++i) pair.source.sentences.push_back(*make_sentence("zdanie " + std::to_string(i)));
  for (std::size_t j = 0; j < m; ++j) pair.target.sentences.push_back(*make_sentence("sentence " + std::to_string(j)));
  return pair;
}

TEST(ExtractPairs, ThresholdIsMonotone) {
  Rng rng(10);
  const auto pair = sample_pair(12, 9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_matrix(rng, 12, 9, false);
    const auto path = nw_align(s, 0.3);
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (int step = 0; step <= 20; ++step) {
      const auto pairs = extract_pairs(path, s, pair, {step / 20.0, 0.3});
      EXPECT_LE(pairs.size(), previous);
      previous = pairs.size();
      for (const auto& p : pairs) EXPECT_GE(p.confidence, step / 20.0);
    }
  }
}

TEST(ExtractPairs, OneByOneThresholds) {
  const auto pair = sample_pair(1, 1);
  const auto s = SimilarityMatrix::from_rows({{0.9}});
  const auto path = nw_align(s, 0.2);
  const auto kept = extract_pairs(path, s, pair, {0.5, 0.2});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_DOUBLE_EQ(kept[0].confidence, 0.9);
  EXPECT_EQ(kept[0].src.raw, "zdanie 0");
  EXPECT_TRUE(extract_pairs(path, s, pair, {0.95, 0.2}).empty());
}

TEST(SimilarityMatrix, RejectsOversizedDocuments) {
  const auto pair = sample_pair(5001, 5001);
  ClassifierModel model;
  model.direction = {"pl", "en"};
  EXPECT_THROW(build_similarity_matrix(pair, model, Lexicon{}), ResourceError);
}

TEST(SimilarityMatrix, ShapeRangeAndPerCellConfidence) {
  const auto lp = synth::make_language_pair(120, 80, 6);
  Rng rng(6);
  DocumentPair pair;
  pair.id = "x";
  pair.source.lang = "pl";
  pair.target.lang = "en";
  for (int k = 0; k < 6; ++k) pair.source.sentences.push_back(*make_sentence(synth::source_sentence(lp, rng)));
  for (int k = 0; k < 4; ++k) pair.target.sentences.push_back(*make_sentence(synth::target_sentence(lp, rng)));
  ClassifierModel model;
  model.direction = {"pl", "en"};
  model.weights = {1.0, 2.0, 2.0, 0.5, 0.5, 1.0, -3.0};
  const auto s = build_similarity_matrix(pair, model, lp.lexicon);
  ASSERT_EQ(s.rows(), 6u);
  ASSERT_EQ(s.cols(), 4u);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto f = extract_features(pair.source.sentences[i], pair.target.sentences[j],
                                      relative_position(i, 6), relative_position(j, 4), lp.lexicon);
      EXPECT_DOUBLE_EQ(s.at(i, j), confidence(model, f));
      EXPECT_GT(s.at(i, j), 0.0);
      EXPECT_LT(s.at(i, j), 1.0);
    }
  }
  model.direction = {"de", "en"};
  EXPECT_THROW(build_similarity_matrix(pair, model, lp.lexicon), DataError);
}

TEST(MatrixFile, ParsesAndWritesPath) {
  std::istringstream in("0.9\t0.1\n0.1\t0.8\n");
  const auto s = read_matrix_tsv(in);
  ASSERT_EQ(s, SimilarityMatrix::from_rows({{0.9, 0.1}, {0.1, 0.8}}));
  std::ostringstream out;
  write_path(out, nw_align(s, 0.2), s);
  EXPECT_EQ(out.str(), "D 0 0 0.100000\nD 1 1 0.200000\nTOTAL 0.300000\n");

  std::istringstream ragged("0.1\t0.2\n0.3\n");
  EXPECT_THROW(read_matrix_tsv(ragged), DataError);
  std::istringstream out_of_range("1.5\n");
  EXPECT_THROW(read_matrix_tsv(out_of_range), DataError);
}

}  // namespace
}  // namespace pmine
