#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmine/classifier.h"
#include "pmine/corpus.h"
#include "pmine/lexicon.h"

namespace pmine {

// Matrices above this many cells are refused with ResourceError.
inline constexpr std::size_t kMaxMatrixCells = 25'000'000;

// n x m grid of classifier confidences in [0, 1], row-major.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws DataError on ragged rows, empty input or values outside [0, 1].
  static SimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  double& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const std::vector<double>& cells() const { return cells_; }

  bool operator==(const SimilarityMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
};

enum class MoveKind : std::uint8_t {
  kDiag,        // aligns source i with target j; lattice step (+1, +1)
  kSkipSource,  // source i left unaligned; step (+1, 0)
  kSkipTarget,  // target j left unaligned; step (0, +1)
};

struct Move {
  MoveKind kind;
  std::size_t i = 0;  // source sentence index (kDiag, kSkipSource)
  std::size_t j = 0;  // target sentence index (kDiag, kSkipTarget)

  bool operator==(const Move&) const = default;
};

// Monotone lattice path from (0, 0) to (n, m).
struct AlignmentPath {
  std::vector<Move> moves;
  double total_cost = 0.0;

  bool operator==(const AlignmentPath&) const = default;
};

struct MiningParams {
  double threshold = 0.5;
  double penalty = 0.2;

  // Throws DataError unless threshold is in [0, 1] and penalty >= 0.
  void validate() const;
};

enum class Direction : std::uint8_t { kForward, kBackward };

const char* direction_name(Direction d);

struct MinedPair {
  Sentence src;
  Sentence tgt;
  double confidence = 0.0;
  std::string doc_id;
  Direction direction = Direction::kForward;
  std::size_t src_index = 0;
  std::size_t tgt_index = 0;
};

// cells[i][j] = confidence of (source i, target j) with relative positions.
// Throws DataError when the model direction differs from the pair's
// languages or a side is empty, ResourceError when n * m is too large.
SimilarityMatrix build_similarity_matrix(const DocumentPair& pair, const ClassifierModel& model,
                                         const Lexicon& lex);

// Minimum-cost global alignment:
//   C[i][j] = min(C[i-1][j-1] + 1 - S[i-1][j-1], C[i-1][j] + penalty, C[i][j-1] + penalty)
// with C[0][0] = 0 and gap-only borders. Ties resolve diagonal first, then
// skip-source, then skip-target.
AlignmentPath nw_align(const SimilarityMatrix& s, double penalty);

// Same result as nw_align, bit for bit. The cost matrix is filled in
// anti-diagonal order over square tiles (tiles on one anti-diagonal are
// independent); each diagonal is split across `workers` threads with a
// barrier between diagonals.
AlignmentPath nw_align_wavefront(const SimilarityMatrix& s, double penalty, std::size_t workers);

// Uniform-cost best-first search over the same lattice and costs. Equal in
// cost to nw_align; the path may differ among ties.
AlignmentPath search_align(const SimilarityMatrix& s, double penalty);

// Replays a path, checking it is monotone and ends at (n, m). Returns the
// recomputed cost; throws DataError on an invalid path.
double replay_path_cost(const AlignmentPath& path, const SimilarityMatrix& s, double penalty);

// One MinedPair per diagonal move whose confidence is >= threshold, in path
// order. Tags pairs with Direction::kForward.
std::vector<MinedPair> extract_pairs(const AlignmentPath& path, const SimilarityMatrix& s,
                                     const DocumentPair& pair, const MiningParams& params);

enum class Engine : std::uint8_t { kSequential, kWavefront, kSearch };

const char* engine_name(Engine e);
Engine parse_engine(const std::string& name);  // throws DataError

AlignmentPath align(const SimilarityMatrix& s, double penalty, Engine engine,
                    std::size_t wavefront_workers = 1);

// Debug matrix format: one row per line, tab-separated decimals in [0, 1].
SimilarityMatrix read_matrix_tsv(std::istream& in);
// `D i j step_cost`, `GS i`, `GT j`, then `TOTAL cost`; 6 decimals.
void write_path(std::ostream& out, const AlignmentPath& path, const SimilarityMatrix& s);

}  // namespace pmine
