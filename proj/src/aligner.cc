#include "pmine/aligner.h"

#include <algorithm>
#include <barrier>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <thread>

#include "pmine/errors.h"

namespace pmine {
namespace {

void check_size(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DataError("similarity matrix must be at least 1x1");
  if (rows > kMaxMatrixCells / cols) {
    throw ResourceError("similarity matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds " + std::to_string(kMaxMatrixCells) + " cells");
  }
}

void check_penalty(double penalty) {
  if (!(penalty >= 0.0) || penalty == std::numeric_limits<double>::infinity()) {
    throw DataError("penalty must be finite and >= 0");
  }
}

// (n+1) x (m+1) cost lattice with the move chosen into each point.
class Lattice {
 public:
  Lattice(const SimilarityMatrix& s, double penalty)
      : s_(s),
        penalty_(penalty),
        stride_(s.cols() + 1),
        cost_((s.rows() + 1) * stride_),
        choice_((s.rows() + 1) * stride_) {
    for (std::size_t i = 1; i <= s.rows(); ++i) {
      cost_[i * stride_] = cost_[(i - 1) * stride_] + penalty;
      choice_[i * stride_] = MoveKind::kSkipSource;
    }
    for (std::size_t j = 1; j <= s.cols(); ++j) {
      cost_[j] = cost_[j - 1] + penalty;
      choice_[j] = MoveKind::kSkipTarget;
    }
  }

  // Requires (i-1, j-1), (i-1, j) and (i, j-1) to be filled.
  void fill(std::size_t i, std::size_t j) {
    const std::size_t here = i * stride_ + j;
    double best = cost_[here - stride_ - 1] + (1.0 - s_.at(i - 1, j - 1));
    MoveKind move = MoveKind::kDiag;
    const double down = cost_[here - stride_] + penalty_;
    if (down < best) {
      best = down;
      move = MoveKind::kSkipSource;
    }
    const double right = cost_[here - 1] + penalty_;
    if (right < best) {
      best = right;
      move = MoveKind::kSkipTarget;
    }
    cost_[here] = best;
    choice_[here] = move;
  }

  void fill_block(std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                  std::size_t col_end) {
    for (std::size_t i = row_begin; i < row_end; ++i) {
      for (std::size_t j = col_begin; j < col_end; ++j) fill(i, j);
    }
  }

  AlignmentPath trace() const {
    AlignmentPath path;
    std::size_t i = s_.rows();
    std::size_t j = s_.cols();
    path.total_cost = cost_[i * stride_ + j];
    while (i > 0 || j > 0) {
      const MoveKind move = choice_[i * stride_ + j];
      switch (move) {
        case MoveKind::kDiag:
          --i;
          --j;
          path.moves.push_back({move, i, j});
          break;
        case MoveKind::kSkipSource:
          --i;
          path.moves.push_back({move, i, 0});
          break;
        case MoveKind::kSkipTarget:
          --j;
          path.moves.push_back({move, 0, j});
          break;
      }
    }
    std::reverse(path.moves.begin(), path.moves.end());
    return path;
  }

 private:
  const SimilarityMatrix& s_;
  double penalty_;
  std::size_t stride_;
  std::vector<double> cost_;
  std::vector<MoveKind> choice_;
};

std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

}  // namespace

SimilarityMatrix::SimilarityMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  check_size(rows, cols);
  cells_.assign(rows * cols, fill);
}

SimilarityMatrix SimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DataError("similarity matrix must be at least 1x1");
  SimilarityMatrix s(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != s.cols()) {
      throw DataError("matrix row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " columns; expected " +
                      std::to_string(s.cols()));
    }
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const double v = rows[i][j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DataError("matrix row " + std::to_string(i + 1) + " column " +
                        std::to_string(j + 1) + ": value outside [0,1]");
      }
      s.at(i, j) = v;
    }
  }
  return s;
}

void MiningParams::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw DataError("threshold must be in [0,1]");
  check_penalty(penalty);
}

const char* direction_name(Direction d) {
  return d == Direction::kForward ? "forward" : "backward";
}

SimilarityMatrix build_similarity_matrix(const DocumentPair& pair, const ClassifierModel& model,
                                         const Lexicon& lex) {
  const auto& [model_src, model_tgt] = model.direction;
  if (model_src != pair.source.lang || model_tgt != pair.target.lang) {
    throw DataError("model direction " + model_src + "->" + model_tgt +
                    " does not match document pair " + pair.source.lang + "->" +
                    pair.target.lang);
  }
  if (pair.source.empty() || pair.target.empty()) {
    throw DataError("document pair '" + pair.id + "' has an empty side");
  }
  const std::size_t n = pair.source.size();
  const std::size_t m = pair.target.size();
  SimilarityMatrix s(n, m);

  const FeatureExtractor extractor(lex);
  std::vector<SentenceProfile> tgt_profiles;
  tgt_profiles.reserve(m);
  for (const auto& sentence : pair.target.sentences) tgt_profiles.push_back(extractor.profile(sentence));
  for (std::size_t i = 0; i < n; ++i) {
    const SentenceProfile src_profile = extractor.profile(pair.source.sentences[i]);
    const double src_pos = relative_position(i, n);
    for (std::size_t j = 0; j < m; ++j) {
      s.at(i, j) = confidence(
          model, extractor.features(src_profile, tgt_profiles[j], src_pos, relative_position(j, m)));
    }
  }
  return s;
}

AlignmentPath nw_align(const SimilarityMatrix& s, double penalty) {
  check_penalty(penalty);
  Lattice lattice(s, penalty);
  lattice.fill_block(1, s.rows() + 1, 1, s.cols() + 1);
  return lattice.trace();
}

AlignmentPath nw_align_wavefront(const SimilarityMatrix& s, double penalty, std::size_t workers) {
  check_penalty(penalty);
  workers = std::max<std::size_t>(1, workers);
  const std::size_t n = s.rows();
  const std::size_t m = s.cols();
  // Small matrices degrade to cell-level diagonals (tile = 1).
  const std::size_t tile = std::clamp<std::size_t>(std::max(n, m) / (8 * workers), 1, 256);
  const std::size_t tile_rows = (n + tile - 1) / tile;
  const std::size_t tile_cols = (m + tile - 1) / tile;
  const std::size_t diagonals = tile_rows + tile_cols - 1;

  Lattice lattice(s, penalty);
  auto run_tile = [&](std::size_t tr, std::size_t tc) {
    const std::size_t row_begin = 1 + tr * tile;
    const std::size_t col_begin = 1 + tc * tile;
    lattice.fill_block(row_begin, std::min(row_begin + tile, n + 1), col_begin,
                       std::min(col_begin + tile, m + 1));
  };
  // Tiles (tr, tc) with tr + tc == d, in increasing tr; worker w takes a
  // contiguous share.
  auto run_share = [&](std::size_t d, std::size_t w, std::size_t share_count) {
    const std::size_t tr_begin = d >= tile_cols ? d - (tile_cols - 1) : 0;
    const std::size_t tr_end = std::min(d, tile_rows - 1) + 1;
    const std::size_t count = tr_end - tr_begin;
    const std::size_t begin = tr_begin + count * w / share_count;
    const std::size_t end = tr_begin + count * (w + 1) / share_count;
    for (std::size_t tr = begin; tr < end; ++tr) run_tile(tr, d - tr);
  };

  if (workers == 1) {
    for (std::size_t d = 0; d < diagonals; ++d) run_share(d, 0, 1);
    return lattice.trace();
  }

  std::barrier sync(static_cast<std::ptrdiff_t>(workers));
  auto worker_loop = [&](std::size_t w) {
    for (std::size_t d = 0; d < diagonals; ++d) {
      run_share(d, w, workers);
      sync.arrive_and_wait();
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(worker_loop, w);
    worker_loop(0);
  }
  return lattice.trace();
}

AlignmentPath search_align(const SimilarityMatrix& s, double penalty) {
  check_penalty(penalty);
  const std::size_t n = s.rows();
  const std::size_t m = s.cols();
  const std::size_t stride = m + 1;
  const std::size_t goal = n * stride + m;
  std::vector<double> dist((n + 1) * stride, std::numeric_limits<double>::infinity());
  std::vector<MoveKind> via((n + 1) * stride, MoveKind::kDiag);
  std::vector<bool> settled((n + 1) * stride, false);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[0] = 0.0;
  frontier.push({0.0, 0});
  auto relax = [&](std::size_t node, double cost, MoveKind move) {
    if (cost < dist[node]) {
      dist[node] = cost;
      via[node] = move;
      frontier.push({cost, node});
    }
  };
  while (!frontier.empty()) {
    const auto [d, node] = frontier.top();
    frontier.pop();
    if (settled[node]) continue;
    settled[node] = true;
    if (node == goal) break;
    const std::size_t i = node / stride;
    const std::size_t j = node % stride;
    if (i < n && j < m) relax(node + stride + 1, d + (1.0 - s.at(i, j)), MoveKind::kDiag);
    if (i < n) relax(node + stride, d + penalty, MoveKind::kSkipSource);
    if (j < m) relax(node + 1, d + penalty, MoveKind::kSkipTarget);
  }

  AlignmentPath path;
  path.total_cost = dist[goal];
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const MoveKind move = via[i * stride + j];
    if (move == MoveKind::kDiag) {
      --i;
      --j;
      path.moves.push_back({move, i, j});
    } else if (move == MoveKind::kSkipSource) {
      --i;
      path.moves.push_back({move, i, 0});
    } else {
      --j;
      path.moves.push_back({move, 0, j});
    }
  }
  std::reverse(path.moves.begin(), path.moves.end());
  return path;
}

double replay_path_cost(const AlignmentPath& path, const SimilarityMatrix& s, double penalty) {
  std::size_t i = 0;
  std::size_t j = 0;
  double cost = 0.0;
  for (const Move& move : path.moves) {
    switch (move.kind) {
      case MoveKind::kDiag:
        if (move.i != i || move.j != j || i >= s.rows() || j >= s.cols()) {
          throw DataError("invalid diagonal move in path");
        }
        cost += 1.0 - s.at(i, j);
        ++i;
        ++j;
        break;
      case MoveKind::kSkipSource:
        if (move.i != i || i >= s.rows()) throw DataError("invalid skip-source move in path");
        cost += penalty;
        ++i;
        break;
      case MoveKind::kSkipTarget:
        if (move.j != j || j >= s.cols()) throw DataError("invalid skip-target move in path");
        cost += penalty;
        ++j;
        break;
    }
  }
  if (i != s.rows() || j != s.cols()) throw DataError("path does not end at (n, m)");
  return cost;
}

std::vector<MinedPair> extract_pairs(const AlignmentPath& path, const SimilarityMatrix& s,
                                     const DocumentPair& pair, const MiningParams& params) {
  std::vector<MinedPair> out;
  for (const Move& move : path.moves) {
    if (move.kind != MoveKind::kDiag) continue;
    const double c = s.at(move.i, move.j);
    if (c < params.threshold) continue;
    out.push_back({pair.source.sentences[move.i], pair.target.sentences[move.j], c, pair.id,
                   Direction::kForward, move.i, move.j});
  }
  return out;
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kSequential:
      return "sequential";
    case Engine::kWavefront:
      return "wavefront";
    case Engine::kSearch:
      return "search";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "sequential") return Engine::kSequential;
  if (name == "wavefront") return Engine::kWavefront;
  if (name == "search") return Engine::kSearch;
  throw DataError("unknown engine '" + name + "' (expected sequential, wavefront or search)");
}

AlignmentPath align(const SimilarityMatrix& s, double penalty, Engine engine,
                    std::size_t wavefront_workers) {
  switch (engine) {
    case Engine::kWavefront:
      return nw_align_wavefront(s, penalty, wavefront_workers);
    case Engine::kSearch:
      return search_align(s, penalty);
    case Engine::kSequential:
      break;
  }
  return nw_align(s, penalty);
}

SimilarityMatrix read_matrix_tsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::size_t begin = 0;
    while (begin <= line.size()) {
      const auto tab = line.find('\t', begin);
      const std::string field = line.substr(begin, tab == std::string::npos ? std::string::npos : tab - begin);
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(field, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed == 0 || field.find_first_not_of(' ', consumed) != std::string::npos) {
        throw DataError("matrix line " + std::to_string(line_number) + ": bad number '" + field + "'");
      }
      row.push_back(value);
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
    rows.push_back(std::move(row));
  }
  return SimilarityMatrix::from_rows(rows);
}

void write_path(std::ostream& out, const AlignmentPath& path, const SimilarityMatrix& s) {
  for (const Move& move : path.moves) {
    switch (move.kind) {
      case MoveKind::kDiag:
        out << "D " << move.i << ' ' << move.j << ' ' << format_fixed(1.0 - s.at(move.i, move.j))
            << '\n';
        break;
      case MoveKind::kSkipSource:
        out << "GS " << move.i << '\n';
        break;
      case MoveKind::kSkipTarget:
        out << "GT " << move.j << '\n';
        break;
    }
  }
  out << "TOTAL " << format_fixed(path.total_cost) << '\n';
}

}  // namespace pmine
