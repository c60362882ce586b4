#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmine/aligner.h"
#include "pmine/classifier.h"
#include "pmine/corpus.h"
#include "pmine/lexicon.h"

namespace pmine {

struct MinerConfig {
  MiningParams params;
  std::size_t workers = 1;
  Engine engine = Engine::kSequential;
  std::size_t wavefront_workers = 1;
  std::uint64_t seed = 42;

  void validate() const;  // throws DataError
};

struct MiningReport {
  std::size_t pairs_emitted = 0;
  std::size_t unique_src_tokens = 0;
  std::size_t unique_tgt_tokens = 0;
  std::size_t docs_processed = 0;
  std::size_t docs_skipped = 0;
  double wall_clock_seconds = 0.0;
  std::size_t forward_pairs = 0;
  std::size_t backward_pairs = 0;
};

// Mines one document pair. A model whose direction is the reverse of the
// pair's languages is run on the swapped pair and its results are turned
// back and tagged kBackward. `lex` must be oriented like `model`.
// Throws DataError when the model matches neither orientation and
// ResourceError when the matrix is too large.
std::vector<MinedPair> mine_document(const DocumentPair& pair, const ClassifierModel& model,
                                     const Lexicon& lex, const MinerConfig& cfg);

// Union keyed by normalized (src, tgt) text. Duplicates keep the higher
// confidence; exact ties keep the forward record. Sorted by
// (doc_id, src_index, tgt_index).
std::vector<MinedPair> bidirectional_merge(std::span<const MinedPair> forward,
                                           std::span<const MinedPair> backward);

std::pair<std::size_t, std::size_t> count_unique_tokens(std::span<const MinedPair> pairs);

using DocumentPairSource = std::function<std::optional<DocumentPair>()>;

// Streams document pairs through `cfg.workers` mining workers and writes
// TSV records to `out` in input order, then source sentence order, whatever
// the scheduling. `backward` may be null; `lex` is oriented like `forward`.
// Throws SinkError when `out` fails.
MiningReport mine_corpus(const DocumentPairSource& source, const ClassifierModel& forward,
                         const ClassifierModel* backward, const Lexicon& lex,
                         const MinerConfig& cfg, std::ostream& out);

MiningReport mine_corpus(std::span<const DocumentPair> docs, const ClassifierModel& forward,
                         const ClassifierModel* backward, const Lexicon& lex,
                         const MinerConfig& cfg, std::ostream& out);

// `src<TAB>tgt<TAB>confidence<TAB>doc_id<TAB>direction`, confidence with 6
// decimals. Tabs and line breaks inside text become spaces.
void write_mined_pair(std::ostream& out, const MinedPair& pair);

std::string report_to_json(const MiningReport& report);

}  // namespace pmine
