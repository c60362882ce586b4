#include "pmine/miner.h"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <iostream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "pmine/errors.h"

namespace pmine {
namespace {

DocumentPair swapped(const DocumentPair& pair) { return {pair.id, pair.target, pair.source}; }

std::string clean_field(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
  }
  return out;
}

struct DocumentOutcome {
  std::vector<MinedPair> pairs;
  bool skipped = false;
};

class PairKeyHash {
 public:
  std::size_t operator()(const std::pair<std::string, std::string>& key) const {
    const std::size_t h = std::hash<std::string>{}(key.first);
    return h ^ (std::hash<std::string>{}(key.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

// Runs forward (and backward) mining for one document.
DocumentOutcome mine_one(const DocumentPair& pair, const ClassifierModel& forward,
                         const ClassifierModel* backward, const Lexicon& lex,
                         const Lexicon* reversed_lex, const MinerConfig& cfg) {
  DocumentOutcome outcome;
  try {
    const auto fwd = mine_document(pair, forward, lex, cfg);
    std::vector<MinedPair> bwd;
    if (backward) bwd = mine_document(pair, *backward, *reversed_lex, cfg);
    outcome.pairs = bidirectional_merge(fwd, bwd);
  } catch (const ResourceError& e) {
    std::cerr << "warning: document '" << pair.id << "' skipped: " << e.what() << '\n';
    outcome.skipped = true;
  }
  return outcome;
}

// Accepts results out of order and writes them strictly by sequence number.
class OrderedWriter {
 public:
  OrderedWriter(std::ostream& out, MiningReport& report) : out_(out), report_(report) {}

  void deliver(std::size_t seq, DocumentOutcome outcome) {
    std::lock_guard lock(mutex_);
    pending_.emplace(seq, std::move(outcome));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      write(pending_.begin()->second);
      pending_.erase(pending_.begin());
      ++next_;
    }
  }

  void finish() {
    report_.unique_src_tokens = src_tokens_.size();
    report_.unique_tgt_tokens = tgt_tokens_.size();
  }

 private:
  void write(const DocumentOutcome& outcome) {
    if (outcome.skipped) {
      ++report_.docs_skipped;
      return;
    }
    ++report_.docs_processed;
    for (const auto& pair : outcome.pairs) {
      write_mined_pair(out_, pair);
      if (!out_) throw SinkError("write to output failed");
      ++report_.pairs_emitted;
      ++(pair.direction == Direction::kForward ? report_.forward_pairs : report_.backward_pairs);
      src_tokens_.insert(pair.src.norm_tokens.begin(), pair.src.norm_tokens.end());
      tgt_tokens_.insert(pair.tgt.norm_tokens.begin(), pair.tgt.norm_tokens.end());
    }
  }

  std::ostream& out_;
  MiningReport& report_;
  std::mutex mutex_;
  std::map<std::size_t, DocumentOutcome> pending_;
  std::size_t next_ = 0;
  std::unordered_set<std::string> src_tokens_;
  std::unordered_set<std::string> tgt_tokens_;
};

// Bounded hand-off from the reader to the workers.
class WorkQueue {
 public:
  explicit WorkQueue(std::size_t capacity) : capacity_(capacity) {}

  bool push(std::size_t seq, DocumentPair pair) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return false;
    items_.emplace_back(seq, std::move(pair));
    not_empty_.notify_one();
    return true;
  }

  std::optional<std::pair<std::size_t, DocumentPair>> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    auto item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::size_t capacity_;
  std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<std::pair<std::size_t, DocumentPair>> items_;
  bool closed_ = false;
};

}  // namespace

void MinerConfig::validate() const {
  params.validate();
  if (workers < 1) throw DataError("workers must be >= 1");
  if (wavefront_workers < 1) throw DataError("wavefront workers must be >= 1");
}

std::vector<MinedPair> mine_document(const DocumentPair& pair, const ClassifierModel& model,
                                     const Lexicon& lex, const MinerConfig& cfg) {
  const auto& [model_src, model_tgt] = model.direction;
  const bool forward = model_src == pair.source.lang && model_tgt == pair.target.lang;
  const bool backward = model_src == pair.target.lang && model_tgt == pair.source.lang;
  if (!forward && !backward) {
    throw DataError("model direction " + model_src + "->" + model_tgt +
                    " does not match document pair " + pair.source.lang + "->" +
                    pair.target.lang + " in either orientation");
  }
  if (forward) {
    const auto s = build_similarity_matrix(pair, model, lex);
    return extract_pairs(align(s, cfg.params.penalty, cfg.engine, cfg.wavefront_workers), s, pair,
                         cfg.params);
  }
  const DocumentPair flipped = swapped(pair);
  const auto s = build_similarity_matrix(flipped, model, lex);
  auto pairs = extract_pairs(align(s, cfg.params.penalty, cfg.engine, cfg.wavefront_workers), s,
                             flipped, cfg.params);
  for (auto& p : pairs) {
    std::swap(p.src, p.tgt);
    std::swap(p.src_index, p.tgt_index);
    p.direction = Direction::kBackward;
  }
  std::sort(pairs.begin(), pairs.end(), [](const MinedPair& a, const MinedPair& b) {
    return std::tie(a.src_index, a.tgt_index) < std::tie(b.src_index, b.tgt_index);
  });
  return pairs;
}

std::vector<MinedPair> bidirectional_merge(std::span<const MinedPair> forward,
                                           std::span<const MinedPair> backward) {
  std::vector<MinedPair> merged;
  std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairKeyHash> index;
  auto add = [&](const MinedPair& pair) {
    auto [it, inserted] = index.try_emplace({pair.src.normalized, pair.tgt.normalized}, merged.size());
    if (inserted) {
      merged.push_back(pair);
      return;
    }
    MinedPair& kept = merged[it->second];
    const bool replace =
        pair.confidence > kept.confidence ||
        (pair.confidence == kept.confidence && pair.direction == Direction::kForward &&
         kept.direction != Direction::kForward);
    if (replace) kept = pair;
  };
  for (const auto& pair : forward) add(pair);
  for (const auto& pair : backward) add(pair);
  std::stable_sort(merged.begin(), merged.end(), [](const MinedPair& a, const MinedPair& b) {
    return std::tie(a.doc_id, a.src_index, a.tgt_index) <
           std::tie(b.doc_id, b.src_index, b.tgt_index);
  });
  return merged;
}

std::pair<std::size_t, std::size_t> count_unique_tokens(std::span<const MinedPair> pairs) {
  std::unordered_set<std::string> src;
  std::unordered_set<std::string> tgt;
  for (const auto& pair : pairs) {
    src.insert(pair.src.norm_tokens.begin(), pair.src.norm_tokens.end());
    tgt.insert(pair.tgt.norm_tokens.begin(), pair.tgt.norm_tokens.end());
  }
  return {src.size(), tgt.size()};
}

MiningReport mine_corpus(const DocumentPairSource& source, const ClassifierModel& forward,
                         const ClassifierModel* backward, const Lexicon& lex,
                         const MinerConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  std::optional<Lexicon> reversed_lex;
  if (backward) reversed_lex = lex.reversed();
  const Lexicon* reversed = reversed_lex ? &*reversed_lex : nullptr;

  MiningReport report;
  OrderedWriter writer(out, report);
  std::size_t seq = 0;

  if (cfg.workers == 1) {
    while (auto pair = source()) {
      writer.deliver(seq++, mine_one(*pair, forward, backward, lex, reversed, cfg));
    }
  } else {
    WorkQueue queue(cfg.workers * 4);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto fail = [&](std::exception_ptr e) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = e;
      queue.close();
    };
    {
      std::vector<std::jthread> workers;
      workers.reserve(cfg.workers);
      for (std::size_t w = 0; w < cfg.workers; ++w) {
        workers.emplace_back([&] {
          while (auto item = queue.pop()) {
            try {
              writer.deliver(item->first,
                             mine_one(item->second, forward, backward, lex, reversed, cfg));
            } catch (...) {
              fail(std::current_exception());
              return;
            }
          }
        });
      }
      try {
        while (auto pair = source()) {
          if (!queue.push(seq++, std::move(*pair))) break;
        }
      } catch (...) {
        fail(std::current_exception());
      }
      queue.close();
    }
    if (failure) std::rethrow_exception(failure);
  }

  writer.finish();
  out.flush();
  if (!out) throw SinkError("write to output failed");
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

MiningReport mine_corpus(std::span<const DocumentPair> docs, const ClassifierModel& forward,
                         const ClassifierModel* backward, const Lexicon& lex,
                         const MinerConfig& cfg, std::ostream& out) {
  std::size_t next = 0;
  return mine_corpus(
      [&]() -> std::optional<DocumentPair> {
        if (next == docs.size()) return std::nullopt;
        return docs[next++];
      },
      forward, backward, lex, cfg, out);
}

void write_mined_pair(std::ostream& out, const MinedPair& pair) {
  char confidence[32];
  std::snprintf(confidence, sizeof confidence, "%.6f", pair.confidence);
  out << clean_field(pair.src.raw) << '\t' << clean_field(pair.tgt.raw) << '\t' << confidence
      << '\t' << clean_field(pair.doc_id) << '\t' << direction_name(pair.direction) << '\n';
}

std::string report_to_json(const MiningReport& report) {
  nlohmann::ordered_json j;
  j["pairs_emitted"] = report.pairs_emitted;
  j["unique_src_tokens"] = report.unique_src_tokens;
  j["unique_tgt_tokens"] = report.unique_tgt_tokens;
  j["docs_processed"] = report.docs_processed;
  j["docs_skipped"] = report.docs_skipped;
  j["wall_clock_seconds"] = report.wall_clock_seconds;
  j["per_direction"] = {{"forward", report.forward_pairs}, {"backward", report.backward_pairs}};
  return j.dump(2) + "\n";
}

}  // namespace pmine
