// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. `--scaling` runs the timing criteria,
// which need a host with at least four hardware threads (exit 77 = skipped).

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "pmine/aligner.h"
#include "pmine/classifier.h"
#include "pmine/cli.h"
#include "pmine/metrics.h"
#include "pmine/miner.h"
#include "pmine/random.h"
#include "pmine/synthetic.h"
#include "pmine/tuner.h"

namespace fs = std::filesystem;
using namespace pmine;

namespace {

constexpr int kSkipped = 77;
constexpr double kCostTolerance = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double value, int decimals = 4) {
  std::ostringstream s;
  s.precision(decimals);
  s << std::fixed << value;
  return s.str();
}

fs::path work_dir(const std::string& name) {
  const fs::path dir = fs::path(PMINE_TEST_TMP) / "acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SimilarityMatrix random_matrix(Rng& rng, std::size_t n, std::size_t m, bool quantized) {
  SimilarityMatrix s(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      s.at(i, j) = quantized ? static_cast<double>(rng.below(5)) / 4.0 : rng.uniform();
  return s;
}

// Minimum over every monotone lattice path, enumerated recursively.
double brute_force_cost(const SimilarityMatrix& s, double penalty, std::size_t i, std::size_t j) {
  if (i == s.rows() && j == s.cols()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (i < s.rows() && j < s.cols()) best = std::min(best, 1.0 - s.at(i, j) + brute_force_cost(s, penalty, i + 1, j + 1));
  if (i < s.rows()) best = std::min(best, penalty + brute_force_cost(s, penalty, i + 1, j));
  if (j < s.cols()) best = std::min(best, penalty + brute_force_cost(s, penalty, i, j + 1));
  return best;
}

Outcome ac1_dp_optimality() {
  const auto start = Clock::now();
  const std::vector<double> penalties{0.0, 0.1, 0.2, 0.25, 0.5, 0.8, 1.0};
  Rng rng(101);
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  auto check = [&](const SimilarityMatrix& s, double penalty) {
    ++checked;
    const auto path = nw_align(s, penalty);
    const double expected = brute_force_cost(s, penalty, 0, 0);
    if (std::abs(path.total_cost - expected) > kCostTolerance ||
        std::abs(replay_path_cost(path, s, penalty) - expected) > kCostTolerance) {
      ++mismatches;
    }
  };
  for (int trial = 0; trial < 1000; ++trial) {
    check(random_matrix(rng, 4, 4, true), penalties[rng.below(penalties.size())]);
  }
  // Every 2x2 matrix over the five-value grid.
  for (int code = 0; code < 625; ++code) {
    SimilarityMatrix s(2, 2);
    int rest = code;
    for (std::size_t cell = 0; cell < 4; ++cell, rest /= 5) s.at(cell / 2, cell % 2) = (rest % 5) / 4.0;
    for (const double penalty : penalties) check(s, penalty);
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 60.0,
          std::to_string(checked) + " matrices, " + std::to_string(mismatches) + " mismatches, " +
              num(elapsed, 2) + " s"};
}

Outcome ac2_engine_equivalence() {
  const auto start = Clock::now();
  Rng rng(202);
  std::size_t cost_mismatch = 0;
  std::size_t path_mismatch = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 50));
    const auto m = static_cast<std::size_t>(rng.between(1, 50));
    const auto s = random_matrix(rng, n, m, trial % 4 == 0);
    const double penalty = static_cast<double>(rng.below(11)) / 10.0;
    const auto reference = nw_align(s, penalty);
    for (const std::size_t workers : {1u, 2u, 4u, 8u}) {
      const auto wf = nw_align_wavefront(s, penalty, workers);
      if (!(wf == reference)) ++path_mismatch;
      if (std::abs(wf.total_cost - reference.total_cost) > kCostTolerance) ++cost_mismatch;
    }
    if (std::abs(search_align(s, penalty).total_cost - reference.total_cost) > kCostTolerance) ++cost_mismatch;
  }
  const double elapsed = seconds_since(start);
  return {cost_mismatch == 0 && path_mismatch == 0 && elapsed < 60.0,
          "200 matrices, cost mismatches " + std::to_string(cost_mismatch) + ", path mismatches " +
              std::to_string(path_mismatch) + ", " + num(elapsed, 2) + " s"};
}

// Shared synthetic world for the pipeline criteria.
struct World {
  synth::LanguagePair lp = synth::make_language_pair(600, 500, 42);
  SeedCorpus seed = synth::seed_corpus(lp, 2000, 43);
  TrainResult forward_result;
  ClassifierModel forward;
  ClassifierModel backward;
  Lexicon reversed_lex = lp.lexicon.reversed();

  World() {
    forward_result = train(seed, lp.lexicon, {.direction = {"pl", "en"}});
    forward = forward_result.model;
    SeedCorpus flipped;
    for (const auto& [s, t] : seed.pairs) flipped.pairs.emplace_back(t, s);
    backward = train(flipped, reversed_lex, {.direction = {"en", "pl"}}).model;
  }
};

std::size_t mined_count(const World& w, const DocumentPair& doc, bool bidirectional) {
  const auto fwd = mine_document(doc, w.forward, w.lp.lexicon, {});
  std::vector<MinedPair> bwd;
  if (bidirectional) bwd = mine_document(doc, w.backward, w.reversed_lex, {});
  return bidirectional_merge(fwd, bwd).size();
}

Outcome ac4_scheduling_invariance(const World& w) {
  const auto dir = work_dir("ac4");
  {
    std::ofstream lex(dir / "lexicon.tsv");
    synth::write_lexicon_tsv(lex, w.lp);
    save_model(w.forward, dir / "fwd.json");
    save_model(w.backward, dir / "bwd.json");
    const auto corpus = synth::comparable_corpus(w.lp, {.docs = 1000}, 404);
    std::ofstream docs(dir / "docs.jsonl");
    for (const auto& doc : corpus.docs) docs << synth::document_pair_json(doc) << '\n';
  }
  std::ostringstream sink;
  auto mine = [&](const std::string& workers) {
    const std::string out = (dir / ("pairs.w" + workers + ".tsv")).string();
    const int code = cli::run({"mine", "--docs", (dir / "docs.jsonl").string(), "--model", (dir / "fwd.json").string(),
                               "--model-rev", (dir / "bwd.json").string(), "--lexicon",
                               (dir / "lexicon.tsv").string(), "--out", out, "--workers", workers},
                              sink, sink);
    return code == 0 ? read_file(out) : std::string("exit ") + std::to_string(code);
  };
  const auto one = mine("1");
  const auto eight = mine("8");
  const bool identical = one == eight && !one.empty();
  return {identical, "1000 documents, " + std::to_string(std::count(one.begin(), one.end(), '\n')) +
                         " pairs, workers 1 vs 8 " + (identical ? "byte-identical" : "DIFFER") +
                         " (timing part: --scaling)"};
}

Outcome ac5_bidirectional_superset(const World& w) {
  const auto corpus = synth::comparable_corpus(w.lp, {.docs = 200}, 505);
  std::size_t mono = 0;
  std::size_t bi = 0;
  std::size_t violations = 0;
  for (const auto& doc : corpus.docs) {
    const auto m = mined_count(w, doc, false);
    const auto b = mined_count(w, doc, true);
    mono += m;
    bi += b;
    if (b < m) ++violations;
  }

  // Constructed fixture: the source sentence carries untranslatable extra
  // words, so source-to-target coverage is low while target-to-source
  // coverage is complete. A coverage-driven classifier only finds the pair
  // in the backward direction.
  std::istringstream lex_in("ala\tala\t1\nma\thas\t1\n");
  const Lexicon lex = parse_lexicon(lex_in);
  DocumentPair doc{"c", {"c", "pl", {*make_sentence("Ala ma xyz qrs wvu.")}},
                   {"c", "en", {*make_sentence("Ala has.")}}};
  ClassifierModel fwd;
  fwd.direction = {"pl", "en"};
  fwd.weights = {0, 8, 0, 0, 0, 0, 0};
  fwd.bias = -5;
  ClassifierModel bwd = fwd;
  bwd.direction = {"en", "pl"};
  const auto f = mine_document(doc, fwd, lex, {});
  const auto both = bidirectional_merge(f, mine_document(doc, bwd, lex.reversed(), {}));
  const bool strict = both.size() > bidirectional_merge(f, {}).size();
  return {violations == 0 && bi >= mono && strict,
          "corpus MONO " + std::to_string(mono) + " BI " + std::to_string(bi) + "; fixture MONO " +
              std::to_string(bidirectional_merge(f, {}).size()) + " BI " + std::to_string(both.size())};
}

Outcome ac6_tuning_improvement(const World& w) {
  // Comparable documents are noisy by construction: distractor sentences and
  // translations with dropped, substituted, inserted and swapped words.
  const auto dev = synth::comparable_corpus(w.lp, {.docs = 60}, 606);
  GoldSet gold{dev.docs, dev.gold};
  const auto result = tune(w.forward, w.lp.lexicon, gold);
  std::vector<SimilarityMatrix> matrices;
  for (const auto& doc : gold.docs) matrices.push_back(build_similarity_matrix(doc, w.forward, w.lp.lexicon));
  const double default_f1 =
      evaluate_params(matrices, gold.gold, {w.forward.default_threshold, w.forward.default_penalty}).f1;
  bool argmax = true;
  for (const auto& point : result.trace) {
    if (point.score.f1 > result.score.f1) argmax = false;
  }
  const bool best_in_trace = std::any_of(result.trace.begin(), result.trace.end(), [&](const TracePoint& p) {
    return p.params.threshold == result.best.threshold && p.params.penalty == result.best.penalty &&
           p.score.f1 == result.score.f1;
  });

  // Constructed fixture: true cells score 0.8, everything else 0.1, and the
  // model default threshold of 0.95 rejects every true pair.
  std::vector<SimilarityMatrix> fixture;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> fixture_gold;
  for (std::size_t d = 0; d < 5; ++d) {
    SimilarityMatrix s(5, 5, 0.1);
    std::set<std::pair<std::size_t, std::size_t>> g;
    for (std::size_t k = 0; k < 5; ++k) {
      if ((k + d) % 3 == 0) continue;
      s.at(k, k) = 0.8;
      g.emplace(k, k);
    }
    fixture.push_back(s);
    fixture_gold.push_back(g);
  }
  const double fixture_default = evaluate_params(fixture, fixture_gold, {0.95, 0.2}).f1;
  const double fixture_tuned = tune_on_matrices(fixture, fixture_gold).score.f1;

  return {result.score.f1 >= default_f1 && argmax && best_in_trace && fixture_tuned > fixture_default,
          "dev F1 default " + num(default_f1) + " tuned " + num(result.score.f1) + " at (" +
              num(result.best.threshold, 2) + ", " + num(result.best.penalty, 2) + "); fixture " +
              num(fixture_default) + " -> " + num(fixture_tuned)};
}

Outcome ac7_classifier_quality(const World& w, double train_seconds) {
  // Rebuild the held-out split the trainer used and score it independently.
  Rng rng(42);
  auto examples = make_training_examples(w.seed, w.lp.lexicon, 2, rng);
  rng.shuffle(std::span<TrainingExample>(examples));
  const std::size_t held = std::max<std::size_t>(1, examples.size() / 10);
  double wins = 0.0;
  double pairs = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t a = 0; a < held; ++a) {
    const double score_a = confidence(w.forward, examples[a].features);
    const bool predicted = score_a >= w.forward.default_threshold;
    tp += predicted && examples[a].positive;
    fp += predicted && !examples[a].positive;
    fn += !predicted && examples[a].positive;
    if (!examples[a].positive) continue;
    for (std::size_t b = 0; b < held; ++b) {
      if (examples[b].positive) continue;
      const double score_b = confidence(w.forward, examples[b].features);
      pairs += 1.0;
      wins += score_a > score_b ? 1.0 : (score_a == score_b ? 0.5 : 0.0);
    }
  }
  const double auc = wins / pairs;
  const double f1 = 2.0 * tp / (2.0 * tp + fp + fn);
  const bool consistent = std::abs(auc - w.forward_result.heldout_auc) < 1e-9 &&
                          std::abs(f1 - w.forward_result.heldout_f1) < 1e-9;
  return {auc >= 0.9 && f1 >= 0.85 && consistent && train_seconds < 30.0,
          "held-out AUC " + num(auc) + " F1 " + num(f1) + " at threshold " +
              num(w.forward.default_threshold, 2) + ", training " + num(train_seconds, 2) + " s"};
}

Outcome ac8_end_to_end(const World& w) {
  const auto dev = synth::comparable_corpus(w.lp, {.docs = 60}, 808);
  const auto tuned = tune(w.forward, w.lp.lexicon, GoldSet{dev.docs, dev.gold});
  const auto test = synth::comparable_corpus(w.lp, {.docs = 200}, 809);
  MinerConfig cfg;
  cfg.params = tuned.best;
  std::set<AlignmentKey> predicted;
  std::set<AlignmentKey> gold;
  for (std::size_t d = 0; d < test.docs.size(); ++d) {
    for (const auto& p : mine_document(test.docs[d], w.forward, w.lp.lexicon, cfg)) {
      predicted.emplace(d, p.src_index, p.tgt_index);
    }
    for (const auto& [i, j] : test.gold[d]) gold.emplace(d, i, j);
  }
  const auto pr = f_measure(predicted, gold);
  return {pr.precision >= 0.9 && pr.recall >= 0.7,
          "precision " + num(pr.precision) + " recall " + num(pr.recall) + " (" +
              std::to_string(predicted.size()) + " mined, " + std::to_string(gold.size()) + " gold)"};
}

std::vector<TokenList> token_lines(std::initializer_list<std::string_view> texts) {
  std::vector<TokenList> out;
  for (auto t : texts) out.push_back(split_words(t));
  return out;
}

Outcome ac9_metrics() {
  // exp(1 - 6/3) * (3/3 * 2/2 * 1/1 * 1/2)^(1/4): the missing 4-gram order
  // falls back to 1 / (2 * max(1, 0)).
  const double hand_computed = std::exp(-1.0) * std::pow(0.5, 0.25);
  const auto refs = token_lines({"the quick brown fox", "jumps over the lazy dog"});
  const bool identity = std::abs(bleu(refs, refs) - 1.0) < 1e-12;
  const double fixture = bleu(token_lines({"the cat sat"}), token_lines({"the cat sat on the mat"}));
  const bool fixture_ok = std::abs(fixture - hand_computed) < 1e-9;

  Rng rng(909);
  const std::vector<std::string> vocab{"the", "cat", "sat", "on", "mat", "dog", "ran", "park", "a", "in"};
  std::size_t nist_violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TokenList> r;
    std::vector<TokenList> h;
    for (int line = 0; line < 4; ++line) {
      TokenList ref;
      TokenList hyp;
      for (auto k = rng.between(1, 10); k > 0; --k) ref.push_back(vocab[rng.below(vocab.size())]);
      for (auto k = rng.between(1, 10); k > 0; --k) hyp.push_back(vocab[rng.below(vocab.size())]);
      r.push_back(ref);
      h.push_back(hyp);
    }
    if (nist(h, r) > nist(r, r) + 1e-9) ++nist_violations;
  }

  std::vector<TextPair> corpus;
  for (std::size_t k = 0; k < 4000; ++k) corpus.emplace_back("s" + std::to_string(k), "t" + std::to_string(k));
  const auto split = sample_test_set(corpus);
  std::set<std::string> seen;
  for (const auto& p : split.test) seen.insert(p.first);
  for (const auto& p : split.remainder) seen.insert(p.first);
  const bool partition = split.test.size() == 2000 && split.remainder.size() == 2000 && seen.size() == 4000;

  return {identity && fixture_ok && nist_violations == 0 && partition,
          "bleu(x,x) " + std::string(identity ? "1" : "!= 1") + ", fixture " + num(fixture, 12) +
              " vs " + num(hand_computed, 12) + ", nist violations " + std::to_string(nist_violations) +
              ", sample " + std::to_string(split.test.size()) + "/" + std::to_string(split.remainder.size())};
}

// Drops wall-clock fields from JSON text so timing noise is not compared.
std::string without_timing(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  std::function<void(nlohmann::ordered_json&)> strip = [&](nlohmann::ordered_json& node) {
    if (node.is_object()) {
      node.erase("wall_clock_seconds");
      node.erase("seconds");
      for (auto& [key, value] : node.items()) strip(value);
    } else if (node.is_array()) {
      for (auto& value : node) strip(value);
    }
  };
  strip(j);
  return j.dump();
}

Outcome ac10_determinism(const World& w) {
  const auto dir = work_dir("ac10");
  {
    std::ofstream src(dir / "seed.pl");
    std::ofstream tgt(dir / "seed.en");
    for (const auto& [s, t] : synth::parallel_text(w.lp, 400, 1001)) {
      src << s << '\n';
      tgt << t << '\n';
    }
    std::ofstream lex(dir / "lexicon.tsv");
    synth::write_lexicon_tsv(lex, w.lp);
    const auto corpus = synth::comparable_corpus(w.lp, {.docs = 40}, 1002);
    std::ofstream docs(dir / "docs.jsonl");
    std::ofstream gold(dir / "gold.jsonl");
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
      docs << synth::document_pair_json(corpus.docs[d]) << '\n';
      gold << synth::document_pair_json(corpus.docs[d], &corpus.gold[d]) << '\n';
    }
    std::ofstream matrix(dir / "matrix.tsv");
    Rng rng(1003);
    for (int i = 0; i < 30; ++i) {
      for (int j = 0; j < 25; ++j) matrix << (j ? "\t" : "") << num(rng.uniform(), 3);
      matrix << '\n';
    }
  }
  const auto p = [&](const std::string& name) { return (dir / name).string(); };

  struct Step {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> artifacts;
    bool json_stdout = false;  // compared with timing fields removed
  };
  const std::vector<Step> steps{
      {"train", {"train", "--src", p("seed.pl"), "--tgt", p("seed.en"), "--lexicon", p("lexicon.tsv"), "--out", p("fwd.json")}, {"fwd.json"}},
      {"train --reverse", {"train", "--src", p("seed.pl"), "--tgt", p("seed.en"), "--lexicon", p("lexicon.tsv"), "--out", p("bwd.json"), "--reverse"}, {"bwd.json"}},
      {"tune", {"tune", "--model", p("fwd.json"), "--lexicon", p("lexicon.tsv"), "--gold", p("gold.jsonl"), "--out", p("tune.json"), "--workers", "3"}, {"tune.json"}},
      {"mine", {"mine", "--docs", p("docs.jsonl"), "--model", p("fwd.json"), "--model-rev", p("bwd.json"), "--lexicon", p("lexicon.tsv"), "--out", p("pairs.tsv"), "--report", p("report.json"), "--workers", "4"}, {"pairs.tsv"}},
      {"align", {"align", "--matrix", p("matrix.tsv"), "--penalty", "0.3", "--engine", "wavefront", "--wavefront-workers", "3"}, {}},
      {"eval bleu", {"eval", "--metric", "bleu", "--hyp", p("seed.en"), "--ref", p("seed.en")}, {}},
      {"eval nist", {"eval", "--metric", "nist", "--hyp", p("seed.pl"), "--ref", p("seed.en"), "--json"}, {}},
      {"sample", {"sample", "--src", p("seed.pl"), "--tgt", p("seed.en"), "--segments", "20", "--per-segment", "5", "--out-test", p("test"), "--out-rest", p("rest")}, {"test.pl", "test.en", "rest.pl", "rest.en"}},
      {"stats", {"stats", "--pairs", p("pairs.tsv"), "--json"}, {}},
      {"bench", {"bench", "--docs", p("docs.jsonl"), "--model", p("fwd.json"), "--lexicon", p("lexicon.tsv"), "--workers", "1,2", "--json"}, {}, true},
  };

  auto run_all = [&] {
    std::vector<std::string> captured;
    for (const auto& step : steps) {
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run(step.args, out, err);
      captured.push_back(step.name + " exit " + std::to_string(code));
      captured.push_back(step.json_stdout ? without_timing(out.str()) : out.str());
      for (const auto& a : step.artifacts) captured.push_back(read_file(dir / a));
      if (step.name == "mine") captured.push_back(without_timing(read_file(dir / "report.json")));
    }
    return captured;
  };
  const auto first = run_all();
  const auto second = run_all();
  std::vector<std::string> differing;
  bool all_ok = true;
  for (std::size_t k = 0; k < first.size(); ++k) {
    if (first[k] != second[k]) differing.push_back(std::to_string(k));
  }
  for (const auto& line : first) {
    if (line.find(" exit ") != std::string::npos && line.substr(line.size() - 6) != "exit 0") all_ok = false;
  }
  std::string detail = std::to_string(steps.size()) + " invocations x2, " + std::to_string(differing.size()) +
                       " differing outputs";
  if (!all_ok) detail += ", some invocations failed";
  return {differing.empty() && all_ok, detail};
}

void report(const std::string& id, const Outcome& outcome) {
  std::cout << id << ' ' << (outcome.pass ? "PASS" : "FAIL") << "  " << outcome.detail << std::endl;
}

template <typename F>
double best_of(int runs, F&& body) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < runs; ++k) {
    const auto start = Clock::now();
    body();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

int run_scaling() {
  const unsigned threads = std::thread::hardware_concurrency();
  bool all_pass = true;

  Rng rng(303);
  const auto s = random_matrix(rng, 2000, 2000, false);
  AlignmentPath one;
  AlignmentPath four;
  const double t1 = best_of(3, [&] { one = nw_align_wavefront(s, 0.2, 1); });
  const double t4 = best_of(3, [&] { four = nw_align_wavefront(s, 0.2, 4); });
  const bool same = one == four;
  const double ratio3 = t4 / t1;

  const World w;
  const auto corpus = synth::comparable_corpus(w.lp, {.docs = 1000}, 404);
  auto mine_with = [&](std::size_t workers) {
    MinerConfig cfg;
    cfg.workers = workers;
    std::ostringstream out;
    mine_corpus(corpus.docs, w.forward, &w.backward, w.lp.lexicon, cfg, out);
  };
  const double m1 = best_of(3, [&] { mine_with(1); });
  const double m4 = best_of(3, [&] { mine_with(4); });
  const double ratio4 = m4 / m1;

  const std::string d3 = "2000x2000 wavefront 1 worker " + num(t1, 3) + " s, 4 workers " + num(t4, 3) +
                         " s, ratio " + num(ratio3, 3) + " (limit 0.6), paths " + (same ? "equal" : "DIFFER");
  const std::string d4 = "1000 documents, 1 worker " + num(m1, 3) + " s, 4 workers " + num(m4, 3) +
                         " s, ratio " + num(ratio4, 3) + " (limit 0.5)";
  if (threads < 4) {
    std::cout << "AC3 SKIP  host has " << threads << " hardware thread(s), needs >= 4; measured " << d3 << std::endl;
    std::cout << "AC4 SKIP  timing part; host has " << threads << " hardware thread(s); measured " << d4 << std::endl;
    return same ? kSkipped : 1;
  }
  const Outcome ac3{same && ratio3 <= 0.6, d3};
  const Outcome ac4{ratio4 <= 0.5, d4};
  report("AC3", ac3);
  report("AC4-timing", ac4);
  all_pass = ac3.pass && ac4.pass;
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char* argv[]) {
  if (argc > 1 && std::string(argv[1]) == "--scaling") return run_scaling();

  std::vector<std::pair<std::string, Outcome>> results;
  auto record = [&](const std::string& id, Outcome outcome) {
    report(id, outcome);
    results.emplace_back(id, std::move(outcome));
  };

  record("AC1", ac1_dp_optimality());
  record("AC2", ac2_engine_equivalence());
  std::cout << "AC3 SEE   timing criterion, run with --scaling" << std::endl;

  const auto train_start = Clock::now();
  const World w;
  // Includes training the backward model as well.
  const double train_seconds = seconds_since(train_start);

  record("AC4", ac4_scheduling_invariance(w));
  record("AC5", ac5_bidirectional_superset(w));
  record("AC6", ac6_tuning_improvement(w));
  record("AC7", ac7_classifier_quality(w, train_seconds));
  record("AC8", ac8_end_to_end(w));
  record("AC9", ac9_metrics());
  record("AC10", ac10_determinism(w));

  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
