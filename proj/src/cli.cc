#include "pmine/cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmine/aligner.h"
#include "pmine/classifier.h"
#include "pmine/corpus.h"
#include "pmine/errors.h"
#include "pmine/lexicon.h"
#include "pmine/metrics.h"
#include "pmine/miner.h"
#include "pmine/tuner.h"

namespace pmine::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Output written to `<path>.partial` and renamed into place on commit. An
// uncommitted file is removed unless keep_partial() was called.
class OutputFile {
 public:
  explicit OutputFile(fs::path path) : path_(std::move(path)), partial_(path_.string() + ".partial") {
    stream_.open(partial_, std::ios::binary | std::ios::trunc);
    if (!stream_) throw SinkError("cannot create " + partial_.string());
  }
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  ~OutputFile() {
    if (committed_ || keep_) return;
    stream_.close();
    std::error_code ignored;
    fs::remove(partial_, ignored);
  }

  std::ostream& stream() { return stream_; }

  void commit() {
    stream_.close();
    if (!stream_) throw SinkError("cannot write " + partial_.string());
    fs::rename(partial_, path_);
    committed_ = true;
  }

  void keep_partial() { keep_ = true; }

 private:
  fs::path path_;
  fs::path partial_;
  std::ofstream stream_;
  bool committed_ = false;
  bool keep_ = false;
};

std::string fixed(double value, int decimals = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << value;
  return s.str();
}

// Language tag from a corpus file name such as `train.pl`.
std::string lang_from_path(const std::string& path, const std::string& fallback) {
  const auto ext = fs::path(path).extension().string();
  return ext.size() > 1 ? ext.substr(1) : fallback;
}

std::string file_extension_or(const std::string& path, const std::string& fallback) {
  const auto ext = fs::path(path).extension().string();
  return ext.size() > 1 ? ext : "." + fallback;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void print_json_or_table(std::ostream& out, bool json, const ordered_json& j) {
  if (json) {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) continue;
    out << std::left << std::setw(22) << key << ' ';
    if (value.is_number_float()) {
      out << fixed(value.get<double>());
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

// Orients a gold set so its documents match the model direction.
GoldSet orient(GoldSet dev, const ClassifierModel& model, bool& swapped) {
  swapped = false;
  if (dev.docs.empty()) return dev;
  const auto& first = dev.docs.front();
  if (model.direction.first == first.target.lang && model.direction.second == first.source.lang) {
    swapped = true;
    for (auto& doc : dev.docs) std::swap(doc.source, doc.target);
    for (auto& gold : dev.gold) {
      std::set<std::pair<std::size_t, std::size_t>> flipped;
      for (const auto& [i, j] : gold) flipped.emplace(j, i);
      gold = std::move(flipped);
    }
  }
  return dev;
}

struct Options {
  bool json = false;

  // train
  std::string src, tgt, lexicon, out, src_lang, tgt_lang;
  bool reverse = false;
  std::size_t negatives = 2;
  std::size_t epochs = 20;
  std::uint64_t seed = 42;

  // tune
  std::string model, gold;
  std::vector<double> thresholds, penalties;

  // mine / bench
  std::string docs, model_rev, report;
  std::optional<double> threshold, penalty;
  std::size_t workers = 1;
  std::string engine = "sequential";
  std::size_t wavefront_workers = 1;
  std::vector<std::string> engines;
  std::vector<std::size_t> worker_list;

  // align
  std::string matrix;

  // eval
  std::string metric, hyp, ref;
  std::size_t max_n = 0;

  // sample
  std::size_t segments = 200;
  std::size_t per_segment = 10;
  std::string out_test, out_rest;

  // stats
  std::string pairs;
};

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string src_lang = o.src_lang.empty() ? lang_from_path(o.src, "src") : o.src_lang;
  const std::string tgt_lang = o.tgt_lang.empty() ? lang_from_path(o.tgt, "tgt") : o.tgt_lang;
  if (src_lang == tgt_lang) throw DataError("source and target language are both '" + src_lang + "'");
  SeedCorpus corpus = load_seed_corpus(o.src, o.tgt);
  Lexicon lex = load_lexicon(o.lexicon);
  TrainOptions options;
  options.negatives_per_positive = o.negatives;
  options.epochs = o.epochs;
  options.seed = o.seed;
  options.direction = {src_lang, tgt_lang};
  if (o.reverse) {
    for (auto& [s, t] : corpus.pairs) std::swap(s, t);
    lex = lex.reversed();
    options.direction = {tgt_lang, src_lang};
  }
  const TrainResult result = train(corpus, lex, options);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';

  OutputFile file(o.out);
  file.stream() << model_to_json(result.model);
  file.commit();

  ordered_json j;
  j["model"] = o.out;
  j["direction"] = result.model.direction.first + "->" + result.model.direction.second;
  j["pairs"] = corpus.size();
  j["dropped"] = corpus.dropped;
  j["train_examples"] = result.train_examples;
  j["heldout_examples"] = result.heldout_examples;
  j["heldout_f1"] = result.heldout_f1;
  j["heldout_auc"] = result.heldout_auc;
  j["default_threshold"] = result.model.default_threshold;
  j["default_penalty"] = result.model.default_penalty;
  j["seed"] = o.seed;
  print_json_or_table(out, o.json, j);
  return kExitOk;
}

int cmd_tune(const Options& o, std::ostream& out, std::ostream&) {
  const ClassifierModel model = load_model(o.model);
  Lexicon lex = load_lexicon(o.lexicon);
  bool swapped = false;
  const GoldSet dev = orient(load_gold_set(o.gold), model, swapped);
  if (swapped) lex = lex.reversed();
  TuneOptions options;
  if (!o.thresholds.empty()) options.thresholds = o.thresholds;
  if (!o.penalties.empty()) options.penalties = o.penalties;
  options.engine = parse_engine(o.engine);
  options.workers = o.workers;
  const TuneResult result = tune(model, lex, dev, options);

  OutputFile file(o.out);
  file.stream() << tune_result_to_json(result);
  file.commit();

  ordered_json j;
  j["threshold"] = result.best.threshold;
  j["penalty"] = result.best.penalty;
  j["precision"] = result.score.precision;
  j["recall"] = result.score.recall;
  j["f1"] = result.score.f1;
  j["grid_points"] = result.trace.size();
  print_json_or_table(out, o.json, j);
  return kExitOk;
}

MinerConfig miner_config(const Options& o, const ClassifierModel& forward) {
  MinerConfig cfg;
  cfg.params.threshold = o.threshold.value_or(forward.default_threshold);
  cfg.params.penalty = o.penalty.value_or(forward.default_penalty);
  cfg.workers = o.workers;
  cfg.engine = parse_engine(o.engine);
  cfg.wavefront_workers = o.wavefront_workers;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

int cmd_mine(const Options& o, std::ostream& out, std::ostream&) {
  const ClassifierModel forward = load_model(o.model);
  std::optional<ClassifierModel> backward;
  if (!o.model_rev.empty()) backward = load_model(o.model_rev);
  const Lexicon lex = load_lexicon(o.lexicon);
  const MinerConfig cfg = miner_config(o, forward);
  DocumentPairReader reader(o.docs);

  OutputFile file(o.out);
  MiningReport report;
  try {
    report = mine_corpus([&] { return reader.next(); }, forward, backward ? &*backward : nullptr,
                         lex, cfg, file.stream());
  } catch (const SinkError&) {
    file.keep_partial();
    throw;
  }
  report.docs_skipped += reader.skipped();
  std::optional<OutputFile> report_file;
  if (!o.report.empty()) {
    report_file.emplace(o.report);
    report_file->stream() << report_to_json(report);
  }
  file.commit();
  if (report_file) report_file->commit();

  ordered_json j;
  j["output"] = o.out;
  j["pairs_emitted"] = report.pairs_emitted;
  j["forward_pairs"] = report.forward_pairs;
  j["backward_pairs"] = report.backward_pairs;
  j["unique_src_tokens"] = report.unique_src_tokens;
  j["unique_tgt_tokens"] = report.unique_tgt_tokens;
  j["docs_processed"] = report.docs_processed;
  j["docs_skipped"] = report.docs_skipped;
  j["threshold"] = cfg.params.threshold;
  j["penalty"] = cfg.params.penalty;
  j["engine"] = engine_name(cfg.engine);
  j["workers"] = cfg.workers;
  j["seed"] = cfg.seed;
  print_json_or_table(out, o.json, j);
  return kExitOk;
}

int cmd_align(const Options& o, std::ostream& out, std::ostream&) {
  std::ifstream in(o.matrix);
  if (!in) throw DataError("cannot open " + o.matrix);
  const SimilarityMatrix s = read_matrix_tsv(in);
  const AlignmentPath path = align(s, *o.penalty, parse_engine(o.engine), o.wavefront_workers);
  write_path(out, path, s);
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<TokenList> hyps;
  std::vector<TokenList> refs;
  for (const auto& line : read_lines(o.hyp)) hyps.push_back(split_words(line));
  for (const auto& line : read_lines(o.ref)) refs.push_back(split_words(line));
  ordered_json j;
  j["metric"] = o.metric;
  if (o.metric == "bleu") {
    const auto r = bleu_details(hyps, refs, o.max_n == 0 ? 4 : o.max_n);
    j["score"] = r.score;
    j["details"] = {{"precisions", r.precisions},
                    {"brevity", r.brevity},
                    {"hyp_length", r.hyp_length},
                    {"ref_length", r.ref_length}};
    if (!o.json) {
      out << "BLEU = " << fixed(100.0 * r.score, 2) << " (BP " << fixed(r.brevity, 4) << ", "
          << r.hyp_length << '/' << r.ref_length << " words)\n";
      return kExitOk;
    }
  } else {
    const auto r = nist_details(hyps, refs, o.max_n == 0 ? 5 : o.max_n);
    j["score"] = r.score;
    j["details"] = {{"info_sums", r.info_sums},
                    {"order_scores", r.order_scores},
                    {"brevity", r.brevity},
                    {"hyp_length", r.hyp_length},
                    {"ref_length", r.ref_length}};
    if (!o.json) {
      out << "NIST = " << fixed(r.score, 4) << " (BP " << fixed(r.brevity, 4) << ")\n";
      return kExitOk;
    }
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream&) {
  const auto src = read_lines(o.src);
  const auto tgt = read_lines(o.tgt);
  if (src.size() != tgt.size()) {
    throw DataError("line count mismatch: " + std::to_string(src.size()) + " vs " +
                    std::to_string(tgt.size()));
  }
  std::vector<TextPair> corpus;
  corpus.reserve(src.size());
  for (std::size_t k = 0; k < src.size(); ++k) corpus.emplace_back(src[k], tgt[k]);
  const TestSplit split = sample_test_set(corpus, o.segments, o.per_segment, o.seed);

  const std::string src_ext = file_extension_or(o.src, "src");
  const std::string tgt_ext = file_extension_or(o.tgt, "tgt");
  if (src_ext == tgt_ext) throw DataError("source and target files share extension " + src_ext);
  OutputFile test_src(o.out_test + src_ext);
  OutputFile test_tgt(o.out_test + tgt_ext);
  OutputFile rest_src(o.out_rest + src_ext);
  OutputFile rest_tgt(o.out_rest + tgt_ext);
  for (const auto& [s, t] : split.test) {
    test_src.stream() << s << '\n';
    test_tgt.stream() << t << '\n';
  }
  for (const auto& [s, t] : split.remainder) {
    rest_src.stream() << s << '\n';
    rest_tgt.stream() << t << '\n';
  }
  test_src.commit();
  test_tgt.commit();
  rest_src.commit();
  rest_tgt.commit();

  ordered_json j;
  j["corpus"] = corpus.size();
  j["test"] = split.test.size();
  j["remainder"] = split.remainder.size();
  j["segments"] = o.segments;
  j["per_segment"] = o.per_segment;
  j["seed"] = o.seed;
  print_json_or_table(out, o.json, j);
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<MinedPair> pairs;
  std::size_t line_number = 0;
  for (const auto& line : read_lines(o.pairs)) {
    ++line_number;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("line " + std::to_string(line_number) + ": expected tab-separated src and tgt");
    }
    const auto tab2 = line.find('\t', tab + 1);
    MinedPair p;
    auto src = make_sentence(std::string_view(line).substr(0, tab));
    auto tgt = make_sentence(std::string_view(line).substr(
        tab + 1, tab2 == std::string::npos ? std::string::npos : tab2 - tab - 1));
    if (src) p.src = std::move(*src);
    if (tgt) p.tgt = std::move(*tgt);
    pairs.push_back(std::move(p));
  }
  const auto [src_tokens, tgt_tokens] = count_unique_tokens(pairs);
  ordered_json j;
  j["pairs"] = pairs.size();
  j["unique_src_tokens"] = src_tokens;
  j["unique_tgt_tokens"] = tgt_tokens;
  print_json_or_table(out, o.json, j);
  return kExitOk;
}

// Null sink that still counts lines.
class CountingBuffer : public std::streambuf {
 public:
  std::size_t lines = 0;

 protected:
  int overflow(int ch) override {
    if (ch == '\n') ++lines;
    return ch == traits_type::eof() ? 0 : ch;
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    for (std::streamsize k = 0; k < n; ++k) lines += s[k] == '\n';
    return n;
  }
};

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
  const ClassifierModel forward = load_model(o.model);
  std::optional<ClassifierModel> backward;
  if (!o.model_rev.empty()) backward = load_model(o.model_rev);
  const Lexicon lex = load_lexicon(o.lexicon);
  std::size_t skipped = 0;
  const auto docs = load_document_pairs(o.docs, &skipped);
  const std::vector<std::string> engines =
      o.engines.empty() ? std::vector<std::string>{"search", "sequential", "wavefront"} : o.engines;
  const std::vector<std::size_t> workers =
      o.worker_list.empty() ? std::vector<std::size_t>{1} : o.worker_list;
  // Validate the whole grid before timing anything.
  for (const auto& e : engines) parse_engine(e);
  for (const auto w : workers) {
    if (w < 1) throw DataError("workers must be >= 1");
  }

  ordered_json rows = ordered_json::array();
  for (const auto& e : engines) {
    for (const auto w : workers) {
      Options run = o;
      run.engine = e;
      run.workers = w;
      const MinerConfig cfg = miner_config(run, forward);
      CountingBuffer buffer;
      std::ostream sink(&buffer);
      const MiningReport report =
          mine_corpus(docs, forward, backward ? &*backward : nullptr, lex, cfg, sink);
      rows.push_back({{"engine", e},
                      {"workers", w},
                      {"wavefront_workers", e == "wavefront" ? o.wavefront_workers : 1},
                      {"docs", report.docs_processed},
                      {"pairs", report.pairs_emitted},
                      {"seconds", report.wall_clock_seconds}});
    }
  }
  if (o.json) {
    out << rows.dump(2) << '\n';
    return kExitOk;
  }
  out << std::left << std::setw(12) << "engine" << std::right << std::setw(8) << "workers"
      << std::setw(12) << "wf-workers" << std::setw(8) << "docs" << std::setw(9) << "pairs"
      << std::setw(12) << "seconds" << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(12) << row["engine"].get<std::string>() << std::right
        << std::setw(8) << row["workers"].get<std::size_t>() << std::setw(12)
        << row["wavefront_workers"].get<std::size_t>() << std::setw(8)
        << row["docs"].get<std::size_t>() << std::setw(9) << row["pairs"].get<std::size_t>()
        << std::setw(12) << fixed(row["seconds"].get<double>(), 3) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pmine: parallel sentence mining from comparable corpora", "pmine"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Print machine-readable JSON instead of a table");

  const auto positive = CLI::PositiveNumber;
  const auto non_negative = CLI::NonNegativeNumber;

  auto* train = app.add_subcommand("train", "Train a translation-pair classifier on a seed corpus");
  train->add_option("--src", o.src, "Source side, one sentence per line")->required();
  train->add_option("--tgt", o.tgt, "Target side, line-aligned with --src")->required();
  train->add_option("--lexicon", o.lexicon, "Lexicon TSV (src, tgt, prob)")->required();
  train->add_option("--out", o.out, "Model file to write")->required();
  train->add_flag("--reverse", o.reverse, "Train the target-to-source model");
  train->add_option("--negatives", o.negatives, "Negatives per positive")->check(positive)->capture_default_str();
  train->add_option("--epochs", o.epochs, "SGD epochs")->check(positive)->capture_default_str();
  train->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  train->add_option("--src-lang", o.src_lang, "Source language tag (default: --src extension)");
  train->add_option("--tgt-lang", o.tgt_lang, "Target language tag (default: --tgt extension)");

  auto* tune = app.add_subcommand("tune", "Grid-search threshold and penalty against gold alignments");
  tune->add_option("--model", o.model, "Model file")->required();
  tune->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();
  tune->add_option("--gold", o.gold, "Gold document pairs JSONL")->required();
  tune->add_option("--out", o.out, "Result JSON to write")->required();
  tune->add_option("--thresholds", o.thresholds, "Comma-separated threshold grid")
      ->delimiter(',')->check(CLI::Range(0.0, 1.0));
  tune->add_option("--penalties", o.penalties, "Comma-separated penalty grid")
      ->delimiter(',')->check(non_negative);
  tune->add_option("--workers", o.workers, "Concurrent grid evaluations")->check(positive);
  tune->add_option("--engine", o.engine, "sequential|wavefront|search")
      ->check(CLI::IsMember({"sequential", "wavefront", "search"}));

  auto* mine = app.add_subcommand("mine", "Mine sentence pairs from comparable document pairs");
  mine->add_option("--docs", o.docs, "Document pairs JSONL")->required();
  mine->add_option("--model", o.model, "Forward model")->required();
  mine->add_option("--model-rev", o.model_rev, "Backward model (bidirectional mining)");
  mine->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();
  mine->add_option("--out", o.out, "Mined pairs TSV")->required();
  mine->add_option("--threshold", o.threshold, "Confidence threshold (default: model)")
      ->check(CLI::Range(0.0, 1.0));
  mine->add_option("--penalty", o.penalty, "Gap penalty (default: model)")->check(non_negative);
  mine->add_option("--workers", o.workers, "Mining workers")->check(positive)->capture_default_str();
  mine->add_option("--engine", o.engine, "sequential|wavefront|search")
      ->check(CLI::IsMember({"sequential", "wavefront", "search"}))->capture_default_str();
  mine->add_option("--wavefront-workers", o.wavefront_workers, "Threads per wavefront alignment")
      ->check(positive)->capture_default_str();
  mine->add_option("--report", o.report, "Report JSON to write");

  auto* align_cmd = app.add_subcommand("align", "Align a single similarity matrix (debugging)");
  align_cmd->add_option("--matrix", o.matrix, "Matrix TSV")->required();
  align_cmd->add_option("--penalty", o.penalty, "Gap penalty")->required()->check(non_negative);
  align_cmd->add_option("--engine", o.engine, "sequential|wavefront|search")
      ->check(CLI::IsMember({"sequential", "wavefront", "search"}));
  align_cmd->add_option("--wavefront-workers", o.wavefront_workers, "Threads for wavefront")
      ->check(positive);

  auto* eval = app.add_subcommand("eval", "Score hypotheses against references");
  eval->add_option("--metric", o.metric, "bleu|nist")->required()->check(CLI::IsMember({"bleu", "nist"}));
  eval->add_option("--hyp", o.hyp, "Hypotheses, one per line")->required();
  eval->add_option("--ref", o.ref, "References, one per line")->required();
  eval->add_option("--max-n", o.max_n, "Maximum n-gram order (bleu 4, nist 5)")->check(positive);

  auto* sample = app.add_subcommand("sample", "Draw a segment-stratified test set");
  sample->add_option("--src", o.src, "Source side")->required();
  sample->add_option("--tgt", o.tgt, "Target side")->required();
  sample->add_option("--segments", o.segments, "Number of segments")->check(positive)->capture_default_str();
  sample->add_option("--per-segment", o.per_segment, "Pairs drawn per segment")->check(positive)->capture_default_str();
  sample->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sample->add_option("--out-test", o.out_test, "Test set prefix")->required();
  sample->add_option("--out-rest", o.out_rest, "Remainder prefix")->required();

  auto* stats = app.add_subcommand("stats", "Pair and unique-token counts of a mined pairs file");
  stats->add_option("--pairs", o.pairs, "Mined pairs TSV")->required();

  auto* bench = app.add_subcommand("bench", "Time mining across engines and worker counts");
  bench->add_option("--docs", o.docs, "Document pairs JSONL")->required();
  bench->add_option("--model", o.model, "Forward model")->required();
  bench->add_option("--model-rev", o.model_rev, "Backward model");
  bench->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();
  bench->add_option("--engines", o.engines, "Comma-separated engines")
      ->delimiter(',')->check(CLI::IsMember({"sequential", "wavefront", "search"}));
  bench->add_option("--workers", o.worker_list, "Comma-separated worker counts")
      ->delimiter(',')->check(positive);
  bench->add_option("--wavefront-workers", o.wavefront_workers, "Threads per wavefront alignment")
      ->check(positive);
  bench->add_option("--threshold", o.threshold, "Confidence threshold")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--penalty", o.penalty, "Gap penalty")->check(non_negative);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_flag("--json", o.json, "Print machine-readable JSON instead of a table");
  }

  std::vector<std::string> argv_storage{"pmine"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*train) return cmd_train(o, out, err);
    if (*tune) return cmd_tune(o, out, err);
    if (*mine) return cmd_mine(o, out, err);
    if (*align_cmd) return cmd_align(o, out, err);
    if (*eval) return cmd_eval(o, out, err);
    if (*sample) return cmd_sample(o, out, err);
    if (*stats) return cmd_stats(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace pmine::cli
