#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmine {

// One alignment unit. `tokens` keep the original casing; `norm_tokens` are
// the same tokens after normalization and always have the same length.
struct Sentence {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<std::string> norm_tokens;
  std::string normalized;
};

// Builds a Sentence from raw text. Returns nullopt when the text has no
// tokens (blank or whitespace only).
std::optional<Sentence> make_sentence(std::string_view raw);

struct Document {
  std::string id;
  std::string lang;
  std::vector<Sentence> sentences;  // original document order

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

struct DocumentPair {
  std::string id;
  Document source;
  Document target;
};

struct SeedCorpus {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  std::size_t dropped = 0;  // lines blank on either side

  std::size_t size() const { return pairs.size(); }
};

// Abbreviations that never end a sentence ("Dr. Smith"). Compared
// case-insensitively against the word directly before a single period.
inline constexpr std::string_view kAbbreviations[] = {"dr", "mr", "mrs", "ms", "prof",
                                                     "st", "no", "vs", "etc"};

// Rule-based splitter: a sentence ends at a run of . ! ? (plus closing quotes
// or brackets) followed by whitespace and an uppercase letter or digit
// (optionally behind an opening quote or bracket), or at end of input.
std::vector<Sentence> segment_sentences(std::string_view text);

// Maximal runs of letters/digits, and single punctuation or symbol
// characters. Digit runs never merge with surrounding punctuation.
std::vector<std::string> tokenize(std::string_view sentence);

// Streaming reader for the document-pair JSONL format:
//   {"id": str, "src_lang": str, "tgt_lang": str,
//    "src": str | [str], "tgt": str | [str]}
// A string is raw text and gets segmented; a list is taken as already
// segmented. Pairs with an empty side are skipped and counted.
class DocumentPairReader {
 public:
  explicit DocumentPairReader(const std::filesystem::path& path);

  // Next pair in file order, or nullopt at end of file. Throws DataError
  // naming the line on malformed input.
  std::optional<DocumentPair> next();

  // The JSON object backing the most recently returned pair.
  const std::string& last_line() const { return last_line_; }
  std::size_t line_number() const { return line_number_; }
  std::size_t skipped() const { return skipped_; }

 private:
  std::ifstream in_;
  std::string last_line_;
  std::size_t line_number_ = 0;
  std::size_t skipped_ = 0;
};

// Parses one JSONL document-pair record. Returns nullopt when either side is
// empty. `line` is used in error messages only.
std::optional<DocumentPair> parse_document_pair(std::string_view json_text, std::size_t line);

std::vector<DocumentPair> load_document_pairs(const std::filesystem::path& path,
                                              std::size_t* skipped = nullptr);

// Line-aligned plain-text parallel files, one sentence per line.
SeedCorpus load_seed_corpus(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path);

}  // namespace pmine
