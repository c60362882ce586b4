#include "pmine/corpus.h"

#include <algorithm>
#include <iostream>

#include "json.hpp"
#include "pmine/errors.h"
#include "pmine/text.h"

namespace pmine {
namespace {

bool is_terminator(char32_t c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == U'”' || c == U'’' ||
         c == U'»';
}

bool is_opening(char32_t c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == U'“' || c == U'‘' ||
         c == U'«';
}

bool is_ascii_alpha(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); }

// True when the word ending at `period` (exclusive) is a listed abbreviation.
bool abbreviation_before(std::string_view s, std::size_t period) {
  std::size_t begin = period;
  while (begin > 0 && is_ascii_alpha(s[begin - 1])) --begin;
  if (begin == period) return false;
  if (begin > 0) {
    const auto prev = static_cast<unsigned char>(s[begin - 1]);
    if (prev >= 0x80 || (prev >= '0' && prev <= '9')) return false;
  }
  std::string word(s.substr(begin, period - begin));
  for (char& ch : word) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return std::find(std::begin(kAbbreviations), std::end(kAbbreviations), word) !=
         std::end(kAbbreviations);
}

bool starts_sentence(std::string_view s, std::size_t pos) {
  const auto [c, next] = text::decode_at(s, pos);
  if (text::is_upper(c) || text::is_digit(c)) return true;
  if (is_opening(c) && next < s.size()) {
    const auto follow = text::decode_at(s, next).value;
    return text::is_upper(follow) || text::is_digit(follow);
  }
  return false;
}

std::string_view trim_right(std::string_view s) {
  std::size_t end = s.size();
  while (end > 0) {
    // Whitespace we care about here is ASCII or multi-byte; back up one code
    // point at a time.
    std::size_t begin = end - 1;
    while (begin > 0 && (static_cast<unsigned char>(s[begin]) & 0xC0) == 0x80) --begin;
    if (!text::is_space(text::decode_at(s, begin).value)) break;
    end = begin;
  }
  return s.substr(0, end);
}

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size()) {
    const auto [c, next] = text::decode_at(s, pos);
    if (!text::is_space(c)) break;
    pos = next;
  }
  return pos;
}

void emit(std::string_view piece, std::vector<Sentence>& out) {
  if (auto sentence = make_sentence(trim_right(piece))) out.push_back(std::move(*sentence));
}

using nlohmann::json;

const json& require_field(const json& obj, const char* name, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw DataError("line " + std::to_string(line) + ": missing field '" + name + "'");
  }
  return *it;
}

std::string require_string(const json& obj, const char* name, std::size_t line) {
  const json& value = require_field(obj, name, line);
  if (!value.is_string()) {
    throw DataError("line " + std::to_string(line) + ": field '" + name + "' must be a string");
  }
  return value.get<std::string>();
}

Document read_side(const json& obj, const char* name, std::string id, std::string lang,
                   std::size_t line) {
  const json& value = require_field(obj, name, line);
  Document doc{std::move(id), std::move(lang), {}};
  if (value.is_string()) {
    doc.sentences = segment_sentences(value.get_ref<const std::string&>());
  } else if (value.is_array()) {
    for (std::size_t k = 0; k < value.size(); ++k) {
      if (!value[k].is_string()) {
        throw DataError("line " + std::to_string(line) + ": field '" + name + "' entry " +
                        std::to_string(k) + " must be a string");
      }
      auto sentence = make_sentence(value[k].get_ref<const std::string&>());
      if (!sentence) {
        throw DataError("line " + std::to_string(line) + ": field '" + name + "' entry " +
                        std::to_string(k) + " is blank");
      }
      doc.sentences.push_back(std::move(*sentence));
    }
  } else {
    throw DataError("line " + std::to_string(line) + ": field '" + name +
                    "' must be a string or a list of strings");
  }
  return doc;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::optional<Sentence> make_sentence(std::string_view raw) {
  Sentence sentence;
  sentence.tokens = tokenize(raw);
  if (sentence.tokens.empty()) return std::nullopt;
  sentence.raw = std::string(raw);
  sentence.normalized = text::normalize(raw);
  sentence.norm_tokens.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) sentence.norm_tokens.push_back(text::normalize(token));
  return sentence;
}

std::vector<Sentence> segment_sentences(std::string_view s) {
  std::vector<Sentence> out;
  std::size_t start = skip_space(s, 0);
  std::size_t pos = start;
  while (pos < s.size()) {
    const auto [c, next] = text::decode_at(s, pos);
    if (!is_terminator(c)) {
      pos = next;
      continue;
    }
    const std::size_t run_begin = pos;
    std::size_t p = next;
    while (p < s.size()) {
      const auto d = text::decode_at(s, p);
      if (!is_terminator(d.value)) break;
      p = d.next;
    }
    const bool single_period = c == '.' && p == run_begin + 1;
    while (p < s.size()) {
      const auto d = text::decode_at(s, p);
      if (!is_closing(d.value)) break;
      p = d.next;
    }
    if (p >= s.size()) break;
    const std::size_t q = skip_space(s, p);
    if (q == p || q >= s.size()) {
      pos = p;
      continue;
    }
    if (starts_sentence(s, q) && !(single_period && abbreviation_before(s, run_begin))) {
      emit(s.substr(start, p - start), out);
      start = q;
    }
    pos = q;
  }
  if (start < s.size()) emit(s.substr(start), out);
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto [c, next] = text::decode_at(s, pos);
    if (text::is_space(c)) {
      pos = next;
    } else if (text::is_word_char(c)) {
      std::size_t end = next;
      while (end < s.size()) {
        const auto d = text::decode_at(s, end);
        if (!text::is_word_char(d.value)) break;
        end = d.next;
      }
      tokens.emplace_back(s.substr(pos, end - pos));
      pos = end;
    } else {
      tokens.emplace_back(s.substr(pos, next - pos));
      pos = next;
    }
  }
  return tokens;
}

std::optional<DocumentPair> parse_document_pair(std::string_view json_text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!obj.is_object()) {
    throw DataError("line " + std::to_string(line) + ": expected a JSON object");
  }
  DocumentPair pair;
  pair.id = require_string(obj, "id", line);
  std::string src_lang = require_string(obj, "src_lang", line);
  std::string tgt_lang = require_string(obj, "tgt_lang", line);
  if (src_lang == tgt_lang) {
    throw DataError("line " + std::to_string(line) + ": src_lang and tgt_lang are both '" +
                    src_lang + "'");
  }
  pair.source = read_side(obj, "src", pair.id, std::move(src_lang), line);
  pair.target = read_side(obj, "tgt", pair.id, std::move(tgt_lang), line);
  if (pair.source.empty() || pair.target.empty()) return std::nullopt;
  return pair;
}

DocumentPairReader::DocumentPairReader(const std::filesystem::path& path) : in_(path) {
  if (!in_) throw DataError("cannot open " + path.string());
}

std::optional<DocumentPair> DocumentPairReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto pair = parse_document_pair(line, line_number_);
    if (!pair) {
      ++skipped_;
      std::cerr << "warning: line " << line_number_ << ": empty document, pair skipped\n";
      continue;
    }
    last_line_ = std::move(line);
    return pair;
  }
  return std::nullopt;
}

std::vector<DocumentPair> load_document_pairs(const std::filesystem::path& path,
                                              std::size_t* skipped) {
  DocumentPairReader reader(path);
  std::vector<DocumentPair> pairs;
  while (auto pair = reader.next()) pairs.push_back(std::move(*pair));
  if (skipped) *skipped = reader.skipped();
  return pairs;
}

SeedCorpus load_seed_corpus(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path) {
  const auto src_lines = read_lines(src_path);
  const auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw DataError("seed corpus line count mismatch: " + std::to_string(src_lines.size()) +
                    " vs " + std::to_string(tgt_lines.size()));
  }
  SeedCorpus corpus;
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    auto src = make_sentence(src_lines[i]);
    auto tgt = make_sentence(tgt_lines[i]);
    if (!src || !tgt) {
      ++corpus.dropped;
      continue;
    }
    corpus.pairs.emplace_back(std::move(*src), std::move(*tgt));
  }
  return corpus;
}

}  // namespace pmine
