#include "pmine/lexicon.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "pmine/errors.h"
#include "pmine/text.h"

namespace pmine {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    fields.push_back(line.substr(begin, tab == std::string_view::npos ? tab : tab - begin));
    if (tab == std::string_view::npos) break;
    begin = tab + 1;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ')) s.remove_suffix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Lookup>
double coverage_with(Lookup lookup, std::span<const std::string> src_tokens,
                     std::span<const std::string> tgt_tokens) {
  std::unordered_set<std::string> targets;
  for (const auto& token : tgt_tokens) targets.insert(text::normalize(token));
  std::size_t alphabetic = 0;
  std::size_t covered = 0;
  for (const auto& token : src_tokens) {
    if (!has_letter(token)) continue;
    ++alphabetic;
    for (const auto& t : lookup(text::normalize(token))) {
      if (targets.contains(t.word)) {
        ++covered;
        break;
      }
    }
  }
  return alphabetic == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(alphabetic);
}

}  // namespace

void Lexicon::insert(Table& table, std::string_view key, std::string_view value, double prob) {
  auto& list = table[std::string(key)];
  auto it = std::find_if(list.begin(), list.end(), [&](const Translation& t) { return t.word == value; });
  if (it != list.end()) {
    it->prob = std::max(it->prob, prob);
  } else {
    list.push_back({std::string(value), prob});
  }
  std::sort(list.begin(), list.end(), [](const Translation& a, const Translation& b) {
    return a.prob != b.prob ? a.prob > b.prob : a.word < b.word;
  });
}

void Lexicon::add(std::string_view src, std::string_view tgt, double prob) {
  if (!(prob > 0.0 && prob <= 1.0)) {
    throw DataError("lexicon probability " + std::to_string(prob) + " outside (0,1]");
  }
  const std::string s = text::normalize(src);
  const std::string t = text::normalize(tgt);
  const auto& list = forward_[s];
  const bool is_new = std::none_of(list.begin(), list.end(),
                                   [&](const Translation& x) { return x.word == t; });
  insert(forward_, s, t, prob);
  insert(backward_, t, s, prob);
  if (is_new) ++pair_count_;
}

std::span<const Translation> Lexicon::translations(std::string_view src_word) const {
  auto it = forward_.find(std::string(src_word));
  if (it == forward_.end()) return {};
  return it->second;
}

std::span<const Translation> Lexicon::reverse_translations(std::string_view tgt_word) const {
  auto it = backward_.find(std::string(tgt_word));
  if (it == backward_.end()) return {};
  return it->second;
}

Lexicon Lexicon::reversed() const {
  Lexicon out;
  out.forward_ = backward_;
  out.backward_ = forward_;
  out.pair_count_ = pair_count_;
  out.direction = {direction.second, direction.first};
  return out;
}

Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 3) {
      throw DataError("lexicon line " + std::to_string(line_number) + ": expected 3 columns, got " +
                      std::to_string(fields.size()));
    }
    double prob = 0.0;
    if (!parse_double(fields[2], prob)) {
      throw DataError("lexicon line " + std::to_string(line_number) + ": bad probability '" +
                      std::string(fields[2]) + "'");
    }
    if (!(prob > 0.0 && prob <= 1.0)) {
      throw DataError("lexicon line " + std::to_string(line_number) + ": probability " +
                      std::string(fields[2]) + " outside (0,1]");
    }
    lex.add(fields[0], fields[1], prob);
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return parse_lexicon(in);
}

bool has_letter(std::string_view token) {
  std::size_t pos = 0;
  while (pos < token.size()) {
    const auto [c, next] = text::decode_at(token, pos);
    if (text::is_letter(c)) return true;
    pos = next;
  }
  return false;
}

bool is_number_token(std::string_view token) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  while (pos < token.size()) {
    const auto [c, next] = text::decode_at(token, pos);
    if (!text::is_digit(c)) return false;
    pos = next;
  }
  return true;
}

double coverage(const Lexicon& lex, std::span<const std::string> src_tokens,
                std::span<const std::string> tgt_tokens) {
  return coverage_with([&](const std::string& w) { return lex.translations(w); }, src_tokens,
                       tgt_tokens);
}

double reverse_coverage(const Lexicon& lex, std::span<const std::string> src_tokens,
                        std::span<const std::string> tgt_tokens) {
  return coverage_with([&](const std::string& w) { return lex.reverse_translations(w); },
                       src_tokens, tgt_tokens);
}

}  // namespace pmine
