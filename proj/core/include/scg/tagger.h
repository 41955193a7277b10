// Copyright 2026 The SCG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Lexicon-driven concept tagging.
//
// Text is split on whitespace; hyphens, brackets and sentence punctuation are
// split off as tokens of their own. Hyphen-separated pieces that together form
// a lexicon entry ("K-Ras") are joined back into one token, and a word the
// lexicon does not know as a whole is segmented into lexicon hits and digit
// runs when possible ("G12V" -> G 12 V). Every lexicon hit over every token
// window becomes a span carrying all of the entry's readings.
//
// Lexicon file format:
//
//   (lex "building" Building)
//   (lex "bank" Bank-Topographical BankOrganization)
//   (lex "G" Glycine Gram :exact-case)
//   (lex-nat "G" (AminoAcidResidueTypeFn Glycine) :exact-case)

#ifndef SCG_TAGGER_H_
#define SCG_TAGGER_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scg/kb.h"
#include "scg/logic.h"

namespace scg::tagger {

using logic::Expr;

struct Token {
  std::string surface;
  size_t begin = 0;  // byte offsets into the original text
  size_t end = 0;
  // Byte span of the whitespace/punctuation token this token was cut from,
  // for sub-word segments.
  std::optional<std::pair<size_t, size_t>> parent;
  // Lexicon lookup key: the surfaces of the raw tokens covered, joined by
  // single spaces ("K - Ras" for a joined "K-Ras").
  std::string key;
};

struct Span {
  size_t begin = 0;  // token indices, half-open
  size_t end = 0;
  std::vector<Expr> concepts;  // sorted, distinct
};

struct TagChart {
  std::vector<Token> tokens;
  std::vector<Span> spans;  // ordered by (begin, end)
};

// ASCII case folding; other bytes are left alone.
std::string fold_case(std::string_view s);

// True for digit runs, optionally with one decimal point between digits.
bool is_numeral_token(std::string_view s);

class Lexicon {
 public:
  struct Entry {
    std::string surface;  // normalized lookup key
    std::set<Expr> readings;
    bool exact_case = false;
  };

  Lexicon() = default;

  static Lexicon from_sources(std::span<const Source> sources);
  static Lexicon from_files(std::span<const std::string> paths);
  static Lexicon from_text(std::string_view text,
                           std::string_view name = "<text>");

  // Adds readings for `surface`. The surface is normalized through
  // tokenize(), so "K-Ras" and "K - Ras" name the same entry.
  void add(std::string_view surface, std::vector<Expr> readings,
           bool exact_case = false);

  // Exact-case readings together with case-folded readings. Single-character
  // and :exact-case entries never match case-insensitively. Sorted.
  std::vector<Expr> lookup(std::string_view key) const;
  bool contains(std::string_view key) const { return !lookup(key).empty(); }

  // Longest entry, in raw tokens.
  size_t max_tokens() const { return max_tokens_; }

  std::vector<Entry> entries() const;

 private:
  std::map<std::string, Entry, std::less<>> exact_;
  std::map<std::string, std::set<Expr>, std::less<>> folded_;
  size_t max_tokens_ = 0;
};

// Whitespace/punctuation tokenization without lexicon involvement.
std::vector<Token> tokenize(std::string_view text);

// Decompositions of `word` into at least two consecutive segments, each a
// lexicon hit or a maximal digit run. Longer lexicon hits are tried first, so
// the first decomposition is the preferred one.
std::vector<std::vector<std::string>> segment(std::string_view word,
                                              const Lexicon &lexicon);

TagChart tag(std::string_view text, const Lexicon &lexicon);

}  // namespace scg::tagger

#endif  // SCG_TAGGER_H_
