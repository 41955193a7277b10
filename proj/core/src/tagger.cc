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

#include "scg/tagger.h"

#include <algorithm>
#include <cctype>

#include "scg/error.h"
#include "scg/sexpr.h"

namespace scg::tagger {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Characters that always form a token of their own.
bool is_break(char c) {
  switch (c) {
    case '-':
    case '(':
    case ')':
    case '[':
    case ']':
    case '{':
    case '}':
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case '"':
      return true;
    default:
      return false;
  }
}

size_t code_points(std::string_view s) {
  size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string join_keys(std::span<const Token> tokens) {
  std::string key;
  for (const auto &t : tokens) {
    if (!key.empty()) key += ' ';
    key += t.key;
  }
  return key;
}

bool adjacent(std::span<const Token> tokens) {
  for (size_t i = 1; i < tokens.size(); ++i) {
    if (tokens[i - 1].end != tokens[i].begin) return false;
  }
  return true;
}

void segment_from(std::string_view word, size_t pos,
                  std::vector<std::string> *current, const Lexicon &lexicon,
                  std::vector<std::vector<std::string>> *out) {
  constexpr size_t kMaxDecompositions = 64;
  if (out->size() >= kMaxDecompositions) return;
  if (pos == word.size()) {
    if (current->size() >= 2) out->push_back(*current);
    return;
  }
  if (is_digit(word[pos])) {
    size_t q = pos;
    while (q < word.size() && is_digit(word[q])) ++q;
    current->emplace_back(word.substr(pos, q - pos));
    segment_from(word, q, current, lexicon, out);
    current->pop_back();
    return;
  }
  for (size_t len = word.size() - pos; len >= 1; --len) {
    std::string_view piece = word.substr(pos, len);
    if (!lexicon.contains(piece)) continue;
    current->emplace_back(piece);
    segment_from(word, pos + len, current, lexicon, out);
    current->pop_back();
  }
}

}  // namespace

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_numeral_token(std::string_view s) {
  if (s.empty() || !is_digit(s.front()) || !is_digit(s.back())) return false;
  int dots = 0;
  for (char c : s) {
    if (c == '.') {
      ++dots;
    } else if (!is_digit(c)) {
      return false;
    }
  }
  return dots <= 1;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t start = std::string_view::npos;
  auto flush = [&](size_t end) {
    if (start != std::string_view::npos && end > start) {
      std::string surface(text.substr(start, end - start));
      tokens.push_back({surface, start, end, std::nullopt, surface});
    }
    start = std::string_view::npos;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_space(c)) {
      flush(i);
      continue;
    }
    bool numeric_joint = (c == '.' || c == ',') && i > 0 &&
                         i + 1 < text.size() && is_digit(text[i - 1]) &&
                         is_digit(text[i + 1]);
    if (is_break(c) && !numeric_joint) {
      flush(i);
      std::string surface(1, c);
      tokens.push_back({surface, i, i + 1, std::nullopt, surface});
      continue;
    }
    if (start == std::string_view::npos) start = i;
  }
  flush(text.size());
  return tokens;
}

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::add(std::string_view surface, std::vector<Expr> readings,
                  bool exact_case) {
  auto pieces = tokenize(surface);
  if (pieces.empty()) throw LoadError("empty lexicon surface");
  if (readings.empty()) {
    throw LoadError("lexicon entry \"" + std::string(surface) +
                    "\" has no readings");
  }
  std::string key = join_keys(pieces);
  max_tokens_ = std::max(max_tokens_, pieces.size());
  auto [it, inserted] = exact_.try_emplace(key);
  Entry &entry = it->second;
  if (inserted) {
    entry.surface = key;
    entry.exact_case = exact_case;
  } else {
    entry.exact_case = entry.exact_case && exact_case;
  }
  entry.readings.insert(readings.begin(), readings.end());
  if (!exact_case && code_points(key) > 1) {
    folded_[fold_case(key)].insert(readings.begin(), readings.end());
  }
}

std::vector<Expr> Lexicon::lookup(std::string_view key) const {
  std::set<Expr> out;
  if (auto it = exact_.find(key); it != exact_.end()) {
    out.insert(it->second.readings.begin(), it->second.readings.end());
  }
  if (code_points(key) > 1) {
    if (auto it = folded_.find(fold_case(key)); it != folded_.end()) {
      out.insert(it->second.begin(), it->second.end());
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Lexicon::Entry> Lexicon::entries() const {
  std::vector<Entry> out;
  for (const auto &[key, entry] : exact_) out.push_back(entry);
  return out;
}

Lexicon Lexicon::from_sources(std::span<const Source> sources) {
  Lexicon lexicon;
  for (const auto &source : sources) {
    std::vector<sexpr::Datum> forms;
    try {
      forms = sexpr::read_all(source.text);
    } catch (const SyntaxError &e) {
      throw LoadError(source.name + ":" + e.what());
    }
    for (const auto &form : forms) {
      std::string where = source.name + ":" + std::to_string(form.line);
      try {
        if (!form.is_list() || form.items.size() < 3 ||
            !(form.items[0].is_atom("lex") || form.items[0].is_atom("lex-nat"))) {
          throw LoadError("expected (lex \"surface\" Term ...) or "
                          "(lex-nat \"surface\" EXPR)");
        }
        if (!form.items[1].is_string()) {
          throw LoadError("lexicon surface must be a string");
        }
        bool nat_form = form.items[0].is_atom("lex-nat");
        bool exact = false;
        std::vector<Expr> readings;
        for (size_t i = 2; i < form.items.size(); ++i) {
          const auto &d = form.items[i];
          if (d.is_atom(":exact-case")) {
            exact = true;
            continue;
          }
          if (d.is_atom() && !d.text.empty() && d.text[0] == ':') {
            throw LoadError("unknown lexicon option " + d.text);
          }
          Expr reading = logic::from_datum(d);
          if (!reading.is_term() || !reading.is_ground()) {
            throw LoadError("lexicon reading must be a ground term: " +
                            reading.str());
          }
          if (nat_form && reading.kind() != logic::Kind::kNat) {
            throw LoadError("lex-nat reading must be a non-atomic term: " +
                            reading.str());
          }
          readings.push_back(reading);
        }
        if (nat_form && readings.size() != 1) {
          throw LoadError("lex-nat takes exactly one expression");
        }
        lexicon.add(form.items[1].text, std::move(readings), exact);
      } catch (const Error &e) {
        throw LoadError(where + ": " + e.what());
      }
    }
  }
  return lexicon;
}

Lexicon Lexicon::from_files(std::span<const std::string> paths) {
  std::vector<Source> sources;
  for (const auto &p : paths) sources.push_back(read_source(p));
  return from_sources(sources);
}

Lexicon Lexicon::from_text(std::string_view text, std::string_view name) {
  Source s{std::string(name), std::string(text)};
  return from_sources(std::span<const Source>(&s, 1));
}

// ---------------------------------------------------------------------------
// Segmentation and tagging

std::vector<std::vector<std::string>> segment(std::string_view word,
                                              const Lexicon &lexicon) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> current;
  segment_from(word, 0, &current, lexicon, &out);
  return out;
}

TagChart tag(std::string_view text, const Lexicon &lexicon) {
  std::vector<Token> raw = tokenize(text);

  // Join hyphen-separated runs that form a lexicon entry, longest first.
  std::vector<Token> joined;
  std::vector<bool> was_joined;
  for (size_t i = 0; i < raw.size();) {
    size_t best = 0;
    if (raw[i].surface != "-") {
      size_t run = 1;
      while (i + run + 1 < raw.size() && raw[i + run].surface == "-" &&
             raw[i + run + 1].surface != "-") {
        run += 2;
      }
      for (size_t len = run; len >= 3; len -= 2) {
        std::span<const Token> window(raw.data() + i, len);
        if (adjacent(window) && lexicon.contains(join_keys(window))) {
          best = len;
          break;
        }
      }
    }
    if (best) {
      std::span<const Token> window(raw.data() + i, best);
      Token t;
      t.begin = window.front().begin;
      t.end = window.back().end;
      t.surface = std::string(text.substr(t.begin, t.end - t.begin));
      t.key = join_keys(window);
      joined.push_back(std::move(t));
      was_joined.push_back(true);
      i += best;
    } else {
      joined.push_back(raw[i]);
      was_joined.push_back(false);
      ++i;
    }
  }

  // Segment words the lexicon does not know as a whole.
  TagChart chart;
  for (size_t i = 0; i < joined.size(); ++i) {
    const Token &t = joined[i];
    bool candidate = !was_joined[i] && code_points(t.surface) > 1 &&
                     !is_numeral_token(t.surface) && !lexicon.contains(t.key);
    std::vector<std::vector<std::string>> parts;
    if (candidate) parts = segment(t.surface, lexicon);
    if (parts.empty()) {
      chart.tokens.push_back(t);
      continue;
    }
    size_t offset = t.begin;
    for (auto &piece : parts.front()) {
      Token sub;
      sub.begin = offset;
      sub.end = offset + piece.size();
      sub.parent = std::make_pair(t.begin, t.end);
      sub.key = piece;
      sub.surface = std::move(piece);
      offset = sub.end;
      chart.tokens.push_back(std::move(sub));
    }
  }

  const auto &tokens = chart.tokens;
  size_t width = std::max<size_t>(1, lexicon.max_tokens());
  for (size_t i = 0; i < tokens.size(); ++i) {
    for (size_t j = i + 1; j <= std::min(tokens.size(), i + width); ++j) {
      std::span<const Token> window(tokens.data() + i, j - i);
      std::vector<Expr> concepts = lexicon.lookup(join_keys(window));
      if (j == i + 1 && is_numeral_token(tokens[i].surface)) {
        Expr n = logic::parse_expr(tokens[i].surface);
        if (std::find(concepts.begin(), concepts.end(), n) == concepts.end()) {
          concepts.push_back(n);
          std::sort(concepts.begin(), concepts.end());
        }
      }
      if (!concepts.empty()) chart.spans.push_back({i, j, std::move(concepts)});
    }
  }
  return chart;
}

}  // namespace scg::tagger
