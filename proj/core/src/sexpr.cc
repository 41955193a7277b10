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

#include "scg/sexpr.h"

#include <cctype>

#include "scg/error.h"

namespace scg::sexpr {
namespace {

constexpr std::string_view kNegation = "\xC2\xAC";  // U+00AC

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_blanks();
    return pos_ >= text_.size();
  }

  Datum read() {
    skip_blanks();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    Datum d;
    d.line = line_;
    d.column = column_;
    char c = text_[pos_];
    if (text_.substr(pos_, kNegation.size()) == kNegation) {
      advance(kNegation.size());
      Datum neg;
      neg.line = d.line;
      neg.column = d.column;
      neg.text = "not";
      d.type = Datum::Type::kList;
      d.items.push_back(neg);
      d.items.push_back(read());
      return d;
    }
    if (c == '(') {
      advance(1);
      d.type = Datum::Type::kList;
      for (;;) {
        skip_blanks();
        if (pos_ >= text_.size()) {
          throw SyntaxError("unbalanced '('", d.line, d.column);
        }
        if (text_[pos_] == ')') {
          advance(1);
          break;
        }
        d.items.push_back(read());
      }
      return d;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance(1);
      d.type = Datum::Type::kString;
      for (;;) {
        if (pos_ >= text_.size()) {
          throw SyntaxError("unterminated string", d.line, d.column);
        }
        char s = text_[pos_];
        if (s == '"') {
          advance(1);
          break;
        }
        if (s == '\\' && pos_ + 1 < text_.size()) {
          advance(1);
          s = text_[pos_];
          if (s == 'n') s = '\n';
          else if (s == 't') s = '\t';
        }
        d.text.push_back(s);
        advance(1);
      }
      return d;
    }
    d.type = Datum::Type::kAtom;
    while (pos_ < text_.size()) {
      char a = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(a)) || a == '(' ||
          a == ')' || a == '"' || a == ';') {
        break;
      }
      d.text.push_back(a);
      advance(1);
    }
    return d;
  }

  [[noreturn]] void fail(const std::string &message) {
    throw SyntaxError(message, line_, column_);
  }

 private:
  void advance(size_t n) {
    for (size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      unsigned char c = text_[pos_++];
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Datum> read_all(std::string_view text) {
  Reader reader(text);
  std::vector<Datum> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

Datum read_one(std::string_view text) {
  Reader reader(text);
  if (reader.at_end()) reader.fail("empty expression");
  Datum d = reader.read();
  if (!reader.at_end()) reader.fail("trailing input after expression");
  return d;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_string(const Datum &d) {
  switch (d.type) {
    case Datum::Type::kAtom:
      return d.text;
    case Datum::Type::kString:
      return quote(d.text);
    case Datum::Type::kList: {
      std::string out = "(";
      for (size_t i = 0; i < d.items.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += to_string(d.items[i]);
      }
      out.push_back(')');
      return out;
    }
  }
  return {};
}

}  // namespace scg::sexpr
