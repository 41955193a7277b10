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

// Generic s-expression reader shared by the expression parser and the
// resource file loaders (KB, lexicon, constructions).

#ifndef SCG_SEXPR_H_
#define SCG_SEXPR_H_

#include <string>
#include <string_view>
#include <vector>

namespace scg::sexpr {

struct Datum {
  enum class Type { kAtom, kString, kList };

  Type type = Type::kAtom;
  std::string text;  // atom text, or the unescaped string contents
  std::vector<Datum> items;
  int line = 1;
  int column = 1;

  bool is_atom() const { return type == Type::kAtom; }
  bool is_string() const { return type == Type::kString; }
  bool is_list() const { return type == Type::kList; }
  bool is_atom(std::string_view s) const { return is_atom() && text == s; }
};

// Reads every top-level datum in `text`. ';' starts a comment running to the
// end of the line. A leading "¬" is read as (not <datum>).
// Throws SyntaxError on unbalanced parentheses or unterminated strings.
std::vector<Datum> read_all(std::string_view text);

// Reads exactly one datum; trailing non-whitespace is a syntax error.
Datum read_one(std::string_view text);

// Prints a datum back in canonical single-line form.
std::string to_string(const Datum &d);

// Quotes and escapes a string literal.
std::string quote(std::string_view s);

}  // namespace scg::sexpr

#endif  // SCG_SEXPR_H_
