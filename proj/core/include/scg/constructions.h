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

// Constructions pair natural-language templates with a logic template and
// semantic tests. A construction file holds forms like
//
//   (construction :id big-thing
//     :lang en :nl "big $PositiveDimensionalThing#0"
//     :logic (LargeFn $PositiveDimensionalThing#0)
//     :output-type (slot 0))
//
// Template micro-syntax: "$Type#k" is a typed slot, "[a|b|c]" an
// alternation whose alternatives may be empty ("[d|]") or spelled "{}",
// and everything else is literal text. Text directly adjacent to a bracket
// glues onto the alternatives, so "place[d|]" expands to "placed" and
// "place". Expanded variants are tokenized with the same rules as input text.
//
// The repository stores every expanded variant under three exact-match keys:
// its literal tokens (lexical key), its literals with slots collapsed to a
// placeholder (skeleton key), and its literals with slots replaced by their
// types (typed key).

#ifndef SCG_CONSTRUCTIONS_H_
#define SCG_CONSTRUCTIONS_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scg/kb.h"
#include "scg/logic.h"

namespace scg::cxn {

using logic::Expr;

struct Slot {
  std::string type;
  int index = 0;

  Expr var() const { return Expr::typed_var(type, index); }
  std::string str() const { return "$" + type + "#" + std::to_string(index); }
  friend bool operator==(const Slot &, const Slot &) = default;
};

struct TemplateElement {
  enum class Kind { kText, kSlot, kAlternation };
  Kind kind = Kind::kText;
  std::string text;
  Slot slot;
  std::vector<std::vector<TemplateElement>> alternatives;
};

struct NlTemplate {
  std::string language;
  std::string source;  // the template as written
  std::vector<TemplateElement> elements;
};

struct OutputType {
  std::optional<int> slot;  // "type of slot #k"
  Expr type;                // explicit type otherwise
};

struct SemanticTest {
  std::string id;  // "<construction>:test+N" or "<construction>:test-N"
  bool positive = true;
  Expr expr;
};

struct Construction {
  std::string id;
  std::string location;  // "file:line"
  std::vector<NlTemplate> nl_templates;
  Expr logic;
  std::vector<Slot> anaphoric;
  std::optional<Expr> output_var;
  OutputType output_type;
  std::vector<SemanticTest> tests;

  // Every distinct slot mentioned by an NL template or anaphoric reference,
  // ordered by index.
  std::vector<Slot> slots() const;
  std::optional<Slot> find_slot(int index) const;
  bool is_anaphoric(int index) const;
};

struct VariantItem {
  bool is_slot = false;
  std::string literal;  // as written
  Slot slot;
};

struct TemplateVariant {
  std::string construction;
  std::string language;
  size_t template_index = 0;
  std::vector<VariantItem> items;

  std::string str() const;
};

struct KeyItem {
  bool is_slot = false;
  std::string text;  // case-folded literal, or the slot type (typed keys)

  friend bool operator==(const KeyItem &, const KeyItem &) = default;
  friend auto operator<=>(const KeyItem &, const KeyItem &) = default;
};
using Key = std::vector<KeyItem>;

std::string key_string(const Key &key);

struct TemplateKeys {
  Key skeleton;  // slots with empty text
  Key lexical;   // literals only
  Key typed;     // slots carry their type
};

// Parses template micro-syntax. Throws SyntaxError.
NlTemplate parse_template(std::string_view text, std::string language);

// Parses every (construction ...) form. Throws LoadError on any invariant
// violation, prefixed with "name:line".
std::vector<Construction> parse_constructions(std::string_view text,
                                              std::string_view name = "<text>");
// Parses exactly one construction.
Construction parse_construction(std::string_view text);

std::vector<TemplateVariant> expand_variants(const Construction &c);
TemplateKeys derive_keys(const TemplateVariant &v);

enum class Tier { kLexical, kSkeleton, kTyped };

class Repository {
 public:
  Repository() = default;

  static Repository from_sources(std::span<const Source> sources);
  static Repository from_files(std::span<const std::string> paths);
  static Repository from_text(std::string_view text,
                              std::string_view name = "<text>");

  // Throws LoadError on a duplicate id.
  void add(Construction c);

  const std::vector<Construction> &constructions() const {
    return constructions_;
  }
  const Construction *find(std::string_view id) const;
  const Construction &construction_of(const TemplateVariant &v) const;

  const std::vector<TemplateVariant> &variants() const { return variants_; }

  // Exact-match retrieval of variant indices (into variants()), restricted
  // to `language`. Sorted, distinct.
  std::vector<size_t> lookup(Tier tier, std::string_view language,
                             const Key &key) const;
  // True if `prefix` begins some stored key of that tier and language.
  bool has_prefix(Tier tier, std::string_view language,
                  const Key &prefix) const;

  const std::set<std::string> &used_types() const { return used_types_; }

  // Validates slot types and test vocabulary against a KB.
  std::vector<Diagnostic> lint(const kb::KnowledgeBase &kb) const;

 private:
  using Index = std::unordered_map<std::string, std::vector<size_t>>;
  std::string index_key(Tier tier, std::string_view language,
                        const Key &key) const;

  std::vector<Construction> constructions_;
  std::map<std::string, size_t, std::less<>> by_id_;
  std::vector<TemplateVariant> variants_;
  Index index_[3];
  std::unordered_set<std::string> prefixes_[3];
  std::set<std::string> used_types_;
};

}  // namespace scg::cxn

#endif  // SCG_CONSTRUCTIONS_H_
