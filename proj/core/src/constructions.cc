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

#include "scg/constructions.h"

#include <algorithm>
#include <cctype>

#include "scg/error.h"
#include "scg/sexpr.h"
#include "scg/tagger.h"

namespace scg::cxn {
namespace {

bool is_type_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

class TemplateParser {
 public:
  explicit TemplateParser(std::string_view text) : text_(text) {}

  std::vector<TemplateElement> parse() {
    auto elements = sequence(/*nested=*/false);
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return elements;
  }

 private:
  [[noreturn]] void fail(const std::string &message) const {
    throw SyntaxError(message + " in template \"" + std::string(text_) + "\"",
                      1, static_cast<int>(pos_) + 1);
  }

  std::vector<TemplateElement> sequence(bool nested, bool *empty = nullptr) {
    std::vector<TemplateElement> out;
    auto push_text = [&](std::string s) {
      if (!out.empty() && out.back().kind == TemplateElement::Kind::kText) {
        out.back().text += s;
      } else {
        TemplateElement e;
        e.text = std::move(s);
        out.push_back(std::move(e));
      }
    };
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '|' || c == ']') {
        if (!nested) fail("unmatched '" + std::string(1, c) + "'");
        break;
      }
      if (c == '$') {
        out.push_back(slot());
      } else if (c == '[') {
        out.push_back(alternation());
      } else if (c == '{') {
        if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '}') {
          fail("'{' must be written as the empty alternative '{}'");
        }
        if (!nested) fail("'{}' outside an alternation");
        *empty = true;
        pos_ += 2;
      } else {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::string_view("$[]|{").find(text_[pos_]) ==
                   std::string_view::npos) {
          ++pos_;
        }
        push_text(std::string(text_.substr(start, pos_ - start)));
      }
    }
    return out;
  }

  TemplateElement slot() {
    ++pos_;  // '$'
    size_t start = pos_;
    while (pos_ < text_.size() && is_type_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("typed slot without a type");
    TemplateElement e;
    e.kind = TemplateElement::Kind::kSlot;
    e.slot.type = std::string(text_.substr(start, pos_ - start));
    if (pos_ >= text_.size() || text_[pos_] != '#') {
      fail("typed slot $" + e.slot.type + " needs a '#k' index");
    }
    ++pos_;
    size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == digits) fail("typed slot $" + e.slot.type + "# needs an index");
    e.slot.index = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    return e;
  }

  TemplateElement alternation() {
    ++pos_;  // '['
    TemplateElement e;
    e.kind = TemplateElement::Kind::kAlternation;
    bool empty = false;
    for (;;) {
      e.alternatives.push_back(sequence(/*nested=*/true, &empty));
      if (pos_ >= text_.size()) fail("unterminated '['");
      if (text_[pos_++] == ']') break;
    }
    if (empty) e.alternatives.emplace_back();
    return e;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

// One alternative-free flattening of a template: text pieces and slots.
using Flat = std::vector<TemplateElement>;

void append_flat(Flat *flat, const TemplateElement &e) {
  if (e.kind == TemplateElement::Kind::kText && !flat->empty() &&
      flat->back().kind == TemplateElement::Kind::kText) {
    flat->back().text += e.text;
  } else {
    flat->push_back(e);
  }
}

std::vector<Flat> expand(const std::vector<TemplateElement> &elements) {
  std::vector<Flat> out{Flat{}};
  for (const auto &e : elements) {
    if (e.kind != TemplateElement::Kind::kAlternation) {
      for (auto &f : out) append_flat(&f, e);
      continue;
    }
    std::vector<Flat> next;
    for (const auto &f : out) {
      for (const auto &alt : e.alternatives) {
        for (const auto &tail : expand(alt)) {
          Flat g = f;
          for (const auto &t : tail) append_flat(&g, t);
          next.push_back(std::move(g));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<VariantItem> to_items(const Flat &flat) {
  std::vector<VariantItem> items;
  for (const auto &e : flat) {
    if (e.kind == TemplateElement::Kind::kSlot) {
      items.push_back({true, "", e.slot});
    } else {
      for (auto &t : tagger::tokenize(e.text)) {
        items.push_back({false, std::move(t.surface), {}});
      }
    }
  }
  return items;
}

void collect_slots(const std::vector<TemplateElement> &elements,
                   std::vector<Slot> *out) {
  for (const auto &e : elements) {
    if (e.kind == TemplateElement::Kind::kSlot) out->push_back(e.slot);
    for (const auto &alt : e.alternatives) collect_slots(alt, out);
  }
}

Slot slot_of(const Expr &typed_var) {
  return {typed_var.name(), typed_var.index()};
}

[[noreturn]] void invalid(const std::string &message) {
  throw LoadError(message);
}

Construction build(const sexpr::Datum &form) {
  if (!form.is_list() || form.items.empty() ||
      !form.items[0].is_atom("construction")) {
    invalid("expected (construction ...)");
  }
  Construction c;
  std::string language = "en";
  int logic_count = 0;
  bool have_output_type = false;
  const auto &items = form.items;
  if (items.size() % 2 != 1) invalid("construction keywords must take one value each");
  int positive = 0, negative = 0;
  for (size_t i = 1; i + 1 < items.size(); i += 2) {
    const auto &key = items[i];
    const auto &value = items[i + 1];
    if (!key.is_atom() || key.text.empty() || key.text[0] != ':') {
      invalid("expected a :keyword, got " + sexpr::to_string(key));
    }
    const std::string &k = key.text;
    if (k == ":id") {
      if (!value.is_atom()) invalid(":id takes a name");
      c.id = value.text;
    } else if (k == ":lang") {
      if (!value.is_atom()) invalid(":lang takes a language tag");
      language = value.text;
    } else if (k == ":nl") {
      if (!value.is_string()) invalid(":nl takes a quoted template");
      c.nl_templates.push_back(parse_template(value.text, language));
    } else if (k == ":logic") {
      ++logic_count;
      c.logic = logic::from_datum(value);
    } else if (k == ":anaphoric") {
      if (!value.is_list()) invalid(":anaphoric takes a list of typed slots");
      for (const auto &d : value.items) {
        Expr v = logic::from_datum(d);
        if (v.kind() != logic::Kind::kTypedVar) {
          invalid("anaphoric reference must be a typed slot, got " + v.str());
        }
        c.anaphoric.push_back(slot_of(v));
      }
    } else if (k == ":output-var") {
      Expr v = logic::from_datum(value);
      if (v.kind() != logic::Kind::kQueryVar) {
        invalid(":output-var must be a query variable, got " + v.str());
      }
      c.output_var = v;
    } else if (k == ":output-type") {
      have_output_type = true;
      if (value.is_list() && value.items.size() == 2 &&
          value.items[0].is_atom("slot") && value.items[1].is_atom()) {
        try {
          c.output_type.slot = std::stoi(value.items[1].text);
        } catch (const std::exception &) {
          invalid("(slot k) needs an integer index");
        }
      } else {
        Expr t = logic::from_datum(value);
        if (!t.is_term() || !t.is_ground()) {
          invalid(":output-type must be (slot k) or a ground term");
        }
        c.output_type.type = t;
      }
    } else if (k == ":test+" || k == ":test-") {
      bool pos = k == ":test+";
      SemanticTest t;
      t.positive = pos;
      t.expr = logic::from_datum(value);
      t.id = k.substr(1) + std::to_string(pos ? positive++ : negative++);
      c.tests.push_back(std::move(t));
    } else {
      invalid("unknown construction keyword " + k);
    }
  }
  if (c.id.empty()) invalid("construction without :id");
  auto fail = [&](const std::string &m) -> void {
    invalid("construction " + c.id + ": " + m);
  };
  for (auto &t : c.tests) t.id = c.id + ":" + t.id;
  if (c.nl_templates.empty()) fail("no :nl template");
  if (logic_count == 0) fail("missing :logic template");
  if (logic_count > 1) fail("more than one :logic template");
  if (!have_output_type) fail("missing :output-type");

  // One type per unifying integer, across every place a slot can occur.
  std::map<int, std::string> types;
  auto note = [&](const Slot &s, const char *where) {
    auto [it, inserted] = types.try_emplace(s.index, s.type);
    if (!inserted && it->second != s.type) {
      fail(std::string("duplicate unifying integer #") +
           std::to_string(s.index) + " ($" + it->second + " and $" + s.type +
           ") in " + where);
    }
  };
  std::set<int> nl_indices;
  for (const auto &t : c.nl_templates) {
    std::vector<Slot> slots;
    collect_slots(t.elements, &slots);
    for (const auto &s : slots) {
      note(s, "templates");
      nl_indices.insert(s.index);
    }
  }
  std::set<int> anaphoric_indices;
  for (const auto &s : c.anaphoric) {
    note(s, "anaphoric references");
    if (nl_indices.contains(s.index)) {
      fail("anaphoric reference " + s.str() + " also occurs in an NL template");
    }
    if (!anaphoric_indices.insert(s.index).second) {
      fail("anaphoric reference " + s.str() + " listed twice");
    }
  }
  for (const auto &v : logic::typed_vars(c.logic)) {
    Slot s = slot_of(v);
    note(s, "the logic template");
    if (!nl_indices.contains(s.index) && !anaphoric_indices.contains(s.index)) {
      fail("typed slot " + s.str() +
           " in the logic template occurs in no NL template or anaphoric "
           "reference");
    }
  }
  for (const auto &t : c.tests) {
    for (const auto &v : logic::typed_vars(t.expr)) {
      Slot s = slot_of(v);
      note(s, "a semantic test");
      if (!types.contains(s.index) || (!nl_indices.contains(s.index) &&
                                       !anaphoric_indices.contains(s.index))) {
        fail("semantic test " + t.id + " uses unbound slot " + s.str());
      }
    }
  }
  if (c.output_type.slot && !types.contains(*c.output_type.slot)) {
    fail("output type refers to unknown slot #" +
         std::to_string(*c.output_type.slot));
  }
  if (c.output_var) {
    if (!c.logic.is_sentence()) {
      fail("an output variable requires sentential logic");
    }
    if (!logic::free_vars(c.logic).contains(*c.output_var)) {
      fail("output variable " + c.output_var->str() +
           " does not occur free in the logic template");
    }
  }

  // Per-variant checks.
  std::set<int> logic_indices;
  for (const auto &v : logic::typed_vars(c.logic)) logic_indices.insert(v.index());
  for (const auto &v : expand_variants(c)) {
    if (v.items.empty()) fail("a template variant is empty");
    std::set<int> seen;
    for (const auto &item : v.items) {
      if (item.is_slot && !seen.insert(item.slot.index).second) {
        fail("slot #" + std::to_string(item.slot.index) +
             " occurs twice in variant \"" + v.str() + "\"");
      }
    }
    for (int idx : logic_indices) {
      if (!seen.contains(idx) && !anaphoric_indices.contains(idx)) {
        fail("variant \"" + v.str() + "\" does not bind slot #" +
             std::to_string(idx) + " of the logic template");
      }
    }
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Slot> Construction::slots() const {
  std::map<int, Slot> all;
  for (const auto &t : nl_templates) {
    std::vector<Slot> s;
    collect_slots(t.elements, &s);
    for (auto &x : s) all.emplace(x.index, x);
  }
  for (const auto &s : anaphoric) all.emplace(s.index, s);
  std::vector<Slot> out;
  for (auto &[k, v] : all) out.push_back(v);
  return out;
}

std::optional<Slot> Construction::find_slot(int index) const {
  for (const auto &s : slots()) {
    if (s.index == index) return s;
  }
  return std::nullopt;
}

bool Construction::is_anaphoric(int index) const {
  return std::any_of(anaphoric.begin(), anaphoric.end(),
                     [&](const Slot &s) { return s.index == index; });
}

std::string TemplateVariant::str() const {
  std::string out;
  for (const auto &item : items) {
    if (!out.empty()) out += ' ';
    out += item.is_slot ? item.slot.str() : item.literal;
  }
  return out;
}

std::string key_string(const Key &key) {
  std::string out;
  for (const auto &item : key) {
    if (!out.empty()) out += ' ';
    if (item.is_slot) {
      out += item.text.empty() ? "⟨*⟩" : "⟨" + item.text + "⟩";
    } else {
      out += item.text;
    }
  }
  return out;
}

NlTemplate parse_template(std::string_view text, std::string language) {
  NlTemplate t;
  t.language = std::move(language);
  t.source = std::string(text);
  t.elements = TemplateParser(text).parse();
  if (t.elements.empty()) {
    throw SyntaxError("empty template", 1, 1);
  }
  return t;
}

std::vector<Construction> parse_constructions(std::string_view text,
                                              std::string_view name) {
  std::vector<sexpr::Datum> forms;
  try {
    forms = sexpr::read_all(text);
  } catch (const SyntaxError &e) {
    throw LoadError(std::string(name) + ":" + e.what());
  }
  std::vector<Construction> out;
  for (const auto &form : forms) {
    std::string where = std::string(name) + ":" + std::to_string(form.line);
    try {
      out.push_back(build(form));
      out.back().location = where;
    } catch (const Error &e) {
      throw LoadError(where + ": " + e.what());
    }
  }
  return out;
}

Construction parse_construction(std::string_view text) {
  auto all = parse_constructions(text);
  if (all.size() != 1) {
    throw LoadError("expected exactly one construction, found " +
                    std::to_string(all.size()));
  }
  return std::move(all.front());
}

std::vector<TemplateVariant> expand_variants(const Construction &c) {
  std::vector<TemplateVariant> out;
  for (size_t i = 0; i < c.nl_templates.size(); ++i) {
    const auto &t = c.nl_templates[i];
    for (const auto &flat : expand(t.elements)) {
      out.push_back({c.id, t.language, i, to_items(flat)});
    }
  }
  return out;
}

TemplateKeys derive_keys(const TemplateVariant &v) {
  TemplateKeys keys;
  for (const auto &item : v.items) {
    if (item.is_slot) {
      keys.skeleton.push_back({true, ""});
      keys.typed.push_back({true, item.slot.type});
    } else {
      KeyItem lit{false, tagger::fold_case(item.literal)};
      keys.skeleton.push_back(lit);
      keys.lexical.push_back(lit);
      keys.typed.push_back(lit);
    }
  }
  return keys;
}

// ---------------------------------------------------------------------------
// Repository

std::string Repository::index_key(Tier tier, std::string_view language,
                                  const Key &key) const {
  std::string out;
  out += static_cast<char>('0' + static_cast<int>(tier));
  out += '\x1f';
  out += language;
  for (const auto &item : key) {
    out += '\x1f';
    out += item.is_slot ? '\x02' : '\x01';
    out += item.text;
  }
  return out;
}

void Repository::add(Construction c) {
  if (by_id_.contains(c.id)) {
    throw LoadError("duplicate construction id " + c.id +
                    (c.location.empty() ? "" : " at " + c.location));
  }
  size_t id = constructions_.size();
  by_id_.emplace(c.id, id);
  for (auto &v : expand_variants(c)) {
    size_t vi = variants_.size();
    TemplateKeys keys = derive_keys(v);
    const Key *by_tier[3] = {&keys.lexical, &keys.skeleton, &keys.typed};
    for (int t = 0; t < 3; ++t) {
      Tier tier = static_cast<Tier>(t);
      const Key &key = *by_tier[t];
      index_[t][index_key(tier, v.language, key)].push_back(vi);
      for (size_t n = 0; n <= key.size(); ++n) {
        prefixes_[t].insert(
            index_key(tier, v.language, Key(key.begin(), key.begin() + n)));
      }
    }
    for (const auto &item : v.items) {
      if (item.is_slot) used_types_.insert(item.slot.type);
    }
    variants_.push_back(std::move(v));
  }
  constructions_.push_back(std::move(c));
}

const Construction *Repository::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &constructions_[it->second];
}

const Construction &Repository::construction_of(const TemplateVariant &v) const {
  return constructions_[by_id_.find(v.construction)->second];
}

std::vector<size_t> Repository::lookup(Tier tier, std::string_view language,
                                       const Key &key) const {
  const auto &index = index_[static_cast<int>(tier)];
  auto it = index.find(index_key(tier, language, key));
  if (it == index.end()) return {};
  return it->second;
}

bool Repository::has_prefix(Tier tier, std::string_view language,
                            const Key &prefix) const {
  return prefixes_[static_cast<int>(tier)].contains(
      index_key(tier, language, prefix));
}

Repository Repository::from_sources(std::span<const Source> sources) {
  Repository repo;
  for (const auto &s : sources) {
    for (auto &c : parse_constructions(s.text, s.name)) repo.add(std::move(c));
  }
  return repo;
}

Repository Repository::from_files(std::span<const std::string> paths) {
  std::vector<Source> sources;
  for (const auto &p : paths) sources.push_back(read_source(p));
  return from_sources(sources);
}

Repository Repository::from_text(std::string_view text, std::string_view name) {
  Source s{std::string(name), std::string(text)};
  return from_sources(std::span<const Source>(&s, 1));
}

std::vector<Diagnostic> Repository::lint(const kb::KnowledgeBase &kb) const {
  std::vector<Diagnostic> out;
  for (const auto &c : constructions_) {
    for (const auto &s : c.slots()) {
      if (!kb.known(Expr::constant(s.type))) {
        out.push_back({"unknown-slot-type", c.location,
                       "construction " + c.id + ": slot " + s.str() +
                           " has a type the KB does not know",
                       {s.type}});
      }
    }
    if (!c.output_type.slot && !kb.known(c.output_type.type)) {
      out.push_back({"unknown-output-type", c.location,
                     "construction " + c.id + ": output type " +
                         c.output_type.type.str() + " is not in the KB",
                     {c.output_type.type.str()}});
    }
  }
  return out;
}

}  // namespace scg::cxn
