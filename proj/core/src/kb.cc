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

#include "scg/kb.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <sstream>

#include "scg/error.h"
#include "scg/sexpr.h"

namespace scg {

Source read_source(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {path, buffer.str()};
}

}  // namespace scg

namespace scg::kb {

using logic::Kind;

std::string_view violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kArgIsa:
      return "argIsa";
    case Violation::Kind::kArgGenls:
      return "argGenls";
    case Violation::Kind::kInstanceForSpecialization:
      return "instance-for-specialization";
    case Violation::Kind::kSpecializationForInstance:
      return "specialization-for-instance";
    case Violation::Kind::kInterArg:
      return "interArg";
    case Violation::Kind::kKnownFalse:
      return "known-false";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Loading

class KnowledgeBase::Loader {
 public:
  Loader(KnowledgeBase &kb, std::vector<Diagnostic> *findings)
      : kb_(kb), findings_(findings) {}

  void load(const Source &source) {
    std::vector<sexpr::Datum> forms;
    try {
      forms = sexpr::read_all(source.text);
    } catch (const SyntaxError &e) {
      report("syntax", source.name + ":" + std::to_string(e.line()),
             e.what());
      return;
    }
    for (const auto &form : forms) {
      std::string where = source.name + ":" + std::to_string(form.line);
      try {
        load_form(form);
      } catch (const Error &e) {
        report("load-error", where, e.what());
      }
    }
  }

 private:
  [[noreturn]] static void bad(const std::string &message) {
    throw LoadError(message);
  }

  void report(const std::string &code, const std::string &where,
              const std::string &message) {
    if (!findings_) throw LoadError(where + ": " + message);
    findings_->push_back({code, where, message, {}});
  }

  static const std::string &atom_text(const sexpr::Datum &d,
                                      const char *what) {
    if (!d.is_atom()) bad(std::string("expected ") + what);
    return d.text;
  }

  static int position(const sexpr::Datum &d) {
    const std::string &s = atom_text(d, "an argument position");
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      bad("argument position must be a positive integer, got '" + s + "'");
    }
    int n = std::stoi(s);
    if (n < 1) bad("argument positions are 1-based");
    return n;
  }

  static Expr term(const sexpr::Datum &d) {
    Expr t = logic::from_datum(d);
    if (!t.is_term() || !t.is_ground()) {
      bad("expected a ground term, got " + t.str());
    }
    return t;
  }

  static TypeKind type_kind(const sexpr::Datum &d) {
    const std::string &s = atom_text(d, "isa or genls");
    if (s == "isa") return TypeKind::kIsa;
    if (s == "genls") return TypeKind::kGenls;
    bad("expected isa or genls, got '" + s + "'");
  }

  void arity(const sexpr::Datum &form, size_t n) {
    if (form.items.size() != n + 1) {
      bad("(" + form.items[0].text + " ...) takes " + std::to_string(n) +
          " arguments");
    }
  }

  void check_position(const std::string &relation, int pos) {
    if (const auto *sig = kb_.signature(relation); sig && pos > sig->arity) {
      bad("position " + std::to_string(pos) + " exceeds the arity of " +
          relation);
    }
  }

  void load_form(const sexpr::Datum &form) {
    if (!form.is_list() || form.items.empty() || !form.items[0].is_atom()) {
      bad("expected a (keyword ...) form");
    }
    const std::string &head = form.items[0].text;
    const auto &a = form.items;
    if (head == "isa" || head == "genls") {
      arity(form, 2);
      Expr specific = term(a[1]);
      Expr general = term(a[2]);
      if (specific == general) bad("link relates " + specific.str() + " to itself");
      bool genls = head == "genls";
      kb_.links_.push_back({genls ? LinkKind::kGenls : LinkKind::kIsa,
                            specific, general});
      auto &s = kb_.intern(specific);
      (genls ? s.genls_up : s.isa_up).push_back(general.str());
      auto &g = kb_.intern(general);
      g.collection_evidence = true;
      if (genls) kb_.terms_.at(specific.str()).collection_evidence = true;
    } else if (head == "fact") {
      arity(form, 2);
      const std::string &ctx = atom_text(a[1], "a context name");
      Expr atom = logic::from_datum(a[2]);
      if (atom.kind() != Kind::kApp) bad("fact must be a predicate application");
      if (!atom.is_ground()) bad("fact must be ground: " + atom.str());
      for (const auto &arg : atom.args()) {
        if (arg.kind() == Kind::kConstant || arg.kind() == Kind::kNat) {
          kb_.intern(arg);
        }
      }
      kb_.facts_by_predicate_[atom.head().str()].push_back(kb_.facts_.size());
      kb_.facts_.push_back({atom, ctx});
    } else if (head == "fn") {
      arity(form, 3);
      FunctionSignature sig;
      sig.functor = atom_text(a[1], "a functor name");
      sig.arity = position(a[2]);
      const auto &rule = a[3];
      if (!rule.is_list() || rule.items.size() != 2 || !rule.items[0].is_atom()) {
        bad("malformed result rule for " + sig.functor);
      }
      const std::string &kind = rule.items[0].text;
      if (kind == "resultIsa" || kind == "resultGenls") {
        sig.rule = kind == "resultIsa" ? FunctionSignature::Rule::kResultIsa
                                       : FunctionSignature::Rule::kResultGenls;
        sig.collection = atom_text(rule.items[1], "a collection");
        kb_.intern(Expr::constant(sig.collection)).collection_evidence = true;
      } else if (kind == "resultGenlsArg") {
        sig.rule = FunctionSignature::Rule::kResultGenlsArg;
        sig.arg = position(rule.items[1]);
        if (sig.arg > sig.arity) {
          bad("resultGenlsArg index exceeds the arity of " + sig.functor);
        }
      } else {
        bad("unknown result rule '" + kind + "'");
      }
      kb_.intern(Expr::constant(sig.functor));
      kb_.signatures_[sig.functor] = sig;
    } else if (head == "argIsa" || head == "argGenls") {
      arity(form, 3);
      ArgConstraint c;
      c.relation = atom_text(a[1], "a relation");
      c.position = position(a[2]);
      c.kind = head == "argIsa" ? TypeKind::kIsa : TypeKind::kGenls;
      c.required = atom_text(a[3], "a collection");
      check_position(c.relation, c.position);
      kb_.intern(Expr::constant(c.relation));
      kb_.intern(Expr::constant(c.required)).collection_evidence = true;
      kb_.arg_constraints_.push_back(c);
    } else if (head == "interArgGenls" || head == "interArgIsa" ||
               head == "interArg") {
      InterArgConstraint c;
      c.relation = atom_text(a[1], "a relation");
      if (head == "interArg") {
        arity(form, 7);
        c.if_position = position(a[2]);
        c.if_kind = type_kind(a[3]);
        c.if_type = atom_text(a[4], "a collection");
        c.then_position = position(a[5]);
        c.then_kind = type_kind(a[6]);
        c.then_type = atom_text(a[7], "a collection");
      } else {
        arity(form, 5);
        TypeKind k = head == "interArgIsa" ? TypeKind::kIsa : TypeKind::kGenls;
        c.if_position = position(a[2]);
        c.if_kind = k;
        c.if_type = atom_text(a[3], "a collection");
        c.then_position = position(a[4]);
        c.then_kind = k;
        c.then_type = atom_text(a[5], "a collection");
      }
      if (c.if_position == c.then_position) {
        bad("inter-argument constraint positions must differ");
      }
      check_position(c.relation, c.if_position);
      check_position(c.relation, c.then_position);
      kb_.intern(Expr::constant(c.relation));
      kb_.intern(Expr::constant(c.if_type)).collection_evidence = true;
      kb_.intern(Expr::constant(c.then_type)).collection_evidence = true;
      kb_.inter_arg_constraints_.push_back(c);
    } else if (head == "disjoint") {
      arity(form, 2);
      const std::string &l = atom_text(a[1], "a collection");
      const std::string &r = atom_text(a[2], "a collection");
      if (l == r) bad(l + " declared disjoint with itself");
      kb_.intern(Expr::constant(l)).collection_evidence = true;
      kb_.intern(Expr::constant(r)).collection_evidence = true;
      kb_.disjoint_[l].insert(r);
      kb_.disjoint_[r].insert(l);
    } else if (head == "individual" || head == "collection") {
      arity(form, 1);
      auto &info = kb_.intern(term(a[1]));
      (head == "individual" ? info.declared_individual
                            : info.declared_collection) = true;
    } else {
      bad("unknown KB form '" + head + "'");
    }
  }

  KnowledgeBase &kb_;
  std::vector<Diagnostic> *findings_;
};

KnowledgeBase KnowledgeBase::from_sources(std::span<const Source> sources,
                                          std::vector<Diagnostic> *findings) {
  KnowledgeBase kb;
  Loader loader(kb, findings);
  for (const auto &s : sources) loader.load(s);
  if (findings) {
    auto more = kb.lint();
    findings->insert(findings->end(), more.begin(), more.end());
  } else if (auto cycles = kb.genls_cycles(); !cycles.empty()) {
    std::string names;
    for (const auto &n : cycles.front()) names += (names.empty() ? "" : ", ") + n;
    throw LoadError("genls cycle among " + names);
  }
  return kb;
}

KnowledgeBase KnowledgeBase::from_files(std::span<const std::string> paths,
                                        std::vector<Diagnostic> *findings) {
  std::vector<Source> sources;
  for (const auto &p : paths) sources.push_back(read_source(p));
  return from_sources(sources, findings);
}

KnowledgeBase KnowledgeBase::from_text(std::string_view text,
                                       std::string_view name) {
  Source s{std::string(name), std::string(text)};
  return from_sources(std::span<const Source>(&s, 1));
}

// ---------------------------------------------------------------------------
// Taxonomy

KnowledgeBase::TermInfo &KnowledgeBase::intern(const Expr &term) {
  auto [it, inserted] = terms_.try_emplace(term.str());
  if (inserted) it->second.term = term;
  return it->second;
}

const KnowledgeBase::TermInfo *KnowledgeBase::find(const Expr &term) const {
  auto it = terms_.find(term.str());
  return it == terms_.end() ? nullptr : &it->second;
}

const FunctionSignature *KnowledgeBase::signature(
    std::string_view functor) const {
  auto it = signatures_.find(functor);
  return it == signatures_.end() ? nullptr : &it->second;
}

bool KnowledgeBase::known(const Expr &term) const {
  if (term.is_null()) return false;
  switch (term.kind()) {
    case Kind::kNumeral:
    case Kind::kText:
      return true;
    case Kind::kConstant:
      return find(term) != nullptr;
    case Kind::kNat:
      return find(term) != nullptr || signature(term.name()) != nullptr;
    default:
      return false;
  }
}

void KnowledgeBase::require_known(const Expr &term) const {
  if (!known(term)) throw UnknownTermError(term.is_null() ? "<null>" : term.str());
}

bool KnowledgeBase::is_collection(const Expr &term) const {
  switch (term.kind()) {
    case Kind::kNumeral:
    case Kind::kText:
      return false;
    case Kind::kNat: {
      if (const auto *info = find(term)) {
        if (info->declared_collection) return true;
        if (info->declared_individual) return false;
      }
      const auto *sig = signature(term.name());
      if (sig) return sig->rule != FunctionSignature::Rule::kResultIsa;
      const auto *info = find(term);
      return info && info->collection_evidence;
    }
    case Kind::kConstant: {
      const auto *info = find(term);
      if (!info) return false;
      if (info->declared_collection) return true;
      if (info->declared_individual) return false;
      return info->collection_evidence;
    }
    default:
      return false;
  }
}

std::vector<Expr> KnowledgeBase::up(const Expr &term, bool isa,
                                    bool genls) const {
  std::vector<Expr> out;
  const TermInfo *info = find(term);
  if (info) {
    if (isa) {
      for (const auto &k : info->isa_up) out.push_back(terms_.at(k).term);
    }
    if (genls) {
      for (const auto &k : info->genls_up) out.push_back(terms_.at(k).term);
    }
  }
  bool explicit_links =
      info && (!info->isa_up.empty() || !info->genls_up.empty());
  if (term.kind() == Kind::kNat && !explicit_links) {
    if (const auto *sig = signature(term.name())) {
      using Rule = FunctionSignature::Rule;
      switch (sig->rule) {
        case Rule::kResultIsa:
          if (isa) out.push_back(Expr::constant(sig->collection));
          break;
        case Rule::kResultGenls:
          if (genls) out.push_back(Expr::constant(sig->collection));
          break;
        case Rule::kResultGenlsArg:
          if (genls && static_cast<size_t>(sig->arg) <= term.args().size()) {
            out.push_back(term.args()[sig->arg - 1]);
          }
          break;
      }
    }
  }
  if (isa && term.kind() == Kind::kNumeral) {
    const auto &v = term.value();
    if (boost::multiprecision::denominator(v) != 1) {
      out.push_back(Expr::constant("RealNumber"));
    } else {
      out.push_back(Expr::constant(v > 0 ? "PositiveInteger" : "Integer"));
    }
  }
  if (isa && term.kind() == Kind::kText) {
    out.push_back(Expr::constant("CharacterString"));
  }
  return out;
}

std::set<Expr> KnowledgeBase::closure(const Expr &term, bool isa,
                                      bool genls) const {
  std::set<Expr> seen{term};
  std::deque<Expr> queue{term};
  while (!queue.empty()) {
    Expr t = std::move(queue.front());
    queue.pop_front();
    for (auto &g : up(t, isa, genls)) {
      if (seen.insert(g).second) queue.push_back(std::move(g));
    }
  }
  return seen;
}

std::set<Expr> KnowledgeBase::generalizations(const Expr &term) const {
  require_known(term);
  return closure(term, true, true);
}

std::set<Expr> KnowledgeBase::genls_closure(const Expr &term) const {
  require_known(term);
  return closure(term, false, true);
}

std::set<Expr> KnowledgeBase::isa_closure(const Expr &term) const {
  require_known(term);
  std::set<Expr> out;
  for (const auto &c : up(term, true, false)) {
    auto g = closure(c, false, true);
    out.insert(g.begin(), g.end());
  }
  return out;
}

bool KnowledgeBase::subsumes(const Expr &general, const Expr &specific,
                             SubsumptionMode mode) const {
  require_known(general);
  require_known(specific);
  if (mode == SubsumptionMode::kAuto) {
    mode = is_collection(specific) ? SubsumptionMode::kGenls
                                   : SubsumptionMode::kIsa;
  }
  if (mode == SubsumptionMode::kGenls) {
    return closure(specific, false, true).contains(general);
  }
  return isa_closure(specific).contains(general);
}

Expr KnowledgeBase::result_type(const Expr &nat) const {
  if (nat.kind() != Kind::kNat) throw Error("result_type of non-NAT " + nat.str());
  const auto *sig = signature(nat.name());
  if (!sig) throw UntypedTermError(nat.str());
  using Rule = FunctionSignature::Rule;
  if (sig->rule != Rule::kResultGenlsArg) return Expr::constant(sig->collection);
  if (static_cast<size_t>(sig->arg) > nat.args().size()) {
    throw StructuralError("missing argument " + std::to_string(sig->arg) +
                              " of " + nat.name(),
                          "");
  }
  const Expr &arg = nat.args()[sig->arg - 1];
  if (arg.kind() == Kind::kNat && signature(arg.name())) return result_type(arg);
  return arg;
}

bool KnowledgeBase::disjoint(std::string_view a, std::string_view b) const {
  auto it = disjoint_.find(a);
  return it != disjoint_.end() && it->second.contains(std::string(b));
}

std::vector<std::string> KnowledgeBase::constants() const {
  std::vector<std::string> out;
  for (const auto &[key, info] : terms_) {
    if (info.term.kind() == Kind::kConstant) out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Facts

bool KnowledgeBase::term_matches(const Expr &general,
                                 const Expr &specific) const {
  if (general == specific) return true;
  if (!general.is_term() || !specific.is_term()) return false;
  if (!known(general) || !known(specific)) return false;
  return subsumes(general, specific, SubsumptionMode::kAuto);
}

bool KnowledgeBase::holds(const Expr &atom, const ContextStack &ctx) const {
  switch (atom.kind()) {
    case Kind::kAnd:
      return std::all_of(atom.args().begin(), atom.args().end(),
                         [&](const Expr &c) { return holds(c, ctx); });
    case Kind::kNot:
      return !holds(atom.args().front(), ctx);
    case Kind::kApp:
      break;
    default:
      return false;
  }
  if (!atom.is_ground()) return false;
  const Expr &head = atom.head();
  auto args = atom.args();
  if (head.kind() == Kind::kConstant && args.size() == 2) {
    const std::string &p = head.name();
    if (p == "equals") return args[0] == args[1];
    if (p == "isa" || p == "genls") {
      if (known(args[0]) && known(args[1]) &&
          subsumes(args[1], args[0],
                   p == "isa" ? SubsumptionMode::kIsa : SubsumptionMode::kGenls)) {
        return true;
      }
    }
  }
  auto it = facts_by_predicate_.find(head.str());
  if (it == facts_by_predicate_.end()) return false;
  for (size_t idx : it->second) {
    const Fact &f = facts_[idx];
    if (f.context != ctx.base && f.context != ctx.overlay) continue;
    auto fargs = f.atom.args();
    if (fargs.size() != args.size()) continue;
    bool all = true;
    for (size_t i = 0; i < args.size() && all; ++i) {
      all = term_matches(fargs[i], args[i]);
    }
    if (all) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lint

std::vector<std::vector<std::string>> KnowledgeBase::genls_cycles() const {
  // Tarjan's strongly connected components over genls links.
  std::vector<std::string> names;
  for (const auto &[k, v] : terms_) names.push_back(k);
  std::sort(names.begin(), names.end());
  std::unordered_map<std::string, int> index, low;
  std::unordered_map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> cycles;
  int counter = 0;
  std::function<void(const std::string &)> visit = [&](const std::string &v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto &w : terms_.at(v).genls_up) {
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> scc;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      const auto &ups = terms_.at(v).genls_up;
      if (scc.size() > 1 || std::find(ups.begin(), ups.end(), v) != ups.end()) {
        std::sort(scc.begin(), scc.end());
        cycles.push_back(std::move(scc));
      }
    }
  };
  for (const auto &n : names) {
    if (!index.contains(n)) visit(n);
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::vector<Diagnostic> KnowledgeBase::lint() const {
  std::vector<Diagnostic> out;
  for (auto &cycle : genls_cycles()) {
    std::string names;
    for (const auto &n : cycle) names += (names.empty() ? "" : ", ") + n;
    out.push_back({"genls-cycle", "", "genls cycle among " + names, cycle});
  }
  for (const auto &[left, rights] : disjoint_) {
    for (const auto &right : rights) {
      if (left > right) continue;
      Expr l = Expr::constant(left), r = Expr::constant(right);
      bool conflict = closure(l, false, true).contains(r) ||
                      closure(r, false, true).contains(l);
      if (conflict) {
        out.push_back({"disjoint-subsumption", "",
                       left + " and " + right +
                           " are declared disjoint but one generalizes the "
                           "other",
                       {left, right}});
      }
    }
  }
  std::vector<std::string> keys;
  for (const auto &[k, v] : terms_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (const auto &k : keys) {
    const auto &info = terms_.at(k);
    if (info.declared_individual &&
        (info.declared_collection || info.collection_evidence)) {
      out.push_back({"individual-collection", "",
                     k + " is declared an individual but used as a collection",
                     {k}});
    }
    if (!disjoint_.empty() && !info.declared_individual) {
      std::set<Expr> up = is_collection(info.term) ? genls_closure(info.term)
                                                   : isa_closure(info.term);
      for (const auto &g : up) {
        if (g.kind() != Kind::kConstant) continue;
        auto it = disjoint_.find(g.name());
        if (it == disjoint_.end()) continue;
        auto other = std::find_if(up.begin(), up.end(), [&](const Expr &h) {
          return h.kind() == Kind::kConstant && g.name() < h.name() &&
                 it->second.contains(h.name());
        });
        if (other == up.end() || info.term == g || info.term == *other) {
          continue;
        }
        out.push_back({"disjoint-subsumption", "",
                       k + " falls under both " + g.name() + " and " +
                           other->name() + ", which are declared disjoint",
                       {k, g.name(), other->name()}});
        break;
      }
    }
    if (info.term.kind() == Kind::kNat) {
      const auto *sig = signature(info.term.name());
      if (!sig) {
        out.push_back({"untyped-nat", "",
                       "functor " + info.term.name() + " of " + k +
                           " has no result signature",
                       {k}});
      } else if (static_cast<size_t>(sig->arity) != info.term.args().size()) {
        out.push_back({"nat-arity", "",
                       k + " does not match the declared arity " +
                           std::to_string(sig->arity),
                       {k}});
      }
    }
  }
  return out;
}

}  // namespace scg::kb
