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

// A miniature knowledge base: an isa/genls taxonomy over constants and
// non-atomic terms, ground facts scoped to contexts, function result
// signatures, and the argument/inter-argument/disjointness constraints used
// by semantic tests and plausibility checking.
//
// File format (UTF-8 s-expressions, ';' comments):
//
//   (isa TheWhiteHouse Building)
//   (genls Building PartiallyTangible)
//   (fact BaseKB ((TypeCapableFn behaviorCapable) BlowingOutAFlame
//                 objectActedOn Candle))
//   (fn LargeFn 1 (resultGenlsArg 1))
//   (argGenls SitTypeSpecWithTypeRestrictionOnRolePlayerFn 3
//             PartiallyTangible)
//   (interArgGenls properPartTypeCount 1 Intangible 2 Intangible)
//   (disjoint Bank-Topographical Business)
//   (individual TheWhiteHouse)
//   (collection Building)
//
// The KB is immutable once loaded and safe for concurrent queries.

#ifndef SCG_KB_H_
#define SCG_KB_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scg/logic.h"

namespace scg {

// A named piece of resource text, e.g. a file's contents.
struct Source {
  std::string name;
  std::string text;
};

// Reads a whole file; throws LoadError if it cannot be opened.
Source read_source(const std::string &path);

// One machine-readable finding from loading or linting resources.
struct Diagnostic {
  std::string code;      // e.g. "genls-cycle"
  std::string location;  // "file:line" when known
  std::string message;
  std::vector<std::string> terms;
};

}  // namespace scg

namespace scg::kb {

using logic::Expr;

enum class LinkKind { kIsa, kGenls };
enum class TypeKind { kIsa, kGenls };
enum class SubsumptionMode { kIsa, kGenls, kAuto };

struct TaxonomyLink {
  LinkKind kind;
  Expr specific;
  Expr general;
};

struct Fact {
  Expr atom;  // a ground application
  std::string context;
};

struct FunctionSignature {
  enum class Rule { kResultIsa, kResultGenls, kResultGenlsArg };
  std::string functor;
  int arity = 0;
  Rule rule = Rule::kResultGenls;
  std::string collection;  // for kResultIsa / kResultGenls
  int arg = 0;             // 1-based, for kResultGenlsArg
};

struct ArgConstraint {
  std::string relation;
  int position = 0;  // 1-based
  TypeKind kind = TypeKind::kIsa;
  std::string required;
};

// If argument `if_position` is of `if_type` (per `if_kind`), argument
// `then_position` must be of `then_type` (per `then_kind`).
struct InterArgConstraint {
  std::string relation;
  int if_position = 0;
  TypeKind if_kind = TypeKind::kGenls;
  std::string if_type;
  int then_position = 0;
  TypeKind then_kind = TypeKind::kGenls;
  std::string then_type;
};

struct ContextStack {
  std::string base = "BaseKB";
  std::optional<std::string> overlay;
};

struct Violation {
  enum class Kind {
    kArgIsa,
    kArgGenls,
    kInstanceForSpecialization,  // argGenls position filled by an instance
    kSpecializationForInstance,  // argIsa position filled by a collection
    kInterArg,
    kKnownFalse,
  };
  Kind kind;
  std::string path;  // child-index path from the root, e.g. "/1/3"
  std::string message;
};

std::string_view violation_kind_name(Violation::Kind kind);

class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Loads every source. When `findings` is null, the first problem throws
  // LoadError (syntax errors, malformed forms, genls cycles). Otherwise the
  // loader is lenient: problems are appended to `findings`, followed by the
  // results of lint().
  static KnowledgeBase from_sources(std::span<const Source> sources,
                                    std::vector<Diagnostic> *findings = nullptr);
  static KnowledgeBase from_files(std::span<const std::string> paths,
                                  std::vector<Diagnostic> *findings = nullptr);
  static KnowledgeBase from_text(std::string_view text,
                                 std::string_view name = "<text>");

  // A term is known if any form mentions it. Numerals and strings are always
  // known; a non-atomic term is known if its functor has a signature or it
  // appears in a taxonomy link.
  bool known(const Expr &term) const;
  bool is_collection(const Expr &term) const;

  // Reflexive-transitive closure over isa and genls links.
  std::set<Expr> generalizations(const Expr &term) const;
  // Reflexive-transitive closure over genls links only.
  std::set<Expr> genls_closure(const Expr &term) const;
  // Collections `term` is an instance of: one isa step, then genls closure.
  std::set<Expr> isa_closure(const Expr &term) const;

  bool subsumes(const Expr &general, const Expr &specific,
                SubsumptionMode mode) const;

  // Ground atom (or and/not combination) truth under negation as failure.
  // isa, genls and equals are evaluated against the taxonomy; any other
  // predicate matches an asserted fact whose arguments subsume the atom's.
  bool holds(const Expr &atom, const ContextStack &ctx = {}) const;

  // Throws StructuralError for malformed input.
  std::vector<Violation> check_plausibility(const Expr &expr,
                                            const ContextStack &ctx = {}) const;

  // Applies the functor's result rule. Throws UntypedTermError when the
  // functor has no signature.
  Expr result_type(const Expr &nat) const;

  // Acyclicity, disjointness-vs-subsumption, self links, declaration
  // conflicts and arity checks.
  std::vector<Diagnostic> lint() const;

  const FunctionSignature *signature(std::string_view functor) const;
  bool disjoint(std::string_view a, std::string_view b) const;

  const std::vector<TaxonomyLink> &links() const { return links_; }
  const std::vector<Fact> &facts() const { return facts_; }
  // Every constant named in the KB, sorted.
  std::vector<std::string> constants() const;

 private:
  struct TermInfo {
    Expr term;
    std::vector<std::string> isa_up;
    std::vector<std::string> genls_up;
    bool declared_individual = false;
    bool declared_collection = false;
    bool collection_evidence = false;  // in a genls link or isa general
  };

  class Loader;
  friend class Loader;

  TermInfo &intern(const Expr &term);
  const TermInfo *find(const Expr &term) const;
  std::vector<Expr> up(const Expr &term, bool isa, bool genls) const;
  std::set<Expr> closure(const Expr &term, bool isa, bool genls) const;
  void require_known(const Expr &term) const;
  bool term_matches(const Expr &general, const Expr &specific) const;
  std::vector<std::vector<std::string>> genls_cycles() const;

  std::unordered_map<std::string, TermInfo> terms_;
  std::vector<TaxonomyLink> links_;
  std::vector<Fact> facts_;
  std::unordered_map<std::string, std::vector<size_t>> facts_by_predicate_;
  std::map<std::string, FunctionSignature, std::less<>> signatures_;
  std::vector<ArgConstraint> arg_constraints_;
  std::vector<InterArgConstraint> inter_arg_constraints_;
  std::map<std::string, std::set<std::string>, std::less<>> disjoint_;
  std::vector<Diagnostic> load_notes_;  // declaration-level lint input
};

}  // namespace scg::kb

#endif  // SCG_KB_H_
