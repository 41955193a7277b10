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

// CycL-style logical expressions: an immutable, structurally shared tree of
// constants, numerals, strings, variables, non-atomic terms and sentences.
//
// Concrete syntax is parenthesized prefix notation:
//
//   (LargeFn (SubcollectionOfWithRelationToFn Building mainColorOfObject
//             BlueColor))
//
// Sigils: "$Type#k" is a typed variable (template hole), "?NAME" is a query
// variable, "#$" is an accepted and stripped constant prefix, and a leading
// "¬" is an alias for (not ...). A compound whose functor constant ends in
// "Fn" is a non-atomic term; any other compound is a predicate application.

#ifndef SCG_LOGIC_H_
#define SCG_LOGIC_H_

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scg/sexpr.h"

namespace scg::logic {

using Rational = boost::multiprecision::cpp_rational;

enum class Kind {
  kConstant,
  kNumeral,
  kText,
  kTypedVar,
  kQueryVar,
  kNat,       // (SomeFn args...)
  kApp,       // (predicate args...), the predicate may itself be a term
  kAnd,
  kNot,
  kKappa,     // (Kappa (?V1 ... ?Vn) body)
  kTheSetOf,  // (TheSetOf ?V body)
  kExists,    // (thereExists ?V body)
};

class Expr {
 public:
  // A default-constructed Expr is null; it is only useful as a placeholder.
  Expr() = default;

  static Expr constant(std::string name);
  static Expr numeral(Rational value);
  static Expr numeral(long long value) { return numeral(Rational(value)); }
  static Expr text(std::string value);
  static Expr typed_var(std::string type, int index);
  static Expr query_var(std::string name);
  static Expr nat(std::string functor, std::vector<Expr> args);
  static Expr app(Expr head, std::vector<Expr> args);
  static Expr app(std::string predicate, std::vector<Expr> args) {
    return app(constant(std::move(predicate)), std::move(args));
  }
  static Expr conj(std::vector<Expr> conjuncts);
  static Expr negate(Expr arg);
  static Expr kappa(std::vector<Expr> vars, Expr body);
  static Expr set_of(Expr var, Expr body);
  static Expr exists(Expr var, Expr body);

  bool is_null() const { return node_ == nullptr; }
  Kind kind() const;

  // Constant name, Nat functor, text contents, query-variable name (without
  // '?'), or typed-variable type.
  const std::string &name() const;
  int index() const;  // typed variables only
  const Rational &value() const;  // numerals only

  // App head; binder body.
  const Expr &head() const;
  const Expr &body() const;
  // Arguments of Nat/App, conjuncts of And, the single operand of Not.
  std::span<const Expr> args() const;
  // Variables bound by Kappa/TheSetOf/thereExists.
  std::span<const Expr> bound() const;

  bool is_var() const {
    return kind() == Kind::kQueryVar || kind() == Kind::kTypedVar;
  }
  bool is_binder() const {
    Kind k = kind();
    return k == Kind::kKappa || k == Kind::kTheSetOf || k == Kind::kExists;
  }
  // True for App, And, Not and thereExists.
  bool is_sentence() const;
  // True for Constant/Numeral/Text and Nat terms (ground or not).
  bool is_term() const;
  bool is_ground() const;  // no free variables

  // Canonical single-line rendering.
  std::string str() const;

  friend bool operator==(const Expr &a, const Expr &b);
  friend std::strong_ordering operator<=>(const Expr &a, const Expr &b);

  struct Node;  // opaque

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node &node() const;

  std::shared_ptr<const Node> node_;
};

// Variable → replacement. Keys are TypedVar or QueryVar expressions.
using Binding = std::map<Expr, Expr>;

Expr parse_expr(std::string_view text);
Expr from_datum(const sexpr::Datum &d);
std::string print_expr(const Expr &e);

// Free TypedVars and QueryVars.
std::set<Expr> free_vars(const Expr &e);
// Free QueryVars in order of first occurrence.
std::vector<Expr> free_query_vars(const Expr &e);
// Every TypedVar occurring anywhere in `e`.
std::set<Expr> typed_vars(const Expr &e);

// Capture-avoiding substitution of free variable occurrences.
Expr substitute(const Expr &e, const Binding &b);

// Renames each free ?X to ?X_<suffix>.
Expr rename_query_vars(const Expr &e, int suffix);

struct SimplifyResult {
  Expr expr;
  // Eliminated variable → the term that replaced it, fully resolved.
  Binding eliminated;
};

// Flattens nested conjunctions, drops duplicate conjuncts, collapses
// single-conjunct conjunctions, and eliminates (equals ?V t) conjuncts of the
// top-level conjunction when t is variable-free or another query variable.
// Between two variables the lexicographically smaller name is kept. The
// result is a fixed point.
Expr simplify(const Expr &e);

// As simplify(), but a protected variable is never replaced by a
// non-variable term; var-var equalities involving it are still eliminated and
// reported in `eliminated`.
SimplifyResult simplify_tracked(const Expr &e,
                                const std::set<Expr> &protected_vars = {});

// Wraps `e` in nested thereExists binders for its free query variables, in
// order of first occurrence. Closed sentences are returned unchanged.
Expr quantify_existential(const Expr &e);

// Top-level conjuncts (a non-And expression is its own single conjunct).
std::vector<Expr> conjuncts(const Expr &e);

// Renames free query variables to ?V0, ?V1, ... by first occurrence. Two
// expressions are alpha-equivalent iff their canonical forms are equal.
Expr canonical_form(const Expr &e);
bool alpha_equivalent(const Expr &a, const Expr &b);

// Strips composition suffixes ("?EAT_3_7" → "?EAT") where that introduces no
// collision among the free query variables. Used for display only.
Expr tidy_query_vars(const Expr &e, Binding *renaming = nullptr);

}  // namespace scg::logic

#endif  // SCG_LOGIC_H_
