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

#include <optional>

#include "scg/error.h"
#include "scg/kb.h"

namespace scg::kb {

using logic::Kind;

namespace {

// Collections each query variable is asserted to be an instance of by a
// positive (isa ?V C) somewhere in the expression.
void collect_var_types(const Expr &e, bool positive,
                       std::map<std::string, std::set<Expr>> *types) {
  switch (e.kind()) {
    case Kind::kApp: {
      auto args = e.args();
      if (positive && e.head().kind() == Kind::kConstant &&
          e.head().name() == "isa" && args.size() == 2 &&
          args[0].kind() == Kind::kQueryVar && args[1].is_term() &&
          args[1].is_ground()) {
        (*types)[args[0].name()].insert(args[1]);
      }
      for (const auto &a : args) collect_var_types(a, positive, types);
      break;
    }
    case Kind::kNat:
    case Kind::kAnd:
      for (const auto &a : e.args()) collect_var_types(a, positive, types);
      break;
    case Kind::kNot:
      collect_var_types(e.args().front(), !positive, types);
      break;
    case Kind::kKappa:
    case Kind::kTheSetOf:
    case Kind::kExists:
      collect_var_types(e.body(), positive, types);
      break;
    default:
      break;
  }
}

class PlausibilityChecker {
 public:
  PlausibilityChecker(const KnowledgeBase &kb,
                      const std::vector<ArgConstraint> &args,
                      const std::vector<InterArgConstraint> &inter,
                      std::map<std::string, std::set<Expr>> var_types)
      : kb_(kb), arg_(args), inter_(inter), var_types_(std::move(var_types)) {}

  void walk(const Expr &e, const std::string &path, bool assertive) {
    switch (e.kind()) {
      case Kind::kTypedVar:
        throw StructuralError("unbound typed variable " + e.str(), path);
      case Kind::kNat: {
        const auto *sig = kb_.signature(e.name());
        if (sig && static_cast<size_t>(sig->arity) != e.args().size()) {
          throw StructuralError(
              "arity mismatch for " + e.name() + ": expected " +
                  std::to_string(sig->arity) + ", got " +
                  std::to_string(e.args().size()),
              path);
        }
        check_relation(e.name(), e.args(), path);
        walk_args(e, path, assertive);
        break;
      }
      case Kind::kApp: {
        const Expr &head = e.head();
        if (head.kind() == Kind::kConstant) {
          check_relation(head.name(), e.args(), path);
          if (assertive) check_known_false(e, path);
        } else {
          walk(head, path + "/0", false);
        }
        walk_args(e, path, assertive);
        break;
      }
      case Kind::kAnd:
        walk_args(e, path, assertive);
        break;
      case Kind::kNot:
        walk(e.args().front(), path + "/1", false);
        break;
      case Kind::kKappa:
      case Kind::kTheSetOf:
        walk(e.body(), path + "/2", false);
        break;
      case Kind::kExists:
        walk(e.body(), path + "/2", assertive);
        break;
      default:
        break;
    }
  }

  std::vector<Violation> take() { return std::move(violations_); }

 private:
  void walk_args(const Expr &e, const std::string &path, bool assertive) {
    auto args = e.args();
    for (size_t i = 0; i < args.size(); ++i) {
      walk(args[i], path + "/" + std::to_string(i + 1), assertive);
    }
  }

  bool evaluable(const Expr &arg) const {
    if (arg.kind() == Kind::kQueryVar) return var_types_.contains(arg.name());
    return arg.is_term() && arg.is_ground() && kb_.known(arg);
  }

  // Collections `arg` is an instance of.
  std::set<Expr> instance_of(const Expr &arg) const {
    if (arg.kind() != Kind::kQueryVar) return kb_.isa_closure(arg);
    std::set<Expr> out;
    for (const auto &t : var_types_.at(arg.name())) {
      if (!kb_.known(t)) continue;
      auto g = kb_.genls_closure(t);
      out.insert(g.begin(), g.end());
    }
    return out;
  }

  // Collections `arg` is a specialization of (empty for variables, which
  // are typed as instances).
  std::set<Expr> specialization_of(const Expr &arg) const {
    if (arg.kind() == Kind::kQueryVar) return {};
    return kb_.genls_closure(arg);
  }

  bool satisfies(const Expr &arg, TypeKind kind, const std::string &type) const {
    Expr c = Expr::constant(type);
    return kind == TypeKind::kIsa ? instance_of(arg).contains(c)
                                  : specialization_of(arg).contains(c);
  }

  void add(Violation::Kind kind, const std::string &path, std::string message) {
    violations_.push_back({kind, path.empty() ? "/" : path, std::move(message)});
  }

  void check_relation(const std::string &relation, std::span<const Expr> args,
                      const std::string &path) {
    for (const auto &c : arg_) {
      if (c.relation != relation) continue;
      if (static_cast<size_t>(c.position) > args.size()) continue;
      const Expr &arg = args[c.position - 1];
      if (!evaluable(arg)) continue;
      if (satisfies(arg, c.kind, c.required)) continue;
      std::string where = "argument " + std::to_string(c.position) + " of " +
                          relation + " (" + arg.str() + ")";
      std::string at = path + "/" + std::to_string(c.position);
      if (c.kind == TypeKind::kGenls) {
        if (satisfies(arg, TypeKind::kIsa, c.required)) {
          add(Violation::Kind::kInstanceForSpecialization, at,
              where + " must be a specialization of " + c.required +
                  ", got an instance");
        } else {
          add(Violation::Kind::kArgGenls, at,
              where + " must be a specialization of " + c.required);
        }
      } else {
        if (satisfies(arg, TypeKind::kGenls, c.required)) {
          add(Violation::Kind::kSpecializationForInstance, at,
              where + " must be an instance of " + c.required +
                  ", got a specialization");
        } else {
          add(Violation::Kind::kArgIsa, at,
              where + " must be an instance of " + c.required);
        }
      }
    }
    for (const auto &c : inter_) {
      if (c.relation != relation) continue;
      size_t hi = static_cast<size_t>(std::max(c.if_position, c.then_position));
      if (hi > args.size()) continue;
      const Expr &if_arg = args[c.if_position - 1];
      const Expr &then_arg = args[c.then_position - 1];
      if (!evaluable(if_arg) || !evaluable(then_arg)) continue;
      if (!satisfies(if_arg, c.if_kind, c.if_type)) continue;
      if (satisfies(then_arg, c.then_kind, c.then_type)) continue;
      add(Violation::Kind::kInterArg, path + "/" + std::to_string(c.then_position),
          "argument " + std::to_string(c.then_position) + " of " + relation +
              " (" + then_arg.str() + ") must be " +
              (c.then_kind == TypeKind::kGenls ? "a specialization" : "an instance") +
              " of " + c.then_type + " when argument " +
              std::to_string(c.if_position) + " is " +
              (c.if_kind == TypeKind::kGenls ? "a specialization" : "an instance") +
              " of " + c.if_type);
    }
  }

  std::optional<std::pair<Expr, Expr>> disjoint_pair(const std::set<Expr> &a,
                                                     const std::set<Expr> &b) {
    for (const auto &x : a) {
      if (x.kind() != Kind::kConstant) continue;
      for (const auto &y : b) {
        if (y.kind() == Kind::kConstant && kb_.disjoint(x.name(), y.name())) {
          return std::make_pair(x, y);
        }
      }
    }
    return std::nullopt;
  }

  // (genls A B) or (isa a B) is known to be false when something A falls
  // under is declared disjoint with something B falls under.
  void check_known_false(const Expr &e, const std::string &path) {
    const std::string &p = e.head().name();
    auto args = e.args();
    if ((p != "genls" && p != "isa") || args.size() != 2) return;
    if (!evaluable(args[0]) || !args[1].is_ground() || !kb_.known(args[1])) {
      return;
    }
    std::set<Expr> lower = p == "genls" ? specialization_of(args[0])
                                        : instance_of(args[0]);
    auto upper = kb_.genls_closure(args[1]);
    if (auto hit = disjoint_pair(lower, upper)) {
      add(Violation::Kind::kKnownFalse, path,
          e.str() + " is known to be false: " + hit->first.str() +
              " is disjoint with " + hit->second.str());
    }
  }

  const KnowledgeBase &kb_;
  const std::vector<ArgConstraint> &arg_;
  const std::vector<InterArgConstraint> &inter_;
  std::map<std::string, std::set<Expr>> var_types_;
  std::vector<Violation> violations_;
};

}  // namespace

std::vector<Violation> KnowledgeBase::check_plausibility(
    const Expr &expr, [[maybe_unused]] const ContextStack &ctx) const {
  if (expr.is_null()) throw StructuralError("null expression", "");
  std::map<std::string, std::set<Expr>> var_types;
  collect_var_types(expr, true, &var_types);
  PlausibilityChecker checker(*this, arg_constraints_, inter_arg_constraints_,
                              std::move(var_types));
  checker.walk(expr, "", true);
  return checker.take();
}

}  // namespace scg::kb
