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

// Variable handling and simplification over logic::Expr.

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

#include "scg/logic.h"

namespace scg::logic {
namespace {

using Mapper = std::function<Expr(const Expr &)>;

// Rebuilds a non-binder compound with each child mapped through `f`.
Expr map_children(const Expr &e, const Mapper &f) {
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto &a : e.args()) args.push_back(f(a));
  switch (e.kind()) {
    case Kind::kNat:
      return Expr::nat(e.name(), std::move(args));
    case Kind::kApp:
      return Expr::app(f(e.head()), std::move(args));
    case Kind::kAnd:
      return Expr::conj(std::move(args));
    case Kind::kNot:
      return Expr::negate(std::move(args.front()));
    default:
      return e;
  }
}

Expr rebind(const Expr &e, std::vector<Expr> vars, Expr body) {
  switch (e.kind()) {
    case Kind::kKappa:
      return Expr::kappa(std::move(vars), std::move(body));
    case Kind::kTheSetOf:
      return Expr::set_of(std::move(vars.front()), std::move(body));
    default:
      return Expr::exists(std::move(vars.front()), std::move(body));
  }
}

void collect_free(const Expr &e, std::set<Expr> &bound, std::set<Expr> &out,
                  std::vector<Expr> *ordered) {
  switch (e.kind()) {
    case Kind::kTypedVar:
    case Kind::kQueryVar:
      if (!bound.contains(e) && out.insert(e).second && ordered &&
          e.kind() == Kind::kQueryVar) {
        ordered->push_back(e);
      }
      return;
    case Kind::kConstant:
    case Kind::kNumeral:
    case Kind::kText:
      return;
    case Kind::kApp:
      collect_free(e.head(), bound, out, ordered);
      break;
    case Kind::kKappa:
    case Kind::kTheSetOf:
    case Kind::kExists: {
      std::vector<Expr> added;
      for (const auto &v : e.bound()) {
        if (bound.insert(v).second) added.push_back(v);
      }
      collect_free(e.body(), bound, out, ordered);
      for (const auto &v : added) bound.erase(v);
      return;
    }
    default:
      break;
  }
  for (const auto &a : e.args()) collect_free(a, bound, out, ordered);
}

void collect_var_names(const Expr &e, std::set<std::string> &names) {
  switch (e.kind()) {
    case Kind::kQueryVar:
      names.insert(e.name());
      return;
    case Kind::kApp:
      collect_var_names(e.head(), names);
      break;
    case Kind::kKappa:
    case Kind::kTheSetOf:
    case Kind::kExists:
      for (const auto &v : e.bound()) names.insert(v.name());
      collect_var_names(e.body(), names);
      return;
    default:
      break;
  }
  for (const auto &a : e.args()) collect_var_names(a, names);
}

bool is_equals(const Expr &e) {
  return e.kind() == Kind::kApp && e.head().kind() == Kind::kConstant &&
         e.head().name() == "equals" && e.args().size() == 2;
}

// Flattens, deduplicates and collapses conjunctions everywhere in `e`.
Expr normalize(const Expr &e) {
  switch (e.kind()) {
    case Kind::kAnd: {
      std::vector<Expr> flat;
      std::function<void(const Expr &)> add = [&](const Expr &c) {
        Expr n = normalize(c);
        if (n.kind() == Kind::kAnd) {
          for (const auto &inner : n.args()) add(inner);
        } else if (std::find(flat.begin(), flat.end(), n) == flat.end()) {
          flat.push_back(std::move(n));
        }
      };
      for (const auto &c : e.args()) add(c);
      if (flat.size() == 1) return flat.front();
      return Expr::conj(std::move(flat));
    }
    case Kind::kNat:
    case Kind::kApp:
    case Kind::kNot:
      return map_children(e, normalize);
    case Kind::kKappa:
    case Kind::kTheSetOf:
    case Kind::kExists: {
      auto b = e.bound();
      return rebind(e, {b.begin(), b.end()}, normalize(e.body()));
    }
    default:
      return e;
  }
}

std::string strip_suffixes(const std::string &name) {
  std::string base = name;
  for (;;) {
    auto us = base.rfind('_');
    if (us == std::string::npos || us == 0 || us + 1 == base.size()) break;
    bool digits = std::all_of(base.begin() + us + 1, base.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    if (!digits) break;
    base.resize(us);
  }
  return base;
}

}  // namespace

std::set<Expr> free_vars(const Expr &e) {
  std::set<Expr> bound, out;
  collect_free(e, bound, out, nullptr);
  return out;
}

std::vector<Expr> free_query_vars(const Expr &e) {
  std::set<Expr> bound, out;
  std::vector<Expr> ordered;
  collect_free(e, bound, out, &ordered);
  return ordered;
}

std::set<Expr> typed_vars(const Expr &e) {
  std::set<Expr> out;
  std::function<void(const Expr &)> walk = [&](const Expr &x) {
    switch (x.kind()) {
      case Kind::kTypedVar:
        out.insert(x);
        return;
      case Kind::kApp:
        walk(x.head());
        break;
      case Kind::kKappa:
      case Kind::kTheSetOf:
      case Kind::kExists:
        walk(x.body());
        return;
      default:
        break;
    }
    for (const auto &a : x.args()) walk(a);
  };
  walk(e);
  return out;
}

Expr substitute(const Expr &e, const Binding &b) {
  if (b.empty()) return e;
  switch (e.kind()) {
    case Kind::kTypedVar:
    case Kind::kQueryVar: {
      auto it = b.find(e);
      return it == b.end() ? e : it->second;
    }
    case Kind::kConstant:
    case Kind::kNumeral:
    case Kind::kText:
      return e;
    case Kind::kKappa:
    case Kind::kTheSetOf:
    case Kind::kExists: {
      Binding inner = b;
      for (const auto &v : e.bound()) inner.erase(v);
      std::set<Expr> body_free = free_vars(e.body());
      std::erase_if(inner, [&](const auto &kv) {
        return !body_free.contains(kv.first);
      });
      if (inner.empty()) return e;

      // Variables introduced by the replacements must not be captured.
      std::set<Expr> incoming;
      for (const auto &[var, value] : inner) {
        for (const auto &fv : free_vars(value)) incoming.insert(fv);
      }
      std::set<std::string> taken;
      collect_var_names(e.body(), taken);
      for (const auto &fv : incoming) {
        if (fv.kind() == Kind::kQueryVar) taken.insert(fv.name());
      }
      std::vector<Expr> vars;
      Binding alpha;
      for (const auto &v : e.bound()) {
        if (!incoming.contains(v)) {
          vars.push_back(v);
          continue;
        }
        std::string fresh;
        for (int k = 1;; ++k) {
          fresh = v.name() + "_" + std::to_string(k);
          if (!taken.contains(fresh)) break;
        }
        taken.insert(fresh);
        Expr nv = Expr::query_var(fresh);
        alpha.emplace(v, nv);
        vars.push_back(nv);
      }
      Expr body = alpha.empty() ? e.body() : substitute(e.body(), alpha);
      return rebind(e, std::move(vars), substitute(body, inner));
    }
    default:
      return map_children(e, [&](const Expr &c) { return substitute(c, b); });
  }
}

Expr rename_query_vars(const Expr &e, int suffix) {
  Binding b;
  for (const auto &v : free_query_vars(e)) {
    b.emplace(v, Expr::query_var(v.name() + "_" + std::to_string(suffix)));
  }
  return substitute(e, b);
}

SimplifyResult simplify_tracked(const Expr &e,
                                const std::set<Expr> &protected_vars) {
  SimplifyResult result{normalize(e), {}};
  for (;;) {
    const Expr &cur = result.expr;
    if (cur.kind() != Kind::kAnd) break;
    auto parts = cur.args();
    bool changed = false;
    for (size_t i = 0; i < parts.size() && !changed; ++i) {
      if (!is_equals(parts[i])) continue;
      const Expr &lhs = parts[i].args()[0];
      const Expr &rhs = parts[i].args()[1];
      std::vector<Expr> rest;
      for (size_t j = 0; j < parts.size(); ++j) {
        if (j != i) rest.push_back(parts[j]);
      }
      if (lhs == rhs) {
        result.expr = normalize(Expr::conj(std::move(rest)));
        changed = true;
        break;
      }
      Expr var, term;
      bool lq = lhs.kind() == Kind::kQueryVar;
      bool rq = rhs.kind() == Kind::kQueryVar;
      if (lq && rq) {
        bool lhs_smaller = lhs.name() < rhs.name();
        var = lhs_smaller ? rhs : lhs;
        term = lhs_smaller ? lhs : rhs;
      } else if (lq && rhs.is_ground() && !protected_vars.contains(lhs)) {
        var = lhs;
        term = rhs;
      } else if (rq && lhs.is_ground() && !protected_vars.contains(rhs)) {
        var = rhs;
        term = lhs;
      } else {
        continue;
      }
      Binding step{{var, term}};
      result.expr = normalize(substitute(Expr::conj(std::move(rest)), step));
      for (auto &[k, v] : result.eliminated) v = substitute(v, step);
      result.eliminated.emplace(var, term);
      changed = true;
    }
    if (!changed) break;
  }
  return result;
}

Expr simplify(const Expr &e) { return simplify_tracked(e).expr; }

Expr quantify_existential(const Expr &e) {
  auto vars = free_query_vars(e);
  Expr out = e;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    out = Expr::exists(*it, out);
  }
  return out;
}

std::vector<Expr> conjuncts(const Expr &e) {
  if (e.kind() == Kind::kAnd) return {e.args().begin(), e.args().end()};
  return {e};
}

Expr canonical_form(const Expr &e) {
  std::unordered_map<std::string, std::string> free_names;
  int bound_counter = 0;
  std::function<Expr(const Expr &,
                     const std::unordered_map<std::string, std::string> &)>
      walk = [&](const Expr &x,
                 const std::unordered_map<std::string, std::string> &env)
      -> Expr {
    switch (x.kind()) {
      case Kind::kQueryVar: {
        if (auto it = env.find(x.name()); it != env.end()) {
          return Expr::query_var(it->second);
        }
        auto [it, inserted] = free_names.emplace(
            x.name(), "_F" + std::to_string(free_names.size()));
        return Expr::query_var(it->second);
      }
      case Kind::kKappa:
      case Kind::kTheSetOf:
      case Kind::kExists: {
        auto inner = env;
        std::vector<Expr> vars;
        for (const auto &v : x.bound()) {
          std::string fresh = "_B" + std::to_string(bound_counter++);
          inner[v.name()] = fresh;
          vars.push_back(Expr::query_var(fresh));
        }
        return rebind(x, std::move(vars), walk(x.body(), inner));
      }
      case Kind::kNat:
      case Kind::kApp:
      case Kind::kAnd:
      case Kind::kNot:
        return map_children(x, [&](const Expr &c) { return walk(c, env); });
      default:
        return x;
    }
  };
  return walk(e, {});
}

bool alpha_equivalent(const Expr &a, const Expr &b) {
  return canonical_form(a) == canonical_form(b);
}

Expr tidy_query_vars(const Expr &e, Binding *renaming) {
  auto vars = free_query_vars(e);
  std::map<std::string, int> seen;
  Binding b;
  for (const auto &v : vars) {
    std::string base = strip_suffixes(v.name());
    int n = ++seen[base];
    std::string target = n == 1 ? base : base + "_" + std::to_string(n);
    if (target != v.name()) b.emplace(v, Expr::query_var(target));
  }
  if (renaming) *renaming = b;
  // Every free variable receives a distinct target and substitution is
  // simultaneous, so no temporaries are needed.
  return substitute(e, b);
}

}  // namespace scg::logic
