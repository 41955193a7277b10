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


// Independent reference implementations used by the unit and acceptance
// tests. None of them calls into the code it checks beyond constructing
// expressions and reading raw resource data.

#ifndef SCG_TESTS_SUPPORT_ORACLES_H_
#define SCG_TESTS_SUPPORT_ORACLES_H_

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scg/constructions.h"
#include "scg/interpreter.h"
#include "scg/kb.h"
#include "scg/logic.h"
#include "scg/tagger.h"

namespace scg::testing {

using logic::Expr;
using logic::Kind;

// Random expressions over a small vocabulary: unary P, binary Q, equality,
// a unary function F, constants c0..c4 and query variables ?A..?D. With
// `rich` set, numerals, strings, typed variables, Kappa and TheSetOf appear
// as well (these fall outside the ground evaluator's fragment).
class ExprGen {
 public:
  explicit ExprGen(unsigned seed, bool rich = false)
      : rng_(seed), rich_(rich) {}

  Expr sentence(int depth) {
    int pick = depth <= 0 ? uniform(0, 2) : uniform(0, rich_ ? 8 : 6);
    switch (pick) {
      case 0:
        return Expr::app("P", {term(depth - 1)});
      case 1:
        return Expr::app("Q", {term(depth - 1), term(depth - 1)});
      case 2:
        return Expr::app("equals", {term(depth - 1), term(depth - 1)});
      case 3:
      case 4: {
        std::vector<Expr> parts;
        int n = uniform(2, 4);
        for (int i = 0; i < n; ++i) {
          parts.push_back(uniform(0, 2) == 0
                              ? Expr::app("equals", {var(), term(0)})
                              : sentence(depth - 1));
        }
        return Expr::conj(std::move(parts));
      }
      case 5:
        return Expr::negate(sentence(depth - 1));
      case 6:
        return Expr::exists(var(), sentence(depth - 1));
      case 7:
        return Expr::app("R", {Expr::kappa({var()}, sentence(depth - 1))});
      default:
        return Expr::app("P", {Expr::set_of(var(), sentence(depth - 1))});
    }
  }

  Expr term(int depth) {
    int pick = uniform(0, depth <= 0 ? 1 : 2);
    if (rich_ && uniform(0, 5) == 0) {
      switch (uniform(0, 2)) {
        case 0:
          return Expr::numeral(uniform(0, 9));
        case 1:
          return Expr::text("s" + std::to_string(uniform(0, 2)));
        default:
          return Expr::typed_var("Thing", uniform(0, 2));
      }
    }
    if (pick == 0) return constant();
    if (pick == 1) return var();
    return Expr::nat("F", {term(depth - 1)});
  }

  Expr constant() { return Expr::constant("c" + std::to_string(uniform(0, 4))); }
  Expr var() {
    static const std::array<const char *, 4> kNames = {"A", "B", "C", "D"};
    return Expr::query_var(kNames[uniform(0, 3)]);
  }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::mt19937 rng_;
  bool rich_;
};

// A random first-order structure over the universe {0..4}.
class GroundModel {
 public:
  static constexpr int kSize = 5;

  explicit GroundModel(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> elem(0, kSize - 1);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < kSize; ++i) {
      constants_[i] = elem(rng);
      f_[i] = elem(rng);
      p_[i] = coin(rng);
      for (int j = 0; j < kSize; ++j) q_[i][j] = coin(rng);
    }
  }

  // Truth of the existential closure of `s`.
  bool holds_closed(const Expr &s) const {
    std::set<std::string> names;
    for (const auto &v : logic::free_query_vars(s)) names.insert(v.name());
    std::vector<std::string> vars(names.begin(), names.end());
    std::map<std::string, int> env;
    return search(s, vars, 0, env);
  }

  bool eval(const Expr &s, std::map<std::string, int> &env) const {
    switch (s.kind()) {
      case Kind::kAnd:
        for (const auto &c : s.args()) {
          if (!eval(c, env)) return false;
        }
        return true;
      case Kind::kNot:
        return !eval(s.args()[0], env);
      case Kind::kExists: {
        const std::string &name = s.bound()[0].name();
        auto saved = env.find(name) == env.end()
                         ? std::optional<int>()
                         : std::optional<int>(env[name]);
        bool any = false;
        for (int d = 0; d < kSize && !any; ++d) {
          env[name] = d;
          any = eval(s.body(), env);
        }
        if (saved) {
          env[name] = *saved;
        } else {
          env.erase(name);
        }
        return any;
      }
      case Kind::kApp: {
        const std::string &pred = s.head().name();
        auto args = s.args();
        if (pred == "P") return p_[denote(args[0], env)];
        if (pred == "Q") return q_[denote(args[0], env)][denote(args[1], env)];
        if (pred == "equals") {
          return denote(args[0], env) == denote(args[1], env);
        }
        break;
      }
      default:
        break;
    }
    throw std::logic_error("outside the evaluator fragment: " + s.str());
  }

  int denote(const Expr &t, const std::map<std::string, int> &env) const {
    switch (t.kind()) {
      case Kind::kConstant:
        return constants_[std::stoi(t.name().substr(1))];
      case Kind::kQueryVar:
        return env.at(t.name());
      case Kind::kNat:
        return f_[denote(t.args()[0], env)];
      default:
        throw std::logic_error("outside the evaluator fragment: " + t.str());
    }
  }

 private:
  bool search(const Expr &s, const std::vector<std::string> &vars, size_t i,
              std::map<std::string, int> &env) const {
    if (i == vars.size()) return eval(s, env);
    for (int d = 0; d < kSize; ++d) {
      env[vars[i]] = d;
      if (search(s, vars, i + 1, env)) return true;
    }
    return false;
  }

  std::array<int, kSize> constants_{};
  std::array<int, kSize> f_{};
  std::array<bool, kSize> p_{};
  std::array<std::array<bool, kSize>, kSize> q_{};
};

// Breadth-first upward closure over the asserted isa and genls links.
inline std::set<Expr> bfs_generalizations(const kb::KnowledgeBase &kb,
                                          const Expr &start) {
  std::multimap<Expr, Expr> up;
  for (const auto &link : kb.links()) up.emplace(link.specific, link.general);
  std::set<Expr> seen{start};
  std::deque<Expr> queue{start};
  while (!queue.empty()) {
    Expr cur = queue.front();
    queue.pop_front();
    auto [lo, hi] = up.equal_range(cur);
    for (auto it = lo; it != hi; ++it) {
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return seen;
}

// A taxonomy given as plain adjacency, for retrieval instances whose type
// relation is known independently of the KB under test.
struct Taxonomy {
  std::map<std::string, std::set<std::string>> genls;  // direct supertypes
  std::map<std::string, std::set<std::string>> isa;    // individuals only
  std::set<std::string> collections;

  std::set<std::string> supertypes(const std::string &c) const {
    std::set<std::string> seen{c};
    std::deque<std::string> queue{c};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      auto it = genls.find(cur);
      if (it == genls.end()) continue;
      for (const auto &g : it->second) {
        if (seen.insert(g).second) queue.push_back(g);
      }
    }
    return seen;
  }

  // Does a slot of type `slot` accept a filler typed `filler`?
  bool accepts(const std::string &slot, const std::string &filler) const {
    if (collections.contains(filler)) return supertypes(filler).contains(slot);
    auto it = isa.find(filler);
    if (it == isa.end()) return false;
    for (const auto &c : it->second) {
      if (supertypes(c).contains(slot)) return true;
    }
    return false;
  }
};

// Every (variant, binding) whose items line up exactly with some path of
// literal tokens and edges tiling [begin, end).
inline std::set<interp::Candidate> brute_force_retrieve(
    const interp::ParseGraph &graph, const cxn::Repository &repo,
    const Taxonomy &tax, const std::string &language, size_t begin,
    size_t end) {
  std::set<interp::Candidate> out;
  std::vector<interp::PathItem> path;
  std::function<void(size_t)> walk = [&](size_t p) {
    if (p == end) {
      for (size_t vi = 0; vi < repo.variants().size(); ++vi) {
        const auto &v = repo.variants()[vi];
        if (v.language != language || v.items.size() != path.size()) continue;
        interp::Candidate c{vi, begin, end, {}};
        bool ok = true;
        for (size_t k = 0; k < path.size() && ok; ++k) {
          const auto &item = v.items[k];
          if (item.is_slot != path[k].is_edge) {
            ok = false;
          } else if (!item.is_slot) {
            ok = tagger::fold_case(item.literal) ==
                 tagger::fold_case(graph.tokens[path[k].token].surface);
          } else {
            const auto &edge = graph.edge(path[k].edge);
            ok = edge.output_type.kind() == Kind::kConstant &&
                 tax.accepts(item.slot.type, edge.output_type.name());
            c.binding[item.slot.index] = path[k].edge;
          }
        }
        if (ok) out.insert(c);
      }
      return;
    }
    path.push_back({false, p, 0});
    walk(p + 1);
    path.pop_back();
    for (const auto &e : graph.edges()) {
      if (e.begin != p || e.end > end) continue;
      path.push_back({true, 0, e.id});
      walk(e.end);
      path.pop_back();
    }
  };
  walk(begin);
  return out;
}

}  // namespace scg::testing

#endif  // SCG_TESTS_SUPPORT_ORACLES_H_
