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

#include "scg/interpreter.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "scg/error.h"

namespace scg::interp {

using cxn::Key;
using cxn::KeyItem;
using cxn::Tier;
using logic::Kind;

OutputPolicy parse_policy(std::string_view name) {
  if (name == "statement") return OutputPolicy::kStatement;
  if (name == "question") return OutputPolicy::kQuestion;
  if (name == "check") return OutputPolicy::kCheck;
  throw Error("unknown output mode '" + std::string(name) +
              "' (expected statement, question or check)");
}

std::string_view policy_name(OutputPolicy policy) {
  switch (policy) {
    case OutputPolicy::kStatement:
      return "statement";
    case OutputPolicy::kQuestion:
      return "question";
    case OutputPolicy::kCheck:
      return "check";
  }
  return "statement";
}

std::string_view edge_kind_name(Edge::Kind kind) {
  switch (kind) {
    case Edge::Kind::kInstance:
      return "instance";
    case Edge::Kind::kCollection:
      return "collection";
    case Edge::Kind::kSentential:
      return "sentential";
  }
  return "instance";
}

// ---------------------------------------------------------------------------
// ParseGraph

const std::vector<size_t> &ParseGraph::starting_at(size_t begin) const {
  static const std::vector<size_t> kNone;
  return begin < by_begin_.size() ? by_begin_[begin] : kNone;
}

std::optional<size_t> ParseGraph::add(Edge edge) {
  Expr shape = edge.output_var
                   ? Expr::app("scgOutput", {*edge.output_var, edge.logic})
                   : edge.logic;
  std::string key = std::to_string(edge.begin) + ":" +
                    std::to_string(edge.end) + ":" + edge.source + ":" +
                    edge.output_type.str() + ":" +
                    logic::canonical_form(shape).str();
  if (!seen_.insert(std::move(key)).second) return std::nullopt;
  edge.id = edges_.size();
  if (by_begin_.size() <= edge.begin) by_begin_.resize(edge.begin + 1);
  by_begin_[edge.begin].push_back(edge.id);
  edges_.push_back(std::move(edge));
  return edges_.back().id;
}

size_t count_typed_patterns(const ParseGraph &graph, size_t begin, size_t end) {
  constexpr size_t kMax = std::numeric_limits<size_t>::max();
  auto add = [](size_t a, size_t b) { return a > kMax - b ? kMax : a + b; };
  std::vector<size_t> ways(end - begin + 1, 0);
  ways[end - begin] = 1;
  for (size_t p = end; p-- > begin;) {
    size_t w = ways[p + 1 - begin];
    for (size_t id : graph.starting_at(p)) {
      const Edge &e = graph.edge(id);
      if (e.end <= end) w = add(w, ways[e.end - begin]);
    }
    ways[p - begin] = w;
  }
  return ways[0];
}

// ---------------------------------------------------------------------------
// Composition

Composition compose(const cxn::Construction &matrix,
                    const std::map<int, const Edge *> &binding,
                    ParseGraph *graph) {
  int local_suffix = 0;
  logic::Binding sub;
  std::vector<Expr> conjuncts;
  for (const auto &[index, edge] : binding) {
    auto slot = matrix.find_slot(index);
    if (!slot) {
      throw CompositionError("construction " + matrix.id + " has no slot #" +
                             std::to_string(index));
    }
    if (edge->kind != Edge::Kind::kSentential) {
      sub[slot->var()] = edge->logic;
      continue;
    }
    if (!edge->output_var) {
      throw CompositionError("sentential edge " + std::to_string(edge->id) +
                             " from " + edge->source +
                             " has no output variable");
    }
    if (!matrix.logic.is_sentence()) {
      throw CompositionError("cannot conjoin a sentence into the "
                             "non-sentential template of " + matrix.id);
    }
    int suffix = graph ? graph->fresh_suffix() : ++local_suffix;
    sub[slot->var()] = logic::rename_query_vars(*edge->output_var, suffix);
    conjuncts.push_back(logic::rename_query_vars(edge->logic, suffix));
  }
  Expr body = logic::substitute(matrix.logic, sub);
  if (!conjuncts.empty()) {
    conjuncts.push_back(body);
    body = Expr::conj(std::move(conjuncts));
  }
  std::set<Expr> keep;
  if (matrix.output_var) keep.insert(*matrix.output_var);
  auto simplified = logic::simplify_tracked(body, keep);

  Composition out;
  out.logic = simplified.expr;
  if (matrix.output_var) {
    Expr v = *matrix.output_var;
    if (auto it = simplified.eliminated.find(v);
        it != simplified.eliminated.end()) {
      v = it->second;
    }
    out.output_var = v;
  }
  if (matrix.output_type.slot) {
    auto it = binding.find(*matrix.output_type.slot);
    if (it == binding.end()) {
      throw CompositionError("output type slot #" +
                             std::to_string(*matrix.output_type.slot) +
                             " of " + matrix.id + " is unbound");
    }
    out.output_type = it->second->output_type;
  } else {
    out.output_type = matrix.output_type.type;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interpreter

Interpreter::Interpreter(const kb::KnowledgeBase &kb,
                         const cxn::Repository &repo,
                         const tagger::Lexicon &lexicon, EngineConfig config)
    : kb_(kb), repo_(repo), lexicon_(lexicon), config_(std::move(config)) {
  if (config_.max_window < 1) throw Error("max_window must be at least 1");
}

Edge::Kind Interpreter::kind_of(const Expr &logic, const Expr &type) const {
  if (logic.is_sentence()) return Edge::Kind::kSentential;
  const Expr &probe = kb_.known(logic) ? logic : type;
  if (!probe.is_null() && kb_.known(probe) && kb_.is_collection(probe)) {
    return Edge::Kind::kCollection;
  }
  return Edge::Kind::kInstance;
}

bool Interpreter::fits(const std::string &slot_type, const Edge &edge) const {
  Expr t = Expr::constant(slot_type);
  if (!kb_.known(t) || edge.output_type.is_null() ||
      !kb_.known(edge.output_type)) {
    return false;
  }
  return kb_.subsumes(t, edge.output_type, kb::SubsumptionMode::kAuto);
}

ParseGraph Interpreter::seed(std::string_view text) const {
  ParseGraph graph;
  tagger::TagChart chart = tagger::tag(text, lexicon_);
  graph.tokens = std::move(chart.tokens);
  for (const auto &span : chart.spans) {
    for (const auto &reading : span.concepts) {
      Edge e;
      e.begin = span.begin;
      e.end = span.end;
      e.source = std::string(Edge::kLexicalSource);
      e.logic = reading;
      e.output_type = reading;
      e.kind = kind_of(reading, reading);
      graph.add(std::move(e));
    }
  }
  return graph;
}

ParseGraph Interpreter::interpret(std::string_view text) const {
  ParseGraph graph = seed(text);
  window_loop(graph);
  return graph;
}

size_t Interpreter::window_loop(ParseGraph &graph) const {
  size_t total = 0;
  const size_t n = graph.tokens.size();
  for (size_t pass = 1;; ++pass) {
    size_t added = 0;
    for (size_t anchor = 0; anchor < n; ++anchor) {
      for (size_t size = std::min(config_.max_window, n - anchor); size >= 1;
           --size) {
        bool survived = false;
        for (const auto &c : retrieve(graph, anchor, anchor + size)) {
          for (auto &edge : apply_construction(c, graph)) {
            survived = true;
            if (graph.edges().size() >= config_.max_edges) {
              if (!graph.truncated) {
                graph.truncated = true;
                graph.warnings.push_back(
                    "edge limit of " + std::to_string(config_.max_edges) +
                    " reached; interpretation truncated");
              }
              return total + added;
            }
            edge.pass = pass;
            if (graph.add(std::move(edge))) ++added;
          }
        }
        if (survived) break;
      }
    }
    total += added;
    if (added == 0) return total;
  }
}

std::vector<Candidate> Interpreter::retrieve(const ParseGraph &graph,
                                             size_t begin, size_t end,
                                             RetrievalStats *stats) const {
  RetrievalStats local;
  RetrievalStats &st = stats ? *stats : local;
  st = {};
  if (begin >= end || end > graph.tokens.size()) return {};
  st.paths = count_typed_patterns(graph, begin, end);
  const std::string &lang = config_.language;

  // Distinct ends of edges starting at each position, within the window.
  std::vector<std::vector<size_t>> ends(end - begin);
  std::vector<KeyItem> literal(end - begin);
  for (size_t p = begin; p < end; ++p) {
    std::set<size_t> e;
    for (size_t id : graph.starting_at(p)) {
      if (graph.edge(id).end <= end) e.insert(graph.edge(id).end);
    }
    ends[p - begin].assign(e.begin(), e.end());
    literal[p - begin] = {false, tagger::fold_case(graph.tokens[p].surface)};
  }

  // Tier 1: lexical keys of every path, pruned by stored key prefixes.
  std::set<Key> lexical_hits;
  std::set<std::pair<size_t, Key>> visited;
  Key key;
  std::function<void(size_t)> lexical = [&](size_t p) {
    if (!visited.emplace(p, key).second) return;
    if (p == end) {
      ++st.lexical_keys;
      if (!repo_.lookup(Tier::kLexical, lang, key).empty()) {
        lexical_hits.insert(key);
      }
      return;
    }
    key.push_back(literal[p - begin]);
    if (repo_.has_prefix(Tier::kLexical, lang, key)) lexical(p + 1);
    key.pop_back();
    for (size_t e : ends[p - begin]) lexical(e);
  };
  lexical(begin);

  // Tier 2: tilings consistent with a matched lexical key whose skeleton is
  // stored.
  struct Piece {
    bool slot;
    size_t begin, end;
  };
  std::vector<std::vector<Piece>> tilings;
  for (const Key &lex : lexical_hits) {
    Key skeleton;
    std::vector<Piece> pieces;
    std::function<void(size_t, size_t)> tile = [&](size_t p, size_t li) {
      if (p == end) {
        if (li != lex.size()) return;
        ++st.skeletons;
        if (!repo_.lookup(Tier::kSkeleton, lang, skeleton).empty()) {
          tilings.push_back(pieces);
        }
        return;
      }
      if (li < lex.size() && literal[p - begin] == lex[li]) {
        skeleton.push_back(lex[li]);
        pieces.push_back({false, p, p + 1});
        if (repo_.has_prefix(Tier::kSkeleton, lang, skeleton)) tile(p + 1, li + 1);
        pieces.pop_back();
        skeleton.pop_back();
      }
      for (size_t e : ends[p - begin]) {
        skeleton.push_back({true, ""});
        pieces.push_back({true, p, e});
        if (repo_.has_prefix(Tier::kSkeleton, lang, skeleton)) tile(e, li);
        pieces.pop_back();
        skeleton.pop_back();
      }
    };
    tile(begin, 0);
  }

  // Tier 3: cross product of the slot fillers' generalizations, restricted
  // to types some template uses, looked up exactly.
  const auto &used = repo_.used_types();
  std::set<Candidate> found;
  for (const auto &pieces : tilings) {
    std::vector<std::map<std::string, std::vector<size_t>>> buckets;
    bool viable = true;
    for (const auto &piece : pieces) {
      if (!piece.slot) continue;
      std::map<std::string, std::vector<size_t>> by_type;
      for (size_t id : graph.starting_at(piece.begin)) {
        const Edge &edge = graph.edge(id);
        if (edge.end != piece.end || !kb_.known(edge.output_type)) continue;
        for (const auto &g : kb_.generalizations(edge.output_type)) {
          if (g.kind() == Kind::kConstant && used.contains(g.name())) {
            by_type[g.name()].push_back(id);
          }
        }
      }
      if (by_type.empty()) {
        viable = false;
        break;
      }
      buckets.push_back(std::move(by_type));
    }
    if (!viable) continue;

    Key typed;
    std::vector<const std::vector<size_t> *> chosen;
    std::function<void(size_t, size_t)> expand = [&](size_t pi, size_t si) {
      if (pi == pieces.size()) {
        ++st.typed_lookups;
        for (size_t vi : repo_.lookup(Tier::kTyped, lang, typed)) {
          const auto &variant = repo_.variants()[vi];
          std::vector<std::pair<int, std::vector<size_t>>> options;
          size_t k = 0;
          for (const auto &item : variant.items) {
            if (!item.is_slot) continue;
            std::vector<size_t> ok;
            for (size_t id : *chosen[k]) {
              if (fits(item.slot.type, graph.edge(id))) ok.push_back(id);
            }
            options.emplace_back(item.slot.index, std::move(ok));
            ++k;
          }
          Candidate c{vi, begin, end, {}};
          std::function<void(size_t)> assign = [&](size_t oi) {
            if (oi == options.size()) {
              found.insert(c);
              return;
            }
            for (size_t id : options[oi].second) {
              c.binding[options[oi].first] = id;
              assign(oi + 1);
            }
            c.binding.erase(options[oi].first);
          };
          assign(0);
        }
        return;
      }
      const Piece &piece = pieces[pi];
      if (!piece.slot) {
        typed.push_back(literal[piece.begin - begin]);
        if (repo_.has_prefix(Tier::kTyped, lang, typed)) expand(pi + 1, si);
        typed.pop_back();
        return;
      }
      for (const auto &[type, ids] : buckets[si]) {
        typed.push_back({true, type});
        chosen.push_back(&ids);
        if (repo_.has_prefix(Tier::kTyped, lang, typed)) expand(pi + 1, si + 1);
        chosen.pop_back();
        typed.pop_back();
      }
    };
    expand(0, 0);
  }
  st.matches = found.size();
  return {found.begin(), found.end()};
}

void Interpreter::record(ParseGraph &graph, const Candidate &c,
                         std::string reason, std::string detail,
                         std::string logic) const {
  if (!config_.trace) return;
  Discard d{repo_.variants()[c.variant].construction, c.begin, c.end,
            std::move(reason), std::move(detail), std::move(logic)};
  auto same = [&](const Discard &o) {
    return o.construction == d.construction && o.begin == d.begin &&
           o.end == d.end && o.reason == d.reason && o.detail == d.detail &&
           o.logic == d.logic;
  };
  if (std::none_of(graph.discards.begin(), graph.discards.end(), same)) {
    graph.discards.push_back(std::move(d));
  }
}

std::vector<size_t> Interpreter::resolve_anaphora(const cxn::Slot &slot,
                                                  size_t window_begin,
                                                  const ParseGraph &graph) const {
  std::vector<const Edge *> pool;
  for (const auto &e : graph.edges()) {
    if (e.end <= window_begin && fits(slot.type, e)) pool.push_back(&e);
  }
  std::sort(pool.begin(), pool.end(), [](const Edge *a, const Edge *b) {
    if (a->end != b->end) return a->end > b->end;
    if (a->begin != b->begin) return a->begin > b->begin;
    return a->id < b->id;
  });
  std::vector<size_t> out;
  for (const Edge *e : pool) {
    if (out.size() >= config_.max_anaphor_candidates) break;
    out.push_back(e->id);
  }
  return out;
}

std::vector<Edge> Interpreter::apply_construction(const Candidate &candidate,
                                                  ParseGraph &graph) const {
  const auto &variant = repo_.variants()[candidate.variant];
  const cxn::Construction &cx = repo_.construction_of(variant);

  std::vector<std::vector<size_t>> antecedents;
  for (const auto &slot : cx.anaphoric) {
    auto found = resolve_anaphora(slot, candidate.begin, graph);
    if (found.empty()) {
      record(graph, candidate, "anaphora", "no antecedent for " + slot.str(),
             "");
      return {};
    }
    antecedents.push_back(std::move(found));
  }

  std::vector<Edge> out;
  std::map<int, size_t> binding = candidate.binding;
  std::function<void(size_t)> each = [&](size_t ai) {
    if (ai < antecedents.size()) {
      for (size_t id : antecedents[ai]) {
        binding[cx.anaphoric[ai].index] = id;
        each(ai + 1);
      }
      binding.erase(cx.anaphoric[ai].index);
      return;
    }

    logic::Binding test_values;
    std::map<int, const Edge *> children;
    for (const auto &[index, id] : binding) {
      const Edge &child = graph.edge(id);
      children[index] = &child;
      auto slot = cx.find_slot(index);
      test_values[slot->var()] = child.kind == Edge::Kind::kSentential
                                     ? child.output_type
                                     : child.logic;
    }
    for (const auto &test : cx.tests) {
      Expr instance = logic::substitute(test.expr, test_values);
      if (kb_.holds(instance, config_.context) != test.positive) {
        record(graph, candidate, test.positive ? "test+" : "test-", test.id,
               instance.str());
        return;
      }
    }

    Composition comp;
    try {
      comp = compose(cx, children, &graph);
    } catch (const CompositionError &e) {
      record(graph, candidate, "composition", e.what(), "");
      return;
    }
    std::vector<kb::Violation> violations;
    try {
      violations = kb_.check_plausibility(comp.logic, config_.context);
    } catch (const StructuralError &e) {
      record(graph, candidate, "structural", e.what(), comp.logic.str());
      return;
    }
    if (!violations.empty()) {
      const auto &v = violations.front();
      record(graph, candidate, "plausibility",
             std::string(kb::violation_kind_name(v.kind)) + " at " + v.path +
                 ": " + v.message,
             comp.logic.str());
      return;
    }

    Edge edge;
    edge.begin = candidate.begin;
    edge.end = candidate.end;
    edge.source = cx.id;
    edge.logic = comp.logic;
    edge.output_var = comp.output_var;
    edge.output_type = comp.output_type;
    edge.kind = kind_of(comp.logic, comp.output_type);
    edge.children = binding;
    out.push_back(std::move(edge));
  };
  each(0);
  return out;
}

std::vector<Interpretation> Interpreter::finalize(const ParseGraph &graph) const {
  std::vector<const Edge *> built;
  for (const auto &e : graph.edges()) {
    if (!e.is_lexical()) built.push_back(&e);
  }
  std::vector<Interpretation> out;
  for (const Edge *e : built) {
    bool covered = std::any_of(built.begin(), built.end(), [&](const Edge *o) {
      return o->begin <= e->begin && e->end <= o->end &&
             o->end - o->begin > e->end - e->begin;
    });
    if (covered) continue;
    logic::Binding renaming;
    Interpretation i;
    i.edge = e->id;
    i.begin = e->begin;
    i.end = e->end;
    i.source = e->source;
    i.logic = logic::tidy_query_vars(e->logic, &renaming);
    if (e->output_var) {
      auto it = renaming.find(*e->output_var);
      i.output_var = it == renaming.end() ? *e->output_var : it->second;
    }
    if (config_.policy != OutputPolicy::kQuestion) {
      i.logic = logic::quantify_existential(i.logic);
    }
    i.output_type = e->output_type;
    i.conjuncts = logic::conjuncts(e->logic).size();
    out.push_back(std::move(i));
  }
  std::sort(out.begin(), out.end(),
            [](const Interpretation &a, const Interpretation &b) {
              size_t la = a.end - a.begin, lb = b.end - b.begin;
              if (la != lb) return la > lb;
              if (a.conjuncts != b.conjuncts) return a.conjuncts < b.conjuncts;
              std::string sa = a.logic.str(), sb = b.logic.str();
              if (sa != sb) return sa < sb;
              if (a.begin != b.begin) return a.begin < b.begin;
              return a.edge < b.edge;
            });
  std::vector<Interpretation> unique;
  std::set<std::string> seen;
  for (auto &i : out) {
    std::string key = std::to_string(i.begin) + ":" + std::to_string(i.end) +
                      ":" + i.logic.str();
    if (seen.insert(key).second) unique.push_back(std::move(i));
  }
  return unique;
}

}  // namespace scg::interp
