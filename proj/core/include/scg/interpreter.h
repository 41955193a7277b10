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

// The interpretation engine. Text is concept-tagged, every tag becomes a
// lexical edge in a parse graph, and a window slides over the tokens
// retrieving constructions whose templates match some path of tokens and
// edges through the window. Matching constructions are applied (anaphora
// resolved, semantic tests run, children composed, plausibility checked) and
// each survivor becomes a new edge. Passes repeat until no new edge appears.
//
//   Interpreter engine(kb, repo, lexicon, config);
//   ParseGraph graph = engine.interpret("big blue building");
//   for (const auto &i : engine.finalize(graph)) std::cout << i.logic.str();

#ifndef SCG_INTERPRETER_H_
#define SCG_INTERPRETER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "scg/constructions.h"
#include "scg/kb.h"
#include "scg/logic.h"
#include "scg/tagger.h"

namespace scg::interp {

using logic::Expr;

enum class OutputPolicy { kStatement, kQuestion, kCheck };

OutputPolicy parse_policy(std::string_view name);
std::string_view policy_name(OutputPolicy policy);

struct EngineConfig {
  size_t max_window = 12;
  std::string language = "en";
  size_t max_anaphor_candidates = 5;
  OutputPolicy policy = OutputPolicy::kStatement;
  size_t max_edges = 50000;
  kb::ContextStack context;
  bool trace = false;  // record discarded candidates
};

struct Edge {
  enum class Kind { kInstance, kCollection, kSentential };

  size_t id = 0;
  size_t begin = 0;  // token span, half-open
  size_t end = 0;
  Kind kind = Kind::kInstance;
  std::string source;  // "lex" or a construction id
  Expr logic;
  std::optional<Expr> output_var;
  Expr output_type;
  // Slot index -> child edge id, anaphoric slots included.
  std::map<int, size_t> children;
  size_t pass = 0;

  bool is_lexical() const { return source == kLexicalSource; }
  static constexpr std::string_view kLexicalSource = "lex";
};

std::string_view edge_kind_name(Edge::Kind kind);

// A candidate that was dropped, with the reason (trace mode).
struct Discard {
  std::string construction;
  size_t begin = 0;
  size_t end = 0;
  std::string reason;  // "test+", "test-", "plausibility", "anaphora", ...
  std::string detail;  // failed test id or violation description
  std::string logic;   // the candidate expression when one was built
};

class ParseGraph {
 public:
  std::vector<tagger::Token> tokens;
  std::vector<Discard> discards;
  std::vector<std::string> warnings;
  bool truncated = false;

  const std::vector<Edge> &edges() const { return edges_; }
  const Edge &edge(size_t id) const { return edges_.at(id); }
  // Ids of edges starting at token `begin`, in insertion order.
  const std::vector<size_t> &starting_at(size_t begin) const;

  // Adds the edge unless an equivalent one exists (same span, source,
  // output type, and logic/output variable up to renaming). Returns the new
  // id, or nullopt for a duplicate.
  std::optional<size_t> add(Edge edge);

  int fresh_suffix() { return ++suffix_counter_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<size_t>> by_begin_;
  std::unordered_set<std::string> seen_;
  int suffix_counter_ = 0;
};

// An item of a path through a window: a literal token or an edge.
struct PathItem {
  bool is_edge = false;
  size_t token = 0;  // literal: token index
  size_t edge = 0;   // edge id
};

// A construction variant matched against a window, with the edge filling
// each slot of the variant.
struct Candidate {
  size_t variant = 0;  // index into Repository::variants()
  size_t begin = 0;
  size_t end = 0;
  std::map<int, size_t> binding;  // slot index -> edge id

  friend bool operator==(const Candidate &, const Candidate &) = default;
  friend auto operator<=>(const Candidate &, const Candidate &) = default;
};

struct RetrievalStats {
  size_t paths = 0;          // typed patterns before generalization
  size_t lexical_keys = 0;   // distinct lexical keys probed
  size_t skeletons = 0;      // tilings probed against the skeleton tier
  size_t typed_lookups = 0;  // typed keys probed
  size_t matches = 0;
};

// Number of paths (literal-or-edge choices per position) tiling
// [begin, end). For a freshly tagged window this is the product over tokens
// of (readings + 1).
size_t count_typed_patterns(const ParseGraph &graph, size_t begin, size_t end);

struct Composition {
  Expr logic;
  std::optional<Expr> output_var;
  Expr output_type;
};

// Composes a construction's logic with the edges bound to its slots.
// Non-sentential children are substituted directly; sentential children are
// renamed apart, their output variable substituted into the slot and their
// sentence conjoined ahead of the matrix. The result is simplified.
Composition compose(const cxn::Construction &matrix,
                    const std::map<int, const Edge *> &binding,
                    ParseGraph *graph);

struct Interpretation {
  size_t edge = 0;
  size_t begin = 0;
  size_t end = 0;
  std::string source;
  Expr logic;  // after the output policy and variable tidying
  std::optional<Expr> output_var;
  Expr output_type;
  size_t conjuncts = 0;
};

class Interpreter {
 public:
  Interpreter(const kb::KnowledgeBase &kb, const cxn::Repository &repo,
              const tagger::Lexicon &lexicon, EngineConfig config = {});

  const EngineConfig &config() const { return config_; }

  // Tags, seeds and runs the window loop to a fixpoint.
  ParseGraph interpret(std::string_view text) const;

  // Tags the text and adds one lexical edge per (span, concept).
  ParseGraph seed(std::string_view text) const;

  // Runs passes until no new edge is added; returns the number added.
  size_t window_loop(ParseGraph &graph) const;

  std::vector<Candidate> retrieve(const ParseGraph &graph, size_t begin,
                                  size_t end,
                                  RetrievalStats *stats = nullptr) const;

  // Resolves anaphora, runs tests, composes and checks plausibility.
  // Returns the surviving edges (not yet added to the graph).
  std::vector<Edge> apply_construction(const Candidate &candidate,
                                       ParseGraph &graph) const;

  // Compatible edges ending at or before `window_begin`, nearest first,
  // at most max_anaphor_candidates.
  std::vector<size_t> resolve_anaphora(const cxn::Slot &slot,
                                       size_t window_begin,
                                       const ParseGraph &graph) const;

  // Maximal construction edges, ranked; the output policy applied.
  std::vector<Interpretation> finalize(const ParseGraph &graph) const;

  // Type compatibility of an edge with a slot (auto-mode subsumption).
  bool fits(const std::string &slot_type, const Edge &edge) const;

 private:
  Edge::Kind kind_of(const Expr &logic, const Expr &type) const;
  void record(ParseGraph &graph, const Candidate &c, std::string reason,
              std::string detail, std::string logic) const;

  const kb::KnowledgeBase &kb_;
  const cxn::Repository &repo_;
  const tagger::Lexicon &lexicon_;
  EngineConfig config_;
};

}  // namespace scg::interp

#endif  // SCG_INTERPRETER_H_
