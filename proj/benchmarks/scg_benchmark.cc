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


#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "scg/constructions.h"
#include "scg/interpreter.h"
#include "scg/kb.h"
#include "scg/logic.h"
#include "scg/tagger.h"

namespace {

using scg::cxn::Repository;
using scg::interp::Interpreter;
using scg::kb::KnowledgeBase;
using scg::tagger::Lexicon;

std::string data(const char *name) {
  return std::string(SCG_DATA_DIR) + "/" + name;
}

struct Demo {
  KnowledgeBase kb = KnowledgeBase::from_files(
      std::vector<std::string>{data("upper.kb"), data("demo.kb")});
  Lexicon lexicon =
      Lexicon::from_files(std::vector<std::string>{data("demo.lex")});
  Repository repo =
      Repository::from_files(std::vector<std::string>{data("demo.cxn")});
  Interpreter engine{kb, repo, lexicon};
};

const Demo &demo() {
  static const Demo *d = new Demo();
  return *d;
}

const char *const kSentences[] = {
    "big blue building",
    "Barack Obama eats a sandwich",
    "Wimbledon Masters Ashes Superbowl Daytona Olympics came at the end of "
    "the 2015 season",
};

void BM_Tag(benchmark::State &state) {
  const auto &d = demo();
  const char *text = kSentences[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(scg::tagger::tag(text, d.lexicon));
  }
}
BENCHMARK(BM_Tag)->DenseRange(0, 2);

void BM_Retrieve(benchmark::State &state) {
  const auto &d = demo();
  auto graph = d.engine.seed(kSentences[state.range(0)]);
  const size_t n = graph.tokens.size();
  for (auto _ : state) {
    for (size_t b = 0; b < n; ++b) {
      for (size_t e = b + 1; e <= n; ++e) {
        benchmark::DoNotOptimize(d.engine.retrieve(graph, b, e));
      }
    }
  }
}
BENCHMARK(BM_Retrieve)->DenseRange(0, 2);

void BM_Interpret(benchmark::State &state) {
  const auto &d = demo();
  const char *text = kSentences[state.range(0)];
  for (auto _ : state) {
    auto graph = d.engine.interpret(text);
    benchmark::DoNotOptimize(d.engine.finalize(graph));
  }
}
BENCHMARK(BM_Interpret)->DenseRange(0, 2);

void BM_Simplify(benchmark::State &state) {
  auto e = scg::logic::parse_expr(
      "(and (isa ?EAT EatingEvent) (equals ?EAT ?EVT) (isa ?OBJ Sandwich) "
      "(doneBy ?EVT BarackObama) (and (consumedObject ?EVT ?OBJ) (True)))");
  for (auto _ : state) {
    benchmark::DoNotOptimize(scg::logic::simplify(e));
  }
}
BENCHMARK(BM_Simplify);

}  // namespace

BENCHMARK_MAIN();
