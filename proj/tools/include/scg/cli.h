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


// Command-line front end: resource loading, interpretation output in several
// formats, tag inspection, resource linting, and the manual evaluation
// harness (scoring worksheet plus metrics from human verdicts).
//
//   scg interpret --kb data/upper.kb --kb data/demo.kb
//       --lexicon data/demo.lex --constructions data/demo.cxn
//       "big blue building"

#ifndef SCG_CLI_H_
#define SCG_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scg/interpreter.h"
#include "scg/logic.h"

namespace scg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitLoad = 2,
  kExitLint = 3,
};

// Logic as nested JSON arrays: every list becomes an array and every atom
// its printed form, so "(isa ?X Dog)" is ["isa", "?X", "Dog"].
nlohmann::json logic_to_json(const logic::Expr &e);
logic::Expr logic_from_json(const nlohmann::json &j);

enum class LengthUnit { kTokens, kChars };
LengthUnit parse_length_unit(std::string_view name);

struct Caption {
  std::string id;
  std::string text;
};

// Parses "id<TAB>text" lines; blank lines are skipped.
std::vector<Caption> parse_captions(std::string_view text);

// One ranked interpretation of a caption, as shown to the human scorer.
struct SheetEntry {
  std::string id;  // "i1", "i2", ... in rank order
  size_t begin = 0;
  size_t end = 0;
  size_t chars = 0;  // byte length of the covered text
  std::string source;
  std::string logic;

  size_t tokens() const { return end - begin; }
};

struct CaptionSheet {
  std::string id;
  std::string text;
  size_t tokens = 0;
  std::vector<SheetEntry> interpretations;  // largest span first
};

// Interprets every caption, in parallel, keeping input order.
std::vector<CaptionSheet> build_worksheet(const interp::Interpreter &engine,
                                          const std::vector<Caption> &captions);

void write_worksheet(const std::vector<CaptionSheet> &sheets,
                     std::ostream &out);

enum class Verdict { kCorrect, kIncorrect };
using VerdictMap = std::map<std::pair<std::string, std::string>, Verdict>;

// Parses "caption-id interpretation-id correct|incorrect" lines. Throws
// Error naming any caption or interpretation id absent from `sheets`.
VerdictMap parse_verdicts(std::string_view text,
                          const std::vector<CaptionSheet> &sheets);

struct Metrics {
  size_t captions = 0;
  size_t scored = 0;   // verdicts consumed by the largest-first walk
  size_t correct = 0;  // of those, marked correct
  double coverage = 0;     // mean fraction of caption tokens covered
  double precision = 0;    // correct / scored
  double mean_length = 0;  // over correct interpretations
};

// Each caption is scored by walking its interpretations from the largest
// span size down. Verdicts met along the way count towards precision; the
// walk stops after the first span size holding a correct interpretation,
// whose correct interpretations are accepted. Coverage is the fraction of
// the caption's tokens inside accepted interpretations, averaged over
// captions. A caption without tokens contributes a coverage of zero.
Metrics score(const std::vector<CaptionSheet> &sheets,
              const VerdictMap &verdicts, LengthUnit unit);

// Runs the tool. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

}  // namespace scg::cli

#endif  // SCG_CLI_H_
