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


// Loads the bundled demo resources for tests.

#ifndef SCG_TESTS_SUPPORT_FIXTURES_H_
#define SCG_TESTS_SUPPORT_FIXTURES_H_

#include <memory>
#include <string>
#include <vector>

#include "scg/constructions.h"
#include "scg/interpreter.h"
#include "scg/kb.h"
#include "scg/tagger.h"

namespace scg::testing {

inline std::string data_path(const std::string &name) {
  return std::string(SCG_DATA_DIR) + "/" + name;
}

struct Bundle {
  std::vector<std::string> kb_files;
  std::vector<std::string> lexicon_files;
  std::vector<std::string> construction_files;

  // Resource flags for the command-line tool.
  std::vector<std::string> flags() const {
    std::vector<std::string> out;
    for (const auto &f : kb_files) out.insert(out.end(), {"--kb", f});
    for (const auto &f : lexicon_files) out.insert(out.end(), {"--lexicon", f});
    for (const auto &f : construction_files) {
      out.insert(out.end(), {"--constructions", f});
    }
    return out;
  }
};

inline Bundle demo_bundle() {
  return {{data_path("upper.kb"), data_path("demo.kb")},
          {data_path("demo.lex")},
          {data_path("demo.cxn")}};
}

inline Bundle biology_bundle() {
  return {{data_path("upper.kb"), data_path("biology.kb")},
          {data_path("biology.lex")},
          {data_path("biology.cxn")}};
}

struct Resources {
  kb::KnowledgeBase kb;
  tagger::Lexicon lexicon;
  cxn::Repository repo;
};

inline std::unique_ptr<Resources> load(const Bundle &b) {
  auto r = std::make_unique<Resources>();
  r->kb = kb::KnowledgeBase::from_files(b.kb_files);
  r->lexicon = tagger::Lexicon::from_files(b.lexicon_files);
  r->repo = cxn::Repository::from_files(b.construction_files);
  return r;
}

}  // namespace scg::testing

#endif  // SCG_TESTS_SUPPORT_FIXTURES_H_
