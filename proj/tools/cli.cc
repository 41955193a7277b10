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


#include "scg/cli.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "scg/constructions.h"
#include "scg/error.h"
#include "scg/kb.h"
#include "scg/sexpr.h"
#include "scg/tagger.h"

namespace scg::cli {
namespace {

using nlohmann::json;

json datum_to_json(const sexpr::Datum &d) {
  if (d.is_list()) {
    json out = json::array();
    for (const auto &item : d.items) out.push_back(datum_to_json(item));
    return out;
  }
  if (d.is_string()) return sexpr::quote(d.text);
  return d.text;
}

void json_to_sexpr(const json &j, std::string *out) {
  if (j.is_array()) {
    *out += '(';
    bool first = true;
    for (const auto &item : j) {
      if (!first) *out += ' ';
      first = false;
      json_to_sexpr(item, out);
    }
    *out += ')';
    return;
  }
  if (!j.is_string()) throw Error("logic arrays may only hold strings");
  *out += j.get<std::string>();
}

std::string span_text(const std::vector<tagger::Token> &tokens,
                      std::string_view text, size_t begin, size_t end) {
  if (begin >= end || end > tokens.size()) return "";
  size_t from = tokens[begin].begin;
  size_t to = tokens[end - 1].end;
  return std::string(text.substr(from, to - from));
}

std::string read_file(const std::string &path) {
  return read_source(path).text;
}

// Options shared by every subcommand.
struct Manifest {
  std::vector<std::string> kb_files;
  std::vector<std::string> lexicon_files;
  std::vector<std::string> construction_files;
  std::string language = "en";
  size_t max_window = 12;
  std::string mode = "statement";
  std::string format = "cycl";
  std::string context;
  size_t max_edges = 50000;
  std::string length_unit = "tokens";
};

void add_resource_options(CLI::App *cmd, Manifest *m) {
  cmd->add_option("--kb", m->kb_files, "knowledge base file (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::ExistingFile);
  cmd->add_option("--lexicon", m->lexicon_files, "lexicon file (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::ExistingFile);
  cmd->add_option("--constructions", m->construction_files,
                  "construction file (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::ExistingFile);
}

void add_engine_options(CLI::App *cmd, Manifest *m) {
  cmd->add_option("--lang", m->language, "template language")
      ->capture_default_str();
  cmd->add_option("--max-window", m->max_window, "window size in tokens")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", m->mode, "output policy")
      ->capture_default_str()
      ->check(CLI::IsMember({"statement", "question", "check"}));
  cmd->add_option("--context", m->context, "context overlay name");
  cmd->add_option("--max-edges", m->max_edges, "parse graph edge budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

interp::EngineConfig engine_config(const Manifest &m) {
  interp::EngineConfig config;
  config.language = m.language;
  config.max_window = m.max_window;
  config.policy = interp::parse_policy(m.mode);
  config.max_edges = m.max_edges;
  if (!m.context.empty()) config.context.overlay = m.context;
  return config;
}

struct Resources {
  kb::KnowledgeBase kb;
  tagger::Lexicon lexicon;
  cxn::Repository repo;
};

void require(const std::vector<std::string> &files, std::string_view flag) {
  if (files.empty()) {
    throw CLI::ValidationError(std::string(flag),
                               "at least one file is required");
  }
}

Resources load(const Manifest &m) {
  Resources r;
  r.kb = kb::KnowledgeBase::from_files(m.kb_files);
  r.lexicon = tagger::Lexicon::from_files(m.lexicon_files);
  r.repo = cxn::Repository::from_files(m.construction_files);
  return r;
}

json provenance(const interp::ParseGraph &graph, size_t edge_id) {
  const auto &e = graph.edge(edge_id);
  json node = {{"edge", e.id},
               {"source", e.source},
               {"span", {e.begin, e.end}},
               {"kind", interp::edge_kind_name(e.kind)},
               {"logic", logic_to_json(e.logic)}};
  json children = json::object();
  for (const auto &[slot, child] : e.children) {
    children[std::to_string(slot)] = provenance(graph, child);
  }
  node["children"] = std::move(children);
  return node;
}

int cmd_interpret(const Manifest &m, const std::string &text,
                  std::ostream &out) {
  Resources r = load(m);
  interp::EngineConfig config = engine_config(m);
  config.trace = m.format == "trace";
  interp::Interpreter engine(r.kb, r.repo, r.lexicon, config);
  interp::ParseGraph graph = engine.interpret(text);
  auto results = engine.finalize(graph);

  if (m.format == "json") {
    json doc = {{"text", text}, {"mode", m.mode}};
    json tokens = json::array();
    for (const auto &t : graph.tokens) {
      tokens.push_back({{"surface", t.surface}, {"begin", t.begin},
                        {"end", t.end}});
    }
    doc["tokens"] = std::move(tokens);
    json items = json::array();
    for (size_t i = 0; i < results.size(); ++i) {
      const auto &res = results[i];
      json item = {{"id", "i" + std::to_string(i + 1)},
                   {"span", {res.begin, res.end}},
                   {"text", span_text(graph.tokens, text, res.begin, res.end)},
                   {"construction", res.source},
                   {"logic", logic_to_json(res.logic)},
                   {"output_type", logic_to_json(res.output_type)},
                   {"provenance", provenance(graph, res.edge)}};
      item["output_var"] =
          res.output_var ? json(res.output_var->str()) : json(nullptr);
      items.push_back(std::move(item));
    }
    doc["interpretations"] = std::move(items);
    doc["warnings"] = graph.warnings;
    doc["truncated"] = graph.truncated;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  for (size_t i = 0; i < results.size(); ++i) {
    const auto &res = results[i];
    out << "i" << (i + 1) << "\t[" << res.begin << "," << res.end << ")\t"
        << span_text(graph.tokens, text, res.begin, res.end) << "\t"
        << res.source << "\t" << res.logic.str() << "\n";
  }
  for (const auto &w : graph.warnings) out << "warning\t" << w << "\n";
  if (m.format == "trace") {
    for (const auto &d : graph.discards) {
      out << "discarded\t[" << d.begin << "," << d.end << ")\t"
          << d.construction << "\t" << d.reason << "\t" << d.detail;
      if (!d.logic.empty()) out << "\t" << d.logic;
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_tag(const Manifest &m, const std::string &text, std::ostream &out) {
  tagger::Lexicon lexicon = tagger::Lexicon::from_files(m.lexicon_files);
  tagger::TagChart chart = tagger::tag(text, lexicon);
  if (m.format == "json") {
    json rows = json::array();
    for (const auto &s : chart.spans) {
      json concepts = json::array();
      for (const auto &c : s.concepts) concepts.push_back(logic_to_json(c));
      rows.push_back({{"span", {s.begin, s.end}},
                      {"text", span_text(chart.tokens, text, s.begin, s.end)},
                      {"concepts", std::move(concepts)}});
    }
    out << rows.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto &s : chart.spans) {
    out << span_text(chart.tokens, text, s.begin, s.end) << "\t["
        << s.begin << "," << s.end << ")\t" << s.concepts.size() << "\t";
    for (size_t i = 0; i < s.concepts.size(); ++i) {
      if (i) out << " ";
      out << s.concepts[i].str();
    }
    out << "\n";
  }
  return kExitOk;
}

int cmd_lint(const Manifest &m, std::ostream &out) {
  std::vector<Diagnostic> findings;
  kb::KnowledgeBase kb = kb::KnowledgeBase::from_files(m.kb_files, &findings);

  std::optional<cxn::Repository> repo;
  for (const auto &path : m.construction_files) {
    Source source = read_source(path);
    try {
      cxn::parse_constructions(source.text, source.name);
    } catch (const LoadError &e) {
      findings.push_back({"construction", "", e.what(), {}});
    }
  }
  try {
    repo = cxn::Repository::from_files(m.construction_files);
  } catch (const LoadError &e) {
    findings.push_back({"construction", "", e.what(), {}});
  }
  if (repo) {
    for (auto &d : repo->lint(kb)) findings.push_back(std::move(d));
  }

  if (!m.lexicon_files.empty()) {
    try {
      tagger::Lexicon lexicon = tagger::Lexicon::from_files(m.lexicon_files);
      for (const auto &entry : lexicon.entries()) {
        for (const auto &reading : entry.readings) {
          if (!kb.known(reading)) {
            findings.push_back({"unknown-lexicon-concept", "",
                                "lexicon entry \"" + entry.surface +
                                    "\" names unknown concept " +
                                    reading.str(),
                                {reading.str()}});
          }
        }
      }
    } catch (const LoadError &e) {
      findings.push_back({"lexicon", "", e.what(), {}});
    }
  }

  for (const auto &d : findings) {
    json line = {{"code", d.code},
                 {"location", d.location},
                 {"message", d.message},
                 {"terms", d.terms}};
    out << line.dump() << "\n";
  }
  return findings.empty() ? kExitOk : kExitLint;
}

int cmd_eval(const Manifest &m, const std::string &captions_file,
             const std::string &verdicts_file, std::ostream &out) {
  Resources r = load(m);
  interp::Interpreter engine(r.kb, r.repo, r.lexicon, engine_config(m));
  auto captions = parse_captions(read_file(captions_file));
  auto sheets = build_worksheet(engine, captions);
  if (verdicts_file.empty()) {
    write_worksheet(sheets, out);
    return kExitOk;
  }
  VerdictMap verdicts = parse_verdicts(read_file(verdicts_file), sheets);
  LengthUnit unit = parse_length_unit(m.length_unit);
  Metrics metrics = score(sheets, verdicts, unit);
  if (m.format == "json") {
    json doc = {{"captions", metrics.captions},
                {"scored", metrics.scored},
                {"correct", metrics.correct},
                {"coverage", metrics.coverage},
                {"precision", metrics.precision},
                {"mean_length", metrics.mean_length},
                {"length_unit", m.length_unit}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "captions\t" << metrics.captions << "\n"
      << "scored\t" << metrics.scored << "\n"
      << "correct\t" << metrics.correct << "\n"
      << "coverage\t" << metrics.coverage << "\n"
      << "precision\t" << metrics.precision << "\n"
      << "mean_length\t" << metrics.mean_length << " " << m.length_unit
      << "\n";
  return kExitOk;
}

}  // namespace

json logic_to_json(const logic::Expr &e) {
  return datum_to_json(sexpr::read_one(e.str()));
}

logic::Expr logic_from_json(const json &j) {
  std::string text;
  json_to_sexpr(j, &text);
  return logic::parse_expr(text);
}

LengthUnit parse_length_unit(std::string_view name) {
  if (name == "tokens") return LengthUnit::kTokens;
  if (name == "chars") return LengthUnit::kChars;
  throw Error("unknown length unit: " + std::string(name));
}

std::vector<Caption> parse_captions(std::string_view text) {
  std::vector<Caption> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error("captions line " + std::to_string(number) +
                  ": expected id<TAB>text");
    }
    out.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

std::vector<CaptionSheet> build_worksheet(const interp::Interpreter &engine,
                                          const std::vector<Caption> &captions) {
  std::vector<CaptionSheet> sheets(captions.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < captions.size(); i = next++) {
      const Caption &c = captions[i];
      interp::ParseGraph graph = engine.interpret(c.text);
      CaptionSheet &sheet = sheets[i];
      sheet.id = c.id;
      sheet.text = c.text;
      sheet.tokens = graph.tokens.size();
      auto results = engine.finalize(graph);
      for (size_t k = 0; k < results.size(); ++k) {
        const auto &res = results[k];
        SheetEntry entry;
        entry.id = "i" + std::to_string(k + 1);
        entry.begin = res.begin;
        entry.end = res.end;
        entry.chars =
            span_text(graph.tokens, c.text, res.begin, res.end).size();
        entry.source = res.source;
        entry.logic = res.logic.str();
        sheet.interpretations.push_back(std::move(entry));
      }
    }
  };
  size_t n = std::min<size_t>(
      captions.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  return sheets;
}

void write_worksheet(const std::vector<CaptionSheet> &sheets,
                     std::ostream &out) {
  for (const auto &sheet : sheets) {
    out << "# " << sheet.id << "\t" << sheet.tokens << " tokens\t"
        << sheet.text << "\n";
    for (const auto &e : sheet.interpretations) {
      out << sheet.id << " " << e.id << "\t[" << e.begin << "," << e.end
          << ")\t" << e.source << "\t" << e.logic << "\n";
    }
  }
}

VerdictMap parse_verdicts(std::string_view text,
                          const std::vector<CaptionSheet> &sheets) {
  std::map<std::string, std::set<std::string>> known;
  for (const auto &s : sheets) {
    auto &ids = known[s.id];
    for (const auto &e : s.interpretations) ids.insert(e.id);
  }
  VerdictMap out;
  std::vector<std::string> unknown;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string caption, id, verdict, extra;
    if (!(fields >> caption) || caption[0] == '#') continue;
    if (!(fields >> id >> verdict) || (fields >> extra)) {
      throw Error("verdicts line " + std::to_string(number) +
                  ": expected caption-id interpretation-id correct|incorrect");
    }
    if (verdict != "correct" && verdict != "incorrect") {
      throw Error("verdicts line " + std::to_string(number) +
                  ": unknown verdict " + verdict);
    }
    auto it = known.find(caption);
    if (it == known.end() || !it->second.count(id)) {
      unknown.push_back(caption + " " + id);
      continue;
    }
    out[{caption, id}] =
        verdict == "correct" ? Verdict::kCorrect : Verdict::kIncorrect;
  }
  if (!unknown.empty()) {
    std::string msg = "verdicts reference unknown interpretation ids:";
    for (const auto &u : unknown) msg += " " + u;
    throw Error(msg);
  }
  return out;
}

Metrics score(const std::vector<CaptionSheet> &sheets,
              const VerdictMap &verdicts, LengthUnit unit) {
  Metrics m;
  m.captions = sheets.size();
  double coverage_sum = 0;
  double length_sum = 0;
  for (const auto &sheet : sheets) {
    const auto &items = sheet.interpretations;
    std::vector<const SheetEntry *> accepted;
    for (size_t i = 0; i < items.size() && accepted.empty();) {
      size_t level = items[i].tokens();
      for (; i < items.size() && items[i].tokens() == level; ++i) {
        auto it = verdicts.find({sheet.id, items[i].id});
        if (it == verdicts.end()) continue;
        ++m.scored;
        if (it->second == Verdict::kCorrect) {
          ++m.correct;
          accepted.push_back(&items[i]);
        }
      }
    }
    std::vector<bool> covered(sheet.tokens, false);
    for (const SheetEntry *e : accepted) {
      for (size_t t = e->begin; t < e->end && t < sheet.tokens; ++t) {
        covered[t] = true;
      }
      length_sum += static_cast<double>(
          unit == LengthUnit::kTokens ? e->tokens() : e->chars);
    }
    if (sheet.tokens > 0) {
      coverage_sum += static_cast<double>(
                          std::count(covered.begin(), covered.end(), true)) /
                      static_cast<double>(sheet.tokens);
    }
  }
  if (m.captions) coverage_sum /= static_cast<double>(m.captions);
  m.coverage = coverage_sum;
  m.precision = m.scored ? static_cast<double>(m.correct) /
                               static_cast<double>(m.scored)
                         : 0.0;
  m.mean_length = m.correct ? length_sum / static_cast<double>(m.correct) : 0;
  return m;
}

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Construction-grammar semantic interpreter"};
  app.require_subcommand(1);
  Manifest m;
  std::string text;
  std::string text_file;
  std::string captions_file;
  std::string verdicts_file;

  auto *interpret = app.add_subcommand("interpret", "interpret text");
  add_resource_options(interpret, &m);
  add_engine_options(interpret, &m);
  interpret->add_option("--format", m.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"cycl", "json", "trace"}));
  interpret->add_option("--file", text_file, "read the text from a file")
      ->check(CLI::ExistingFile);
  interpret->add_option("text", text, "text to interpret");

  auto *tag = app.add_subcommand("tag", "show concept tags");
  add_resource_options(tag, &m);
  tag->add_option("--format", m.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"cycl", "json"}));
  tag->add_option("text", text, "text to tag")->required();

  auto *lint = app.add_subcommand("lint", "check resources");
  add_resource_options(lint, &m);

  auto *eval = app.add_subcommand("eval", "evaluation worksheet and metrics");
  add_resource_options(eval, &m);
  add_engine_options(eval, &m);
  eval->add_option("--format", m.format, "metrics format")
      ->check(CLI::IsMember({"cycl", "json"}));
  eval->add_option("--verdicts", verdicts_file, "verdict file")
      ->check(CLI::ExistingFile);
  eval->add_option("--length-unit", m.length_unit,
                   "unit for the mean length of correct interpretations")
      ->capture_default_str()
      ->check(CLI::IsMember({"tokens", "chars"}));
  eval->add_option("captions", captions_file, "id<TAB>caption file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
    if (*interpret || *eval) {
      require(m.kb_files, "--kb");
      require(m.lexicon_files, "--lexicon");
      require(m.construction_files, "--constructions");
    } else if (*tag) {
      require(m.lexicon_files, "--lexicon");
    } else if (*lint) {
      require(m.kb_files, "--kb");
    }
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*interpret) {
      if (!text_file.empty()) text = read_file(text_file);
      return cmd_interpret(m, text, out);
    }
    if (*tag) return cmd_tag(m, text, out);
    if (*lint) return cmd_lint(m, out);
    return cmd_eval(m, captions_file, verdicts_file, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitLoad;
  }
}

}  // namespace scg::cli
