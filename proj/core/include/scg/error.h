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

#ifndef SCG_ERROR_H_
#define SCG_ERROR_H_

#include <stdexcept>
#include <string>

namespace scg {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed concrete syntax. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string &message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A term was queried that the knowledge base has never seen.
class UnknownTermError : public Error {
 public:
  explicit UnknownTermError(const std::string &term)
      : Error("unknown term: " + term), term_(term) {}
  const std::string &term() const { return term_; }

 private:
  std::string term_;
};

// A non-atomic term whose functor has no result signature.
class UntypedTermError : public Error {
 public:
  explicit UntypedTermError(const std::string &term)
      : Error("no result signature for: " + term) {}
};

// A resource file (KB, lexicon, constructions) violates its contract.
class LoadError : public Error {
 public:
  using Error::Error;
};

// An expression is structurally malformed. `path` lists child indices from
// the root, e.g. "/2/1".
class StructuralError : public Error {
 public:
  StructuralError(const std::string &message, const std::string &path)
      : Error(message + " at " + (path.empty() ? std::string("/") : path)),
        path_(path) {}
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace scg

#endif  // SCG_ERROR_H_
