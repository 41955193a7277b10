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

#include "scg/logic.h"

#include <algorithm>
#include <cctype>

#include "scg/error.h"

namespace scg::logic {

struct Expr::Node {
  Kind kind = Kind::kConstant;
  std::string name;
  int index = 0;
  Rational value;
  // App: head followed by the arguments. Binders: bound variables followed
  // by the body.
  std::vector<Expr> children;
  size_t num_bound = 0;
};

namespace {

std::shared_ptr<Expr::Node> make(Kind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

void require_query_var(const Expr &v, const char *what) {
  if (v.is_null() || v.kind() != Kind::kQueryVar) {
    throw StructuralError(std::string(what) + " binds a non-variable", "");
  }
}

}  // namespace

const Expr::Node &Expr::node() const {
  if (!node_) throw Error("access to null expression");
  return *node_;
}

Expr Expr::constant(std::string name) {
  auto n = make(Kind::kConstant);
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::numeral(Rational value) {
  auto n = make(Kind::kNumeral);
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::text(std::string value) {
  auto n = make(Kind::kText);
  n->name = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::typed_var(std::string type, int index) {
  auto n = make(Kind::kTypedVar);
  n->name = std::move(type);
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::query_var(std::string name) {
  auto n = make(Kind::kQueryVar);
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::nat(std::string functor, std::vector<Expr> args) {
  auto n = make(Kind::kNat);
  n->name = std::move(functor);
  n->children = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::app(Expr head, std::vector<Expr> args) {
  auto n = make(Kind::kApp);
  n->children.reserve(args.size() + 1);
  n->children.push_back(std::move(head));
  for (auto &a : args) n->children.push_back(std::move(a));
  return Expr(std::move(n));
}

Expr Expr::conj(std::vector<Expr> conjuncts) {
  if (conjuncts.empty()) throw StructuralError("empty conjunction", "");
  auto n = make(Kind::kAnd);
  n->children = std::move(conjuncts);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr arg) {
  auto n = make(Kind::kNot);
  n->children.push_back(std::move(arg));
  return Expr(std::move(n));
}

Expr Expr::kappa(std::vector<Expr> vars, Expr body) {
  for (const auto &v : vars) require_query_var(v, "Kappa");
  auto n = make(Kind::kKappa);
  n->num_bound = vars.size();
  n->children = std::move(vars);
  n->children.push_back(std::move(body));
  return Expr(std::move(n));
}

Expr Expr::set_of(Expr var, Expr body) {
  require_query_var(var, "TheSetOf");
  auto n = make(Kind::kTheSetOf);
  n->num_bound = 1;
  n->children = {std::move(var), std::move(body)};
  return Expr(std::move(n));
}

Expr Expr::exists(Expr var, Expr body) {
  require_query_var(var, "thereExists");
  auto n = make(Kind::kExists);
  n->num_bound = 1;
  n->children = {std::move(var), std::move(body)};
  return Expr(std::move(n));
}

Kind Expr::kind() const { return node().kind; }
const std::string &Expr::name() const { return node().name; }
int Expr::index() const { return node().index; }
const Rational &Expr::value() const { return node().value; }

const Expr &Expr::head() const {
  if (kind() != Kind::kApp) throw Error("head() on non-application");
  return node().children.front();
}

const Expr &Expr::body() const {
  if (!is_binder()) throw Error("body() on non-binder");
  return node().children.back();
}

std::span<const Expr> Expr::args() const {
  const Node &n = node();
  switch (n.kind) {
    case Kind::kApp:
      return std::span<const Expr>(n.children).subspan(1);
    case Kind::kNat:
    case Kind::kAnd:
    case Kind::kNot:
      return n.children;
    default:
      return {};
  }
}

std::span<const Expr> Expr::bound() const {
  const Node &n = node();
  return std::span<const Expr>(n.children).first(n.num_bound);
}

bool Expr::is_sentence() const {
  Kind k = kind();
  return k == Kind::kApp || k == Kind::kAnd || k == Kind::kNot ||
         k == Kind::kExists;
}

bool Expr::is_term() const {
  Kind k = kind();
  return k == Kind::kConstant || k == Kind::kNumeral || k == Kind::kText ||
         k == Kind::kNat;
}

bool Expr::is_ground() const { return free_vars(*this).empty(); }

bool operator==(const Expr &a, const Expr &b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Expr &a, const Expr &b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const auto &x = *a.node_;
  const auto &y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name.compare(y.name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = x.index <=> y.index; c != 0) return c;
  if (x.kind == Kind::kNumeral && x.value != y.value) {
    return x.value < y.value ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  }
  if (auto c = x.num_bound <=> y.num_bound; c != 0) return c;
  size_t n = std::min(x.children.size(), y.children.size());
  for (size_t i = 0; i < n; ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return x.children.size() <=> y.children.size();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_to(const Expr &e, std::string &out);

void print_list(std::span<const Expr> items, std::string &out) {
  for (const auto &item : items) {
    out.push_back(' ');
    print_to(item, out);
  }
}

// Integers print plainly, terminating fractions as decimals ("2.5"), and
// anything else as "a/b".
std::string format_number(const Rational &v) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(v);
  cpp_int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  cpp_int rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  int places = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  bool negative = num < 0;
  cpp_int digits = (negative ? cpp_int(-num) : num) * (scale / den);
  std::string text = digits.str();
  if (text.size() <= static_cast<size_t>(places)) {
    text.insert(0, places + 1 - text.size(), '0');
  }
  text.insert(text.size() - places, ".");
  return negative ? "-" + text : text;
}

void print_to(const Expr &e, std::string &out) {
  switch (e.kind()) {
    case Kind::kConstant:
      out += e.name();
      break;
    case Kind::kNumeral:
      out += format_number(e.value());
      break;
    case Kind::kText:
      out += sexpr::quote(e.name());
      break;
    case Kind::kTypedVar:
      out += "$" + e.name() + "#" + std::to_string(e.index());
      break;
    case Kind::kQueryVar:
      out += "?" + e.name();
      break;
    case Kind::kNat:
      out += "(" + e.name();
      print_list(e.args(), out);
      out.push_back(')');
      break;
    case Kind::kApp:
      out.push_back('(');
      print_to(e.head(), out);
      print_list(e.args(), out);
      out.push_back(')');
      break;
    case Kind::kAnd:
      out += "(and";
      print_list(e.args(), out);
      out.push_back(')');
      break;
    case Kind::kNot:
      out += "(not";
      print_list(e.args(), out);
      out.push_back(')');
      break;
    case Kind::kKappa: {
      out += "(Kappa (";
      bool first = true;
      for (const auto &v : e.bound()) {
        if (!first) out.push_back(' ');
        first = false;
        print_to(v, out);
      }
      out += ") ";
      print_to(e.body(), out);
      out.push_back(')');
      break;
    }
    case Kind::kTheSetOf:
    case Kind::kExists:
      out += e.kind() == Kind::kTheSetOf ? "(TheSetOf " : "(thereExists ";
      print_to(e.bound().front(), out);
      out.push_back(' ');
      print_to(e.body(), out);
      out.push_back(')');
      break;
  }
}

}  // namespace

std::string Expr::str() const {
  if (is_null()) return "<null>";
  std::string out;
  print_to(*this, out);
  return out;
}

std::string print_expr(const Expr &e) { return e.str(); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void syntax(const sexpr::Datum &d, const std::string &message) {
  throw SyntaxError(message, d.line, d.column);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

// Decimal digits to an integer; a leading zero must not select octal.
boost::multiprecision::cpp_int decimal_int(std::string_view digits) {
  size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return boost::multiprecision::cpp_int{std::string(digits.substr(first))};
}

// Integers, fractions "a/b" and decimals "a.b", optionally signed.
bool parse_number(std::string_view s, Rational *out) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  using boost::multiprecision::cpp_int;
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    cpp_int d = decimal_int(den);
    if (d == 0) return false;
    value = Rational(decimal_int(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return false;
    cpp_int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(decimal_int(std::string(whole) + std::string(frac)), scale);
  } else {
    if (!all_digits(s)) return false;
    value = Rational(decimal_int(s));
  }
  *out = negative ? Rational(-value) : value;
  return true;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == '$' || c == '?' || c == '#') return false;
  }
  return true;
}

Expr atom(const sexpr::Datum &d) {
  std::string_view s = d.text;
  if (s.starts_with("#$")) {
    s.remove_prefix(2);
    if (!valid_name(s)) syntax(d, "malformed constant '" + d.text + "'");
    return Expr::constant(std::string(s));
  }
  if (s.starts_with('$')) {
    auto hash = s.rfind('#');
    if (hash == std::string_view::npos || hash < 2 ||
        !all_digits(s.substr(hash + 1)) ||
        !valid_name(s.substr(1, hash - 1))) {
      syntax(d, "malformed typed variable '" + d.text + "'");
    }
    return Expr::typed_var(std::string(s.substr(1, hash - 1)),
                           std::stoi(std::string(s.substr(hash + 1))));
  }
  if (s.starts_with('?')) {
    if (!valid_name(s.substr(1))) {
      syntax(d, "malformed query variable '" + d.text + "'");
    }
    return Expr::query_var(std::string(s.substr(1)));
  }
  static constexpr std::string_view kSigils = "#@%&!^~`";
  if (kSigils.find(s.front()) != std::string_view::npos) {
    syntax(d, "unknown sigil in '" + d.text + "'");
  }
  Rational value;
  if ((std::isdigit(static_cast<unsigned char>(s.front())) ||
       s.front() == '-' || s.front() == '+') &&
      parse_number(s, &value)) {
    return Expr::numeral(std::move(value));
  }
  return Expr::constant(std::string(s));
}

Expr query_var_of(const sexpr::Datum &d) {
  Expr v = from_datum(d);
  if (v.kind() != Kind::kQueryVar) syntax(d, "expected a query variable");
  return v;
}

}  // namespace

Expr from_datum(const sexpr::Datum &d) {
  if (d.is_string()) return Expr::text(d.text);
  if (d.is_atom()) return atom(d);
  if (d.items.empty()) syntax(d, "empty list");

  const sexpr::Datum &head = d.items.front();
  auto rest = std::span<const sexpr::Datum>(d.items).subspan(1);
  std::vector<Expr> args;
  auto convert_rest = [&] {
    args.reserve(rest.size());
    for (const auto &item : rest) args.push_back(from_datum(item));
  };

  if (head.is_atom()) {
    const std::string &h = head.text;
    if (h == "and") {
      if (rest.empty()) syntax(d, "and requires at least one argument");
      convert_rest();
      return Expr::conj(std::move(args));
    }
    if (h == "not") {
      if (rest.size() != 1) syntax(d, "not takes exactly one argument");
      return Expr::negate(from_datum(rest[0]));
    }
    if (h == "Kappa") {
      if (rest.size() != 2 || !rest[0].is_list()) {
        syntax(d, "Kappa expects a variable list and a body");
      }
      std::vector<Expr> vars;
      for (const auto &v : rest[0].items) vars.push_back(query_var_of(v));
      return Expr::kappa(std::move(vars), from_datum(rest[1]));
    }
    if (h == "TheSetOf" || h == "thereExists") {
      if (rest.size() != 2) syntax(d, h + " expects a variable and a body");
      Expr var = query_var_of(rest[0]);
      Expr body = from_datum(rest[1]);
      return h == "TheSetOf" ? Expr::set_of(std::move(var), std::move(body))
                             : Expr::exists(std::move(var), std::move(body));
    }
  }
  Expr functor = from_datum(head);
  if (functor.kind() == Kind::kNumeral || functor.kind() == Kind::kText) {
    syntax(head, "a numeral or string cannot head an expression");
  }
  convert_rest();
  if (functor.kind() == Kind::kConstant && functor.name().ends_with("Fn")) {
    return Expr::nat(functor.name(), std::move(args));
  }
  return Expr::app(std::move(functor), std::move(args));
}

Expr parse_expr(std::string_view text) {
  return from_datum(sexpr::read_one(text));
}

}  // namespace scg::logic
