#pragma once

// Presentation files:
//
//   ring  := "ring" FIELD "[" ident ("," ident)* "]"
//   FIELD := "Q" | "F_" int | "F_" int "^" int "minpoly" polyexpr
//   mode  := "local" | "graded"
//   ideal := "ideal:" polyexpr ("," polyexpr)* | "ideal: ;"
//   tuple := "tuple:" polyexpr ("," polyexpr)*        (optional)
//
// Statements are separated by ";" or newlines and appear in the order
// ring, mode, ideal, tuple. "#" starts a comment. Over F_{p^m} the symbol `a`
// denotes the extension generator.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/field.hpp"
#include "jetmetric/poly/poly.hpp"

namespace jetmetric::pres {

enum class Mode { local, graded };

inline std::string_view mode_name(Mode m) { return m == Mode::local ? "local" : "graded"; }

template <class F>
struct Presentation {
  F field;
  std::vector<std::string> vars;
  std::vector<poly::Poly<F>> gens;
  Mode mode = Mode::local;
  std::optional<std::vector<poly::Poly<F>>> tuple;

  std::size_t nvars() const { return vars.size(); }
  exact::FieldDesc field_desc() const { return field.desc(); }
  bool graded() const { return mode == Mode::graded; }
  bool all_homogeneous() const {
    for (const auto& g : gens)
      if (!g.is_homogeneous()) return false;
    return true;
  }

  bool operator==(const Presentation& o) const {
    return field_desc() == o.field_desc() && vars == o.vars && gens == o.gens && mode == o.mode &&
           tuple == o.tuple;
  }
};

using AnyPresentation = std::variant<Presentation<exact::Rationals>, Presentation<exact::GaloisField>>;

inline exact::FieldDesc field_desc(const AnyPresentation& p) {
  return std::visit([](const auto& x) { return x.field_desc(); }, p);
}

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Punct, Sep, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

[[noreturn]] inline void syntax_error(const Token& t, const std::string& what) {
  fail(ErrorKind::Syntax, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + what);
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto continues = [&]() {
    if (out.empty()) return true;
    const auto& last = out.back();
    if (last.kind == Token::Kind::Sep) return true;
    if (last.kind != Token::Kind::Punct) return false;
    return std::string_view(",+-*/^([:").find(last.text[0]) != std::string_view::npos;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (depth == 0 && !continues()) out.push_back({Token::Kind::Sep, "\\n", line, col});
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const int start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Int, std::string(text.substr(i, j - i)), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == ';') {
      if (!out.empty() && out.back().kind != Token::Kind::Sep) out.push_back({Token::Kind::Sep, ";", line, col});
      else if (!out.empty() && out.back().kind == Token::Kind::Sep) out.back().text = ";";
      else out.push_back({Token::Kind::Sep, ";", line, col});
      ++i;
      ++col;
      continue;
    }
    if (std::string_view("[],:+-*/^()").find(c) != std::string_view::npos) {
      if (c == '(' || c == '[') ++depth;
      if ((c == ')' || c == ']') && depth > 0) --depth;
      out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
      ++i;
      ++col;
      continue;
    }
    fail(ErrorKind::Syntax, std::to_string(line) + ":" + std::to_string(col) + ": unexpected character '" +
                                std::string(1, c) + "'");
  }
  out.push_back({Token::Kind::End, "<end>", line, col});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(char c) const { return peek().kind == Token::Kind::Punct && peek().text[0] == c; }
  bool is_ident(std::string_view s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }
  void expect_punct(char c) {
    if (!is_punct(c)) syntax_error(peek(), std::string("expected '") + c + "', found '" + peek().text + "'");
    next();
  }
  void skip_seps() {
    while (peek().kind == Token::Kind::Sep) next();
  }
  void expect_sep_or_end() {
    if (peek().kind == Token::Kind::End) return;
    if (peek().kind != Token::Kind::Sep) syntax_error(peek(), "expected ';' or newline, found '" + peek().text + "'");
    skip_seps();
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class F>
class ExprParser {
 public:
  using P = poly::Poly<F>;

  ExprParser(Cursor& cur, const F& field, const std::vector<std::string>& vars, bool has_generator)
      : cur_(cur), field_(field), vars_(vars), has_generator_(has_generator) {}

  P parse() { return sum(); }

 private:
  P sum() {
    P acc = product();
    while (cur_.is_punct('+') || cur_.is_punct('-')) {
      const bool minus = cur_.next().text[0] == '-';
      P rhs = product();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }
  P product() {
    P acc = unary();
    while (cur_.is_punct('*') || cur_.is_punct('/')) {
      const Token op = cur_.next();
      P rhs = unary();
      if (op.text[0] == '*') {
        acc = acc * rhs;
        continue;
      }
      if (rhs.is_zero()) syntax_error(op, "division by zero");
      if (rhs.degree() != 0 || rhs.size() != 1) syntax_error(op, "division by a non-constant expression");
      acc = acc.scaled(field_.inv(rhs.constant_term()));
    }
    return acc;
  }
  P unary() {
    if (cur_.is_punct('-')) {
      cur_.next();
      return -unary();
    }
    if (cur_.is_punct('+')) {
      cur_.next();
      return unary();
    }
    return power();
  }
  P power() {
    P base = atom();
    if (cur_.is_punct('^')) {
      cur_.next();
      const Token t = cur_.peek();
      if (t.kind != Token::Kind::Int && !cur_.is_punct('('))
        syntax_error(t, "exponent must be a non-negative integer");
      const long e = int_atom();
      if (e < 0) syntax_error(t, "exponent must be a non-negative integer");
      if (e > 10000) syntax_error(t, "exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  // Integer arithmetic inside exponents, so that template bodies can write
  // x^(11 - w).
  long int_sum() {
    long acc = int_product();
    while (cur_.is_punct('+') || cur_.is_punct('-')) {
      const bool minus = cur_.next().text[0] == '-';
      const long rhs = int_product();
      acc = minus ? acc - rhs : acc + rhs;
      check_int_range(acc);
    }
    return acc;
  }
  long int_product() {
    long acc = int_atom();
    while (cur_.is_punct('*')) {
      cur_.next();
      acc *= int_atom();
      check_int_range(acc);
    }
    return acc;
  }
  long int_atom() {
    const Token t = cur_.next();
    if (t.kind == Token::Kind::Int) {
      if (t.text.size() > 6) syntax_error(t, "exponent too large");
      return std::stol(t.text);
    }
    if (t.kind == Token::Kind::Punct && t.text[0] == '-') return -int_atom();
    if (t.kind == Token::Kind::Punct && t.text[0] == '(') {
      const long v = int_sum();
      cur_.expect_punct(')');
      return v;
    }
    syntax_error(t, "expected an integer in exponent");
  }
  void check_int_range(long v) {
    if (v > 1000000 || v < -1000000) syntax_error(cur_.peek(), "exponent too large");
  }
  P atom() {
    const Token t = cur_.next();
    const std::size_t n = vars_.size();
    if (t.kind == Token::Kind::Int) return P::constant(field_, n, field_.from_mpz(mpz_class(t.text)));
    if (t.kind == Token::Kind::Ident) {
      for (std::size_t i = 0; i < n; ++i)
        if (vars_[i] == t.text) return P::variable(field_, n, i);
      if (t.text == "a" && has_generator_) {
        if constexpr (std::is_same_v<F, exact::GaloisField>) return P::constant(field_, n, field_.generator());
      }
      syntax_error(t, "unknown symbol '" + t.text + "'");
    }
    if (t.kind == Token::Kind::Punct && t.text[0] == '(') {
      P inner = sum();
      cur_.expect_punct(')');
      return inner;
    }
    syntax_error(t, "expected a polynomial expression, found '" + t.text + "'");
  }

  Cursor& cur_;
  const F& field_;
  const std::vector<std::string>& vars_;
  bool has_generator_;
};

template <class F>
std::vector<poly::Poly<F>> parse_list(Cursor& cur, const F& field, const std::vector<std::string>& vars,
                                      bool has_generator) {
  std::vector<poly::Poly<F>> out;
  if (cur.peek().kind == Token::Kind::Sep || cur.peek().kind == Token::Kind::End) return out;
  ExprParser<F> ep(cur, field, vars, has_generator);
  out.push_back(ep.parse());
  while (cur.is_punct(',')) {
    cur.next();
    out.push_back(ep.parse());
  }
  return out;
}

template <class F>
Presentation<F> parse_body(Cursor& cur, F field, std::vector<std::string> vars) {
  const bool has_generator = field.desc().m > 1;
  Presentation<F> p{std::move(field), std::move(vars), {}, Mode::local, std::nullopt};
  cur.expect_sep_or_end();
  const Token mode = cur.next();
  if (mode.kind != Token::Kind::Ident || (mode.text != "local" && mode.text != "graded"))
    syntax_error(mode, "expected 'local' or 'graded'");
  p.mode = mode.text == "local" ? Mode::local : Mode::graded;
  cur.expect_sep_or_end();
  if (!cur.is_ident("ideal")) syntax_error(cur.peek(), "expected 'ideal:'");
  cur.next();
  cur.expect_punct(':');
  p.gens = parse_list(cur, p.field, p.vars, has_generator);
  cur.expect_sep_or_end();
  if (cur.is_ident("tuple")) {
    const Token t = cur.next();
    cur.expect_punct(':');
    auto tuple = parse_list(cur, p.field, p.vars, has_generator);
    if (tuple.empty()) syntax_error(t, "tuple must contain at least one element");
    p.tuple = std::move(tuple);
    cur.expect_sep_or_end();
  }
  if (cur.peek().kind != Token::Kind::End) syntax_error(cur.peek(), "unexpected '" + cur.peek().text + "'");

  for (const auto& g : p.gens)
    if (!F::is_zero(g.constant_term()))
      fail(ErrorKind::ConstantTerm, "generator " + g.to_string(p.vars) + " has a nonzero constant term");
  if (p.tuple)
    for (const auto& g : *p.tuple)
      if (!F::is_zero(g.constant_term()))
        fail(ErrorKind::ConstantTerm, "tuple entry " + g.to_string(p.vars) + " has a nonzero constant term");
  if (p.mode == Mode::graded)
    for (const auto& g : p.gens)
      if (!g.is_homogeneous())
        fail(ErrorKind::Grading, "graded presentation with non-homogeneous generator " + g.to_string(p.vars));
  return p;
}

}  // namespace detail

inline AnyPresentation parse_presentation(std::string_view text) {
  using detail::Token;
  detail::Cursor cur(detail::tokenize(text));
  cur.skip_seps();
  if (!cur.is_ident("ring")) detail::syntax_error(cur.peek(), "expected 'ring'");
  cur.next();
  const Token ftok = cur.next();
  if (ftok.kind != Token::Kind::Ident) detail::syntax_error(ftok, "expected a field (Q or F_p)");
  std::optional<exact::FieldDesc> desc;
  if (ftok.text == "Q") {
    desc = exact::FieldDesc::rationals();
  } else if (ftok.text.rfind("F_", 0) == 0 && ftok.text.size() > 2 &&
             ftok.text.find_first_not_of("0123456789", 2) == std::string::npos) {
    if (ftok.text.size() > 12) fail(ErrorKind::Field, "characteristic too large");
    const auto p64 = std::stoull(ftok.text.substr(2));
    if (!exact::is_prime(p64) || p64 >= (1ull << 31))
      fail(ErrorKind::Field, std::to_string(p64) + " is not a supported prime");
    const auto p = static_cast<std::uint32_t>(p64);
    if (cur.is_punct('^')) {
      cur.next();
      const Token mt = cur.next();
      if (mt.kind != Token::Kind::Int) detail::syntax_error(mt, "expected extension degree");
      const auto m = std::stoul(mt.text);
      if (m < 1 || m > 30) fail(ErrorKind::Field, "unsupported extension degree " + mt.text);
      if (m == 1) {
        desc = exact::FieldDesc::prime_field(p);
        if (cur.is_ident("minpoly")) detail::syntax_error(cur.peek(), "minpoly given for a prime field");
      } else {
        if (!cur.is_ident("minpoly")) detail::syntax_error(cur.peek(), "expected 'minpoly'");
        cur.next();
        const auto prime = exact::GaloisField::prime(p);
        const std::vector<std::string> avar{"a"};
        detail::ExprParser<exact::GaloisField> ep(cur, prime, avar, false);
        const auto mp = ep.parse();
        if (mp.is_zero() || mp.degree() != m)
          fail(ErrorKind::Field, "minimal polynomial must have degree " + std::to_string(m));
        std::vector<std::uint32_t> coeffs(m + 1, 0);
        for (const auto& [mono, c] : mp.terms()) coeffs[mono.exps[0]] = c;
        if (coeffs[m] != 1) fail(ErrorKind::Field, "minimal polynomial must be monic");
        desc = exact::FieldDesc::extension(p, coeffs);
      }
    } else {
      desc = exact::FieldDesc::prime_field(p);
    }
  } else {
    detail::syntax_error(ftok, "unknown field '" + ftok.text + "'");
  }

  cur.expect_punct('[');
  std::vector<std::string> vars;
  while (true) {
    const Token v = cur.next();
    if (v.kind != Token::Kind::Ident) detail::syntax_error(v, "expected a variable name");
    if (v.text == "a" && desc->m > 1) detail::syntax_error(v, "'a' is reserved for the extension generator");
    for (const auto& prev : vars)
      if (prev == v.text) detail::syntax_error(v, "duplicate variable '" + v.text + "'");
    vars.push_back(v.text);
    if (cur.is_punct(',')) {
      cur.next();
      continue;
    }
    cur.expect_punct(']');
    break;
  }

  if (desc->kind == exact::FieldDesc::Kind::rationals)
    return detail::parse_body(cur, exact::Rationals{}, std::move(vars));
  return detail::parse_body(cur, exact::GaloisField(*desc), std::move(vars));
}

template <class F>
std::string print_presentation(const Presentation<F>& p) {
  std::string out = "ring " + p.field_desc().name() + "[";
  for (std::size_t i = 0; i < p.vars.size(); ++i) out += (i ? "," : "") + p.vars[i];
  out += "];\n";
  out += std::string(mode_name(p.mode)) + ";\n";
  out += "ideal:";
  if (p.gens.empty()) out += " ";
  for (std::size_t i = 0; i < p.gens.size(); ++i) out += (i ? ", " : " ") + p.gens[i].to_string(p.vars);
  out += ";\n";
  if (p.tuple) {
    out += "tuple:";
    for (std::size_t i = 0; i < p.tuple->size(); ++i) out += (i ? ", " : " ") + (*p.tuple)[i].to_string(p.vars);
    out += ";\n";
  }
  return out;
}

inline std::string print_presentation(const AnyPresentation& p) {
  return std::visit([](const auto& x) { return print_presentation(x); }, p);
}

}  // namespace jetmetric::pres
