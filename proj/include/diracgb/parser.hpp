#ifndef DIRACGB_PARSER_HPP
#define DIRACGB_PARSER_HPP

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasespace.hpp"

namespace diracgb {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct ProblemOptions {
  std::optional<BaseOrder> order;
  std::optional<bool> radical_check;
  std::optional<std::size_t> max_iterations;
};

struct ProblemFile {
  std::vector<std::string> coords;
  std::map<std::string, std::optional<Rational>> params;
  ProblemOptions options;
  std::string lagrangian_text;
};

struct Problem {
  ProblemFile file;
  LagrangianSystem system;
};

namespace detail {

enum class Tok { ident, number, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column, offset;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::symbol, "", line, col, i};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Tok::number;
    } else if (std::string_view("+-*/^()=:;,").find(c) != std::string_view::npos) {
      j = i + 1;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(src.substr(i, j - i));
    out.push_back(std::move(t));
    advance(j - i);
  }
  out.push_back(Token{Tok::end, "", line, col, src.size()});
  return out;
}

inline Rational number_value(const Token& t) {
  auto dot = t.text.find('.');
  if (dot == std::string::npos) return parse_rational(t.text);
  std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
  std::string den = "1" + std::string(t.text.size() - dot - 1, '0');
  return parse_rational(digits + "/" + den);
}

// Resolves an identifier to a polynomial or reports why it cannot.
struct Scope {
  TablePtr table;
  const std::map<std::string, std::optional<Rational>>* params = nullptr;
  // Variables of these kinds may appear; empty means all.
  std::set<VarKind> allowed;
};

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos, std::size_t end, const Scope& scope)
      : toks_(toks), pos_(pos), end_(end), scope_(scope) {}

  Polynomial parse_all() {
    if (at_end()) fail("empty expression");
    Polynomial p = expr();
    if (!at_end()) fail("unexpected '" + cur().text + "'");
    return p;
  }

 private:
  const Token& cur() const { return toks_[pos_ < end_ ? pos_ : end_]; }
  bool at_end() const { return pos_ >= end_; }
  bool is(const char* sym) const { return !at_end() && cur().kind == Tok::symbol && cur().text == sym; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur().line, cur().column); }

  Polynomial expr() {
    Polynomial acc = term();
    while (is("+") || is("-")) {
      bool minus = cur().text == "-";
      ++pos_;
      Polynomial rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (is("*") || is("/")) {
      bool div = cur().text == "/";
      const Token at = cur();
      ++pos_;
      Polynomial rhs = unary();
      if (!div) {
        acc = acc * rhs;
        continue;
      }
      if (!rhs.is_constant())
        throw ParseError("non-polynomial division: divisor must be a constant", at.line, at.column);
      if (rhs.is_zero()) throw ParseError("division by zero", at.line, at.column);
      acc = (1 / rhs.constant_term()) * acc;
    }
    return acc;
  }

  Polynomial unary() {
    if (is("-")) {
      ++pos_;
      return -unary();
    }
    if (is("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    while (is("^")) {
      const Token at = cur();
      ++pos_;
      base = base.pow(exponent(at));
    }
    return base;
  }

  unsigned exponent(const Token& at) {
    if (is("-")) throw ParseError("negative exponent", at.line, at.column);
    Rational e;
    if (!at_end() && cur().kind == Tok::number) {
      e = number_value(cur());
      ++pos_;
    } else if (is("(")) {
      ++pos_;
      Polynomial inner = expr();
      if (!is(")")) fail("expected ')'");
      ++pos_;
      if (!inner.is_constant()) throw ParseError("exponent must be a constant integer", at.line, at.column);
      e = inner.constant_term();
    } else {
      fail("expected an exponent");
    }
    if (e < 0) throw ParseError("negative exponent", at.line, at.column);
    if (e.get_den() != 1) throw ParseError("fractional exponent", at.line, at.column);
    if (e > 1000) throw ParseError("exponent too large", at.line, at.column);
    return static_cast<unsigned>(e.get_num().get_ui());
  }

  Polynomial primary() {
    if (at_end()) fail("unexpected end of expression");
    const Token& t = cur();
    if (t.kind == Tok::number) {
      ++pos_;
      return Polynomial::constant(scope_.table, number_value(t));
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      return identifier(t);
    }
    if (is("(")) {
      ++pos_;
      Polynomial inner = expr();
      if (!is(")")) fail("expected ')'");
      ++pos_;
      return inner;
    }
    fail("unexpected '" + t.text + "'");
  }

  Polynomial identifier(const Token& t) {
    if (scope_.params) {
      auto it = scope_.params->find(t.text);
      if (it != scope_.params->end()) {
        if (!it->second) throw ParseError("unsubstituted parameter '" + t.text + "'", t.line, t.column);
        return Polynomial::constant(scope_.table, *it->second);
      }
    }
    if (auto idx = scope_.table->find(t.text)) {
      if (scope_.allowed.empty() || scope_.allowed.count((*scope_.table)[*idx].kind))
        return Polynomial::variable(scope_.table, *idx);
    }
    throw ParseError("undeclared identifier '" + t.text + "'", t.line, t.column);
  }

  const std::vector<Token>& toks_;
  std::size_t pos_, end_;
  const Scope& scope_;
};

}  // namespace detail

/// Parses a polynomial over an existing table; every table variable and the
/// given parameters may appear.
inline Polynomial parse_polynomial(std::string_view text, const TablePtr& table,
                                   const std::map<std::string, std::optional<Rational>>& params = {}) {
  auto toks = detail::tokenize(text);
  detail::Scope scope{table, &params, {}};
  return detail::ExprParser(toks, 0, toks.size() - 1, scope).parse_all();
}

/// Parses a problem file:
///
///   coords: q1 q2 q3 ;
///   params: m=1 g=1/2 ;
///   options: order=degrevlex radical_check=false max_iter=40 ;
///   L = 1/2*m*dq1^2 + q2 ;
///
/// Statements end with ';' (optional for the last one); '#' starts a
/// comment. `overrides` replaces declared parameter values.
inline Problem parse_problem(std::string_view text, const std::map<std::string, Rational>& overrides = {}) {
  using detail::Tok;
  auto toks = detail::tokenize(text);
  ProblemFile file;
  std::optional<std::pair<std::size_t, std::size_t>> expr_range;
  std::size_t pos = 0;

  auto fail = [&](const std::string& msg, std::size_t at) -> void {
    throw ParseError(msg, toks[at].line, toks[at].column);
  };
  auto is_sym = [&](std::size_t at, const char* s) { return toks[at].kind == Tok::symbol && toks[at].text == s; };
  auto stmt_end = [&](std::size_t at) { return toks[at].kind == Tok::end || is_sym(at, ";"); };

  while (toks[pos].kind != Tok::end) {
    if (is_sym(pos, ";")) {
      ++pos;
      continue;
    }
    if (toks[pos].kind != Tok::ident) fail("expected a statement", pos);
    const std::string head = toks[pos].text;
    const std::size_t head_pos = pos;
    ++pos;
    if (head == "L") {
      if (!is_sym(pos, "=")) fail("expected '=' after L", pos);
      if (expr_range) fail("Lagrangian given twice", head_pos);
      std::size_t start = ++pos;
      while (!stmt_end(pos)) ++pos;
      expr_range = {start, pos};
      file.lagrangian_text = std::string(text.substr(toks[start].offset, toks[pos].offset - toks[start].offset));
      while (!file.lagrangian_text.empty() && std::isspace(static_cast<unsigned char>(file.lagrangian_text.back())))
        file.lagrangian_text.pop_back();
      continue;
    }
    if (!is_sym(pos, ":")) fail("expected ':' after '" + head + "'", pos);
    ++pos;
    if (head == "coords") {
      while (!stmt_end(pos)) {
        if (is_sym(pos, ",")) {
          ++pos;
          continue;
        }
        if (toks[pos].kind != Tok::ident) fail("expected a coordinate name", pos);
        for (const auto& c : file.coords)
          if (c == toks[pos].text) fail("coordinate '" + c + "' declared twice", pos);
        file.coords.push_back(toks[pos].text);
        ++pos;
      }
    } else if (head == "params") {
      while (!stmt_end(pos)) {
        if (is_sym(pos, ",")) {
          ++pos;
          continue;
        }
        if (toks[pos].kind != Tok::ident) fail("expected a parameter name", pos);
        std::string name = toks[pos].text;
        if (file.params.count(name)) fail("parameter '" + name + "' declared twice", pos);
        ++pos;
        std::optional<Rational> value;
        if (is_sym(pos, "=")) {
          ++pos;
          bool negative = false;
          if (is_sym(pos, "-")) {
            negative = true;
            ++pos;
          }
          if (toks[pos].kind != Tok::number) fail("expected a rational value", pos);
          Rational v = detail::number_value(toks[pos]);
          ++pos;
          if (is_sym(pos, "/")) {
            ++pos;
            if (toks[pos].kind != Tok::number) fail("expected a denominator", pos);
            Rational d = detail::number_value(toks[pos]);
            if (d == 0) fail("zero denominator", pos);
            v /= d;
            ++pos;
          }
          value = negative ? Rational(-v) : v;
        }
        file.params.emplace(std::move(name), value);
      }
    } else if (head == "options") {
      while (!stmt_end(pos)) {
        if (is_sym(pos, ",")) {
          ++pos;
          continue;
        }
        if (toks[pos].kind != Tok::ident) fail("expected an option name", pos);
        std::string key = toks[pos].text;
        std::size_t key_pos = pos++;
        if (!is_sym(pos, "=")) fail("expected '=' after option '" + key + "'", pos);
        ++pos;
        if (toks[pos].kind != Tok::ident && toks[pos].kind != Tok::number) fail("expected an option value", pos);
        const std::string value = toks[pos].text;
        if (key == "order") {
          if (value != "degrevlex" && value != "lex") fail("order must be degrevlex or lex", pos);
          file.options.order = parse_base_order(value);
        } else if (key == "radical_check") {
          if (value != "true" && value != "false") fail("radical_check must be true or false", pos);
          file.options.radical_check = value == "true";
        } else if (key == "max_iter") {
          if (toks[pos].kind != Tok::number || value.find('.') != std::string::npos || value == "0")
            fail("max_iter must be a positive integer", pos);
          file.options.max_iterations = std::stoul(value);
        } else {
          fail("unknown option '" + key + "'", key_pos);
        }
        ++pos;
      }
    } else {
      fail("unknown statement '" + head + "'", head_pos);
    }
  }

  if (file.coords.empty()) fail("no coordinates declared", pos);
  if (!expr_range) fail("no Lagrangian given (expected 'L = ...')", pos);

  for (const auto& [name, value] : overrides) {
    auto it = file.params.find(name);
    if (it == file.params.end())
      throw ParseError("parameter '" + name + "' is not declared in the problem", 1, 1);
    it->second = value;
  }

  TablePtr table;
  try {
    table = VariableTable::phase_space(file.coords);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("coordinate names clash: ") + e.what(), 1, 1);
  }
  for (const auto& [name, value] : file.params)
    if (table->find(name)) throw ParseError("parameter '" + name + "' clashes with a variable name", 1, 1);

  detail::Scope scope{table, &file.params, {VarKind::coordinate, VarKind::velocity}};
  Polynomial L = detail::ExprParser(toks, expr_range->first, expr_range->second, scope).parse_all();
  return Problem{std::move(file), LagrangianSystem(table, std::move(L))};
}

}  // namespace diracgb

#endif  // DIRACGB_PARSER_HPP
