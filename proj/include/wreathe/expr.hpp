#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>

#include "wreathe/rational.hpp"

namespace wreathe {

// Arithmetic expression AST over +, -, *, /, ^, parentheses, integer and
// a/b rational literals, and named variables. Used for action polynomials
// ("1 - X", "1/X"), representation entries ("(1-w)/2"), and ring-element
// fixtures.
struct Expr {
  enum class Kind { number, variable, add, sub, mul, div, pow, neg };
  Kind kind;
  Rational value;          // number
  std::string name;        // variable
  long exponent = 0;       // pow
  std::unique_ptr<Expr> lhs, rhs;
};

namespace detail {

struct ExprParser {
  const std::string& s;
  std::size_t i = 0;

  explicit ExprParser(const std::string& src) : s(src) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }

  std::unique_ptr<Expr> parse() {
    auto e = sum();
    skip();
    if (i != s.size()) throw error("trailing characters in expression: " + s);
    return e;
  }

  std::unique_ptr<Expr> sum() {
    auto e = term();
    while (true) {
      if (eat('+')) {
        auto n = std::make_unique<Expr>();
        n->kind = Expr::Kind::add;
        n->lhs = std::move(e);
        n->rhs = term();
        e = std::move(n);
      } else if (eat('-')) {
        auto n = std::make_unique<Expr>();
        n->kind = Expr::Kind::sub;
        n->lhs = std::move(e);
        n->rhs = term();
        e = std::move(n);
      } else {
        return e;
      }
    }
  }

  std::unique_ptr<Expr> term() {
    auto e = factor();
    while (true) {
      if (eat('*')) {
        auto n = std::make_unique<Expr>();
        n->kind = Expr::Kind::mul;
        n->lhs = std::move(e);
        n->rhs = factor();
        e = std::move(n);
      } else if (eat('/')) {
        auto n = std::make_unique<Expr>();
        n->kind = Expr::Kind::div;
        n->lhs = std::move(e);
        n->rhs = factor();
        e = std::move(n);
      } else {
        // implicit multiplication like "2X" is not supported; keep explicit
        return e;
      }
    }
  }

  std::unique_ptr<Expr> factor() {
    skip();
    if (eat('-')) {
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::neg;
      n->lhs = factor();
      return n;
    }
    auto e = atom();
    if (eat('^')) {
      skip();
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw error("bad exponent in expression: " + s);
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::pow;
      n->exponent = std::stol(s.substr(i, j - i));
      n->lhs = std::move(e);
      i = j;
      return n;
    }
    return e;
  }

  std::unique_ptr<Expr> atom() {
    skip();
    if (i >= s.size()) throw error("unexpected end of expression: " + s);
    if (s[i] == '(') {
      ++i;
      auto e = sum();
      if (!eat(')')) throw error("missing ')' in expression: " + s);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::number;
      n->value = Rational(Int(s.substr(i, j - i)));
      i = j;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::variable;
      n->name = s.substr(i, j - i);
      i = j;
      return n;
    }
    throw error("bad character in expression: " + s);
  }
};

}  // namespace detail

inline std::unique_ptr<Expr> parse_expr(const std::string& s) {
  detail::ExprParser p(s);
  return p.parse();
}

// Evaluate over any ring context with from_rational / add / sub / mul / inv.
template <class R>
typename R::Elem eval_expr(const R& k, const Expr& e,
                           const std::map<std::string, typename R::Elem>& env) {
  switch (e.kind) {
    case Expr::Kind::number:
      return k.from_rational(e.value);
    case Expr::Kind::variable: {
      auto it = env.find(e.name);
      if (it == env.end()) throw error("unknown symbol: " + e.name);
      return it->second;
    }
    case Expr::Kind::add:
      return k.add(eval_expr(k, *e.lhs, env), eval_expr(k, *e.rhs, env));
    case Expr::Kind::sub:
      return k.sub(eval_expr(k, *e.lhs, env), eval_expr(k, *e.rhs, env));
    case Expr::Kind::mul:
      return k.mul(eval_expr(k, *e.lhs, env), eval_expr(k, *e.rhs, env));
    case Expr::Kind::div:
      return k.mul(eval_expr(k, *e.lhs, env), k.inv(eval_expr(k, *e.rhs, env)));
    case Expr::Kind::neg:
      return k.sub(k.from_rational(Rational(0)), eval_expr(k, *e.lhs, env));
    case Expr::Kind::pow: {
      auto b = eval_expr(k, *e.lhs, env);
      auto r = k.from_rational(Rational(1));
      for (long t = 0; t < e.exponent; ++t) r = k.mul(r, b);
      return r;
    }
  }
  throw error("bad expression");
}

template <class R>
typename R::Elem eval_expr_str(const R& k, const std::string& s,
                               const std::map<std::string, typename R::Elem>& env) {
  auto ast = parse_expr(s);
  return eval_expr(k, *ast, env);
}

}  // namespace wreathe
