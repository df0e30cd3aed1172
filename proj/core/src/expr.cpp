#include "polytree/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "polytree/errors.hpp"

namespace polytree {

struct Expr::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow } kind;
  Complex value{};
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view s, std::size_t base) : s_(s), base_(base) {}

  NodePtr parse_all() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Kind::Add, lhs, term());
      else if (eat('-')) lhs = make(Kind::Sub, lhs, term());
      else return lhs;
    }
  }
  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Kind::Mul, lhs, unary());
      else if (eat('/')) lhs = make(Kind::Div, lhs, unary());
      else return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Kind::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    auto base = primary();
    if (eat('^')) return make(Kind::Pow, base, unary());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto n = std::make_shared<Expr::Node>();
      if (name == "i") {
        n->kind = Kind::Number;
        n->value = Complex{0.0, 1.0};
      } else {
        n->kind = Kind::Var;
        n->name = name;
      }
      return n;
    }
    fail("unexpected character");
  }
  NodePtr number() {
    // Mantissa and optional exponent; a sign right after e/E belongs to it.
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const char* first = s_.data() + start;
    const char* last = s_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Number;
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        !(pos_ + 1 < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      n->value = Complex{0.0, v};
    } else {
      n->value = Complex{v, 0.0};
    }
    return n;
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Complex integer_power(Complex base, long long n) {
  if (n < 0) return 1.0 / integer_power(base, -n);
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

Complex eval_node(const Expr::Node& n, const Expr::Bindings& vars) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Var: {
      auto it = vars.find(n.name);
      if (it == vars.end()) throw InvalidArgument("degeneration", "unbound variable '" + n.name + "'");
      return it->second;
    }
    case Kind::Neg: return -eval_node(*n.lhs, vars);
    case Kind::Add: return eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars);
    case Kind::Sub: return eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars);
    case Kind::Mul: return eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars);
    case Kind::Div: return eval_node(*n.lhs, vars) / eval_node(*n.rhs, vars);
    case Kind::Pow: {
      const Complex b = eval_node(*n.lhs, vars);
      const Complex e = eval_node(*n.rhs, vars);
      if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) < 1e9)
        return integer_power(b, static_cast<long long>(e.real()));
      if (b.imag() == 0.0 && b.real() > 0.0 && e.imag() == 0.0) return std::pow(b.real(), e.real());
      return std::pow(b, e);
    }
  }
  return {};
}

void collect(const Expr::Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::Var) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Expr Expr::parse(std::string_view text, std::size_t base_offset) {
  Expr e;
  e.root_ = Parser(text, base_offset).parse_all();
  e.text_ = std::string(text);
  return e;
}

Complex Expr::eval(const Bindings& vars) const { return eval_node(*root_, vars); }

std::vector<std::string> Expr::variables() const {
  std::set<std::string> names;
  collect(*root_, names);
  return {names.begin(), names.end()};
}

}  // namespace polytree
