#include "nilhom/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>

#include "nilhom/errors.hpp"

namespace nilhom {

struct Expression::Node {
  enum class Kind { constant, variable, unary_minus, add, sub, mul, div, pow, cmp, sin, cos, piecewise };
  Kind kind;
  double value = 0.0;      // constant
  int var = 0;             // variable index
  int pow_exponent = 1;    // pow
  char cmp_op = '<';       // '<' '≤'->'l' '>' '≥'->'g'
  std::vector<std::shared_ptr<const Node>> args;

  double eval(const double* x) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::variable: return x[var];
      case Kind::unary_minus: return -args[0]->eval(x);
      case Kind::add: return args[0]->eval(x) + args[1]->eval(x);
      case Kind::sub: return args[0]->eval(x) - args[1]->eval(x);
      case Kind::mul: return args[0]->eval(x) * args[1]->eval(x);
      case Kind::div: return args[0]->eval(x) / args[1]->eval(x);
      case Kind::pow: {
        double b = args[0]->eval(x);
        double r = 1.0;
        for (int k = 0; k < pow_exponent; ++k) r *= b;
        return r;
      }
      case Kind::cmp: {
        double a = args[0]->eval(x), b = args[1]->eval(x);
        bool ok = cmp_op == '<' ? a < b : cmp_op == 'l' ? a <= b : cmp_op == '>' ? a > b : a >= b;
        return ok ? 1.0 : 0.0;
      }
      case Kind::sin: return std::sin(args[0]->eval(x));
      case Kind::cos: return std::cos(args[0]->eval(x));
      case Kind::piecewise:
        return args[0]->eval(x) != 0.0 ? args[1]->eval(x) : args[2]->eval(x);
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

  NodePtr run() {
    auto node = comparison();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("expression parse error at position " + std::to_string(pos_) + ": " + why +
                      " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr comparison() {
    auto lhs = sum();
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '<' || text_[pos_] == '>')) {
      char op = text_[pos_++];
      if (pos_ < text_.size() && text_[pos_] == '=') {
        ++pos_;
        op = (op == '<') ? 'l' : 'g';
      }
      auto rhs = sum();
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::cmp;
      n->cmp_op = op;
      n->args = {lhs, rhs};
      return n;
    }
    return lhs;
  }

  NodePtr sum() {
    auto node = term();
    while (true) {
      if (eat('+')) {
        node = make(Node::Kind::add, {node, term()});
      } else if (eat('-')) {
        node = make(Node::Kind::sub, {node, term()});
      } else {
        return node;
      }
    }
  }

  NodePtr term() {
    auto node = unary();
    while (true) {
      if (eat('*')) {
        node = make(Node::Kind::mul, {node, unary()});
      } else if (eat('/')) {
        node = make(Node::Kind::div, {node, unary()});
      } else {
        return node;
      }
    }
  }

  NodePtr unary() {
    // '^' binds tighter than the sign, so -x^2 = -(x^2)
    if (eat('-')) return make(Node::Kind::unary_minus, {unary()});
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("integer exponent expected");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::pow;
      n->pow_exponent = std::stoi(text_.substr(start, pos_ - start));
      n->args = {base};
      return n;
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch))) return identifier();
    if (eat('(')) {
      auto node = comparison();
      if (!eat(')')) fail("')' expected");
      return node;
    }
    fail("unexpected character");
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::constant;
    try {
      n->value = std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("bad number literal");
    }
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])))) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "pi") {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::constant;
      n->value = M_PI;
      return n;
    }
    int var = -1;
    if (name == "x" || name == "x1") var = 0;
    if (name == "y" || name == "x2") var = 1;
    if (name == "z" || name == "x3") var = 2;
    if (var >= 0) {
      if (var >= dim_) fail("variable " + name + " exceeds dimension");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::variable;
      n->var = var;
      return n;
    }
    if (name == "sin" || name == "cos" || name == "piecewise") {
      if (!eat('(')) fail("'(' expected after " + name);
      std::vector<NodePtr> args{comparison()};
      while (eat(',')) args.push_back(comparison());
      if (!eat(')')) fail("')' expected");
      if (name == "piecewise") {
        if (args.size() != 3) fail("piecewise takes (condition, a, b)");
        return make(Node::Kind::piecewise, std::move(args));
      }
      if (args.size() != 1) fail(name + " takes one argument");
      return make(name == "sin" ? Node::Kind::sin : Node::Kind::cos, std::move(args));
    }
    fail("unknown identifier " + name);
  }

  const std::string& text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, int dim) {
  if (dim < 1 || dim > 3) throw ConfigError("expression dimension must be 1..3");
  Expression e;
  e.root_ = Parser(text, dim).run();
  e.dim_ = dim;
  e.text_ = text;
  return e;
}

double Expression::operator()(const double* x) const { return root_->eval(x); }

}  // namespace nilhom
