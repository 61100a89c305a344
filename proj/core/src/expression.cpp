#include "confgeo/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace confgeo {
namespace {

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr make_node(ExprNode::Kind kind, NodePtr lhs = nullptr,
                  NodePtr rhs = nullptr) {
  auto n = std::make_unique<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

// Recursive-descent parser:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+') factor | power
//   power  := atom ('^' factor)?          (right-associative)
//   atom   := number | 'u' | 'v' | name '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw geometry_error(errc::parse_error,
                         "expression error at offset " + std::to_string(pos_) +
                             ": " + msg + " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+'))
        lhs = make_node(ExprNode::Kind::add, std::move(lhs), parse_term());
      else if (eat('-'))
        lhs = make_node(ExprNode::Kind::sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (eat('*'))
        lhs = make_node(ExprNode::Kind::mul, std::move(lhs), parse_factor());
      else if (eat('/'))
        lhs = make_node(ExprNode::Kind::div, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  NodePtr parse_factor() {
    if (eat('-')) return make_node(ExprNode::Kind::neg, parse_factor());
    if (eat('+')) return parse_factor();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (!eat('^')) return base;
    NodePtr expo = parse_factor();  // right-assoc; allows -2 and nested ^
    auto n = make_node(ExprNode::Kind::pow, std::move(base), std::move(expo));
    // Literal integral exponents switch to repeated multiplication.
    const ExprNode* e = n->rhs.get();
    bool negated = false;
    if (e->kind == ExprNode::Kind::neg) {
      negated = true;
      e = e->lhs.get();
    }
    if (e->kind == ExprNode::Kind::constant) {
      double val = negated ? -e->value : e->value;
      if (val == std::floor(val) && std::abs(val) <= 64.0) {
        n->int_pow = true;
        n->exponent = static_cast<long>(val);
        n->rhs.reset();
      }
    }
    return n;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double val = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = make_node(ExprNode::Kind::constant);
    n->value = val;
    return n;
  }

  NodePtr parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "u") return make_node(ExprNode::Kind::var_u);
    if (name == "v") return make_node(ExprNode::Kind::var_v);
    ExprNode::Kind kind;
    if (name == "sin")
      kind = ExprNode::Kind::call_sin;
    else if (name == "cos")
      kind = ExprNode::Kind::call_cos;
    else if (name == "exp")
      kind = ExprNode::Kind::call_exp;
    else if (name == "sqrt")
      kind = ExprNode::Kind::call_sqrt;
    else
      fail("unknown identifier \"" + name + "\"");
    if (!eat('(')) fail("expected '(' after \"" + name + "\"");
    NodePtr arg = parse_expr();
    if (!eat(')')) fail("expected ')'");
    return make_node(kind, std::move(arg));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression out;
  out.root_ = std::shared_ptr<const ExprNode>(Parser(text).run().release());
  out.text_ = text;
  return out;
}

}  // namespace confgeo
