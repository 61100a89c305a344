#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "confgeo/types.hpp"

namespace confgeo {

// AST node for height-field expressions over the variables u and v.
struct ExprNode {
  enum class Kind {
    constant,
    var_u,
    var_v,
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    call_sin,
    call_cos,
    call_exp,
    call_sqrt,
  };
  Kind kind = Kind::constant;
  double value = 0.0;  // constant payload
  // pow with an integral literal exponent is evaluated by repeated
  // multiplication so negative bases stay well-defined.
  bool int_pow = false;
  long exponent = 0;
  std::unique_ptr<ExprNode> lhs;
  std::unique_ptr<ExprNode> rhs;
};

// Parsed arithmetic expression in u and v. Supports + - * / ^ with the
// usual precedence (^ binds tightest and associates right), unary minus,
// parentheses, numeric literals, and sin, cos, exp, sqrt.
class Expression {
 public:
  Expression() = default;

  // Throws geometry_error(errc::parse_error) with a position annotation.
  static Expression parse(const std::string& text);

  bool valid() const { return root_ != nullptr; }
  const std::string& text() const { return text_; }

  template <class T>
  T operator()(const T& u, const T& v) const {
    return eval(*root_, u, v);
  }

 private:
  template <class T>
  static T eval(const ExprNode& n, const T& u, const T& v) {
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (n.kind) {
      case ExprNode::Kind::constant:
        return T(n.value);
      case ExprNode::Kind::var_u:
        return u;
      case ExprNode::Kind::var_v:
        return v;
      case ExprNode::Kind::add:
        return eval(*n.lhs, u, v) + eval(*n.rhs, u, v);
      case ExprNode::Kind::sub:
        return eval(*n.lhs, u, v) - eval(*n.rhs, u, v);
      case ExprNode::Kind::mul:
        return eval(*n.lhs, u, v) * eval(*n.rhs, u, v);
      case ExprNode::Kind::div:
        return eval(*n.lhs, u, v) / eval(*n.rhs, u, v);
      case ExprNode::Kind::pow: {
        T base = eval(*n.lhs, u, v);
        if (n.int_pow) return ipow(base, n.exponent);
        return pow(base, eval(*n.rhs, u, v));
      }
      case ExprNode::Kind::neg:
        return -eval(*n.lhs, u, v);
      case ExprNode::Kind::call_sin:
        return sin(eval(*n.lhs, u, v));
      case ExprNode::Kind::call_cos:
        return cos(eval(*n.lhs, u, v));
      case ExprNode::Kind::call_exp:
        return exp(eval(*n.lhs, u, v));
      case ExprNode::Kind::call_sqrt:
        return sqrt(eval(*n.lhs, u, v));
    }
    return T(0);
  }

  template <class T>
  static T ipow(const T& base, long e) {
    if (e == 0) return T(1);
    if (e < 0) return T(1) / ipow(base, -e);
    T acc = base;
    T out = T(1);
    long k = e;
    while (k > 0) {
      if (k & 1) out = out * acc;
      k >>= 1;
      if (k > 0) acc = acc * acc;
    }
    return out;
  }

  std::shared_ptr<const ExprNode> root_;
  std::string text_;
};

}  // namespace confgeo
