#include "tamecell/expr.hpp"

namespace tamecell {
namespace exprdet {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Fn1D };

struct Node {
  Op op;
  double value = 0;
  int var = -1;
  std::shared_ptr<const Node> a, b;
  SmoothFn1D fn;
  int arity = 0;

  double eval(const Vec& x) const {
    switch (op) {
      case Op::Const: return value;
      case Op::Var:
        if (var >= int(x.size())) fail("Expr: point has too few coordinates");
        return x[size_t(var)];
      case Op::Add: return a->eval(x) + b->eval(x);
      case Op::Sub: return a->eval(x) - b->eval(x);
      case Op::Mul: return a->eval(x) * b->eval(x);
      case Op::Div: {
        double den = b->eval(x);
        if (den == 0.0) fail("Expr: division by zero");
        return a->eval(x) / den;
      }
      case Op::Neg: return -a->eval(x);
      case Op::Sin: return std::sin(a->eval(x));
      case Op::Cos: return std::cos(a->eval(x));
      case Op::Exp: return std::exp(a->eval(x));
      case Op::Fn1D: return fn(a->eval(x));
    }
    fail("Expr: bad node");
  }
};

namespace {
std::shared_ptr<const Node> node1(Op op, std::shared_ptr<const Node> a) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->arity = a->arity;
  n->a = std::move(a);
  return n;
}
std::shared_ptr<const Node> node2(Op op, std::shared_ptr<const Node> a,
                                  std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->arity = std::max(a->arity, b->arity);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

}  // namespace exprdet

using exprdet::Node;
using exprdet::Op;

double Expr::eval(const Vec& x) const {
  if (!node_) fail("Expr: empty");
  return node_->eval(x);
}

int Expr::arity() const { return node_ ? node_->arity : 0; }

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return Expr(n);
}

Expr Expr::var(int i) {
  if (i < 0) fail("Expr::var: negative index");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = i;
  n->arity = i + 1;
  return Expr(n);
}

Expr Expr::fn1d(SmoothFn1D f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->op = Op::Fn1D;
  n->fn = std::move(f);
  n->arity = arg.node_->arity;
  n->a = arg.node_;
  return Expr(n);
}

Expr operator+(const Expr& x, const Expr& y) { return Expr(exprdet::node2(Op::Add, x.node_, y.node_)); }
Expr operator-(const Expr& x, const Expr& y) { return Expr(exprdet::node2(Op::Sub, x.node_, y.node_)); }
Expr operator*(const Expr& x, const Expr& y) { return Expr(exprdet::node2(Op::Mul, x.node_, y.node_)); }
Expr operator/(const Expr& x, const Expr& y) { return Expr(exprdet::node2(Op::Div, x.node_, y.node_)); }
Expr operator-(const Expr& x) { return Expr(exprdet::node1(Op::Neg, x.node_)); }
Expr sin(const Expr& x) { return Expr(exprdet::node1(Op::Sin, x.node_)); }
Expr cos(const Expr& x) { return Expr(exprdet::node1(Op::Cos, x.node_)); }
Expr exp(const Expr& x) { return Expr(exprdet::node1(Op::Exp, x.node_)); }

}  // namespace tamecell
