#pragma once

#include <memory>

#include "tamecell/common.hpp"
#include "tamecell/smooth_fn.hpp"

namespace tamecell {

namespace exprdet {
struct Node;
}

/// Scalar smooth expression over variables x0..x{n-1}. Smooth by
/// construction: built only from C-infinity primitives and 1D library
/// functions.
class Expr {
 public:
  Expr() = default;
  double eval(const Vec& x) const;
  int arity() const;
  bool valid() const { return node_ != nullptr; }

  static Expr constant(double c);
  static Expr var(int i);
  /// Applies a 1D library function (smash, ramp, ...) to a subexpression.
  static Expr fn1d(SmoothFn1D f, Expr arg);

  friend Expr operator+(const Expr&, const Expr&);
  friend Expr operator-(const Expr&, const Expr&);
  friend Expr operator*(const Expr&, const Expr&);
  friend Expr operator/(const Expr&, const Expr&);
  friend Expr operator-(const Expr&);
  friend Expr sin(const Expr&);
  friend Expr cos(const Expr&);
  friend Expr exp(const Expr&);

 private:
  explicit Expr(std::shared_ptr<const exprdet::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const exprdet::Node> node_;
};

}  // namespace tamecell
