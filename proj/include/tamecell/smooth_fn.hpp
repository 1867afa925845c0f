#pragma once

#include <memory>

#include "tamecell/common.hpp"

namespace tamecell {

/// Parameters of the smash function T_{sigma,tau}. Requires
/// 0 <= sigma < tau <= 1/2; rejected on construction otherwise.
struct SmashParams {
  double sigma;
  double tau;
  SmashParams(double s, double t) : sigma(s), tau(t) {
    if (!(s >= 0.0 && s < t && t <= 0.5))
      fail("SmashParams: need 0 <= sigma < tau <= 1/2");
  }
};

/// A closed interval on which a function is provably constant. lo/hi may be
/// +-infinity.
struct FlatZone {
  double lo;
  double hi;
  double value;
};

namespace fn1d {
struct Node;
}

/// A smooth real function of one variable, represented as an expression tree
/// over {polynomials, exp, psi(t)=e^(-1/t), the standard transition step}
/// closed under sum, product, quotient, composition, affine reparametrization
/// and certified flat-gluing. Carries sound flat-zone metadata.
class SmoothFn1D {
 public:
  SmoothFn1D() = default;

  double operator()(double t) const;
  const std::vector<FlatZone>& flat_zones() const;
  bool valid() const { return node_ != nullptr; }

  static SmoothFn1D constant(double c);
  static SmoothFn1D identity();
  /// Polynomial with coefficients in increasing degree order.
  static SmoothFn1D polynomial(std::vector<double> coeffs);
  static SmoothFn1D exp_fn();
  /// psi(t) = exp(-1/t) for t > 0, 0 otherwise. Smooth and flat at 0.
  static SmoothFn1D psi();
  /// s(t) = psi(t) / (psi(t) + psi(1-t)); 0 for t <= 0, 1 for t >= 1.
  static SmoothFn1D step();

  friend SmoothFn1D operator+(const SmoothFn1D&, const SmoothFn1D&);
  friend SmoothFn1D operator-(const SmoothFn1D&, const SmoothFn1D&);
  friend SmoothFn1D operator*(const SmoothFn1D&, const SmoothFn1D&);
  /// Quotient; the denominator must be nonvanishing on the domain of use.
  friend SmoothFn1D operator/(const SmoothFn1D&, const SmoothFn1D&);

  /// f(a*t + b), with flat zones transformed exactly.
  SmoothFn1D reparam(double a, double b) const;

  static SmoothFn1D compose(const SmoothFn1D& f, const SmoothFn1D& g);

  /// Certified flat-gluing: pieces[i] is used on [breaks[i-1], breaks[i]]
  /// (with breaks[-1] = -inf, breaks[n] = +inf). Each breakpoint must sit in
  /// a flat zone of both neighbouring pieces with matching values; refused
  /// otherwise.
  static SmoothFn1D flat_glue(std::vector<double> breaks,
                              std::vector<SmoothFn1D> pieces);

 private:
  explicit SmoothFn1D(std::shared_ptr<const fn1d::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const fn1d::Node> node_;
  friend struct fn1d::Node;
};

/// The smash function T_{sigma,tau}: non-decreasing, T=0 below sigma, T=t on
/// [tau, 1-tau], T=1 above 1-sigma, T(1-t)=1-T(t).
SmoothFn1D smash_1d(const SmashParams& p);

/// mu(t) = T_{sigma,tau}(2t) - T_{sigma,tau}(2t-1); the smooth tame tent with
/// mu(0)=mu(1)=0 and mu(1/2)=1.
SmoothFn1D mu(const SmashParams& p);

/// T~(s) = T_{eps,1/2}(2 s / eps): tame ramp 0 -> 1 over [0, eps/2].
SmoothFn1D time_ramp(double eps);

}  // namespace tamecell
