#include "tamecell/smooth_fn.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

namespace tamecell {


int max_threads() {
  static int cached = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 4;
    if (const char* env = std::getenv("TAMECELL_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) hw = std::min(hw, v);
    }
    return std::min(hw, 16);
  }();
  return cached;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  int workers = max_threads();
  if (workers <= 1 || n < 64) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

namespace fn1d {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { Const, Poly, Exp, Psi, Step, Sum, Diff, Prod, Quot, Compose, Glue };

struct Node {
  Kind kind;
  std::vector<double> coeffs;               // Const (1 entry) / Poly
  std::shared_ptr<const Node> a, b;         // binary ops, Compose(outer=a, inner=b)
  std::vector<double> breaks;               // Glue
  std::vector<std::shared_ptr<const Node>> pieces;  // Glue
  std::vector<FlatZone> zones;

  double eval(double t) const;
};

double psi_raw(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double step_raw(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = psi_raw(t);
  double b = psi_raw(1.0 - t);
  return a / (a + b);
}

double Node::eval(double t) const {
  switch (kind) {
    case Kind::Const:
      return coeffs[0];
    case Kind::Poly: {
      double r = 0;
      for (size_t i = coeffs.size(); i-- > 0;) r = r * t + coeffs[i];
      return r;
    }
    case Kind::Exp:
      return std::exp(t);
    case Kind::Psi:
      return psi_raw(t);
    case Kind::Step:
      return step_raw(t);
    case Kind::Sum:
      return a->eval(t) + b->eval(t);
    case Kind::Diff:
      return a->eval(t) - b->eval(t);
    case Kind::Prod:
      return a->eval(t) * b->eval(t);
    case Kind::Quot: {
      double den = b->eval(t);
      if (den == 0.0) fail("SmoothFn1D: quotient denominator vanished");
      return a->eval(t) / den;
    }
    case Kind::Compose:
      return a->eval(b->eval(t));
    case Kind::Glue: {
      size_t i = std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin();
      return pieces[i]->eval(t);
    }
  }
  fail("SmoothFn1D: bad node");
}

namespace {

// Zone combination for pointwise binary ops. Includes the absorbing rule for
// products with a flat zero factor.
std::vector<FlatZone> combine_zones(const std::vector<FlatZone>& za,
                                    const std::vector<FlatZone>& zb, Kind k) {
  std::vector<FlatZone> out;
  for (const auto& x : za)
    for (const auto& y : zb) {
      double lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
      if (lo > hi) continue;
      double v;
      switch (k) {
        case Kind::Sum: v = x.value + y.value; break;
        case Kind::Diff: v = x.value - y.value; break;
        case Kind::Prod: v = x.value * y.value; break;
        case Kind::Quot:
          if (y.value == 0.0) continue;
          v = x.value / y.value;
          break;
        default: continue;
      }
      out.push_back({lo, hi, v});
    }
  if (k == Kind::Prod) {
    for (const auto& x : za)
      if (x.value == 0.0) out.push_back({x.lo, x.hi, 0.0});
    for (const auto& y : zb)
      if (y.value == 0.0) out.push_back({y.lo, y.hi, 0.0});
  }
  return out;
}

std::shared_ptr<const Node> make_binary(Kind k, std::shared_ptr<const Node> a,
                                        std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->zones = combine_zones(n->a->zones, n->b->zones, k);
  return n;
}

bool as_affine(const Node& n, double& a, double& b) {
  if (n.kind == Kind::Const) {
    a = 0;
    b = n.coeffs[0];
    return true;
  }
  if (n.kind == Kind::Poly && n.coeffs.size() <= 2) {
    b = n.coeffs.empty() ? 0 : n.coeffs[0];
    a = n.coeffs.size() > 1 ? n.coeffs[1] : 0;
    return true;
  }
  return false;
}

}  // namespace
}  // namespace fn1d

using fn1d::Node;
using fn1d::Kind;

double SmoothFn1D::operator()(double t) const {
  if (!node_) fail("SmoothFn1D: empty");
  return node_->eval(t);
}

const std::vector<FlatZone>& SmoothFn1D::flat_zones() const {
  static const std::vector<FlatZone> empty;
  return node_ ? node_->zones : empty;
}

SmoothFn1D SmoothFn1D::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->coeffs = {c};
  n->zones = {{-fn1d::kInf, fn1d::kInf, c}};
  return SmoothFn1D(n);
}

SmoothFn1D SmoothFn1D::identity() { return polynomial({0.0, 1.0}); }

SmoothFn1D SmoothFn1D::polynomial(std::vector<double> coeffs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Poly;
  n->coeffs = std::move(coeffs);
  return SmoothFn1D(n);
}

SmoothFn1D SmoothFn1D::exp_fn() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  return SmoothFn1D(n);
}

SmoothFn1D SmoothFn1D::psi() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Psi;
  n->zones = {{-fn1d::kInf, 0.0, 0.0}};
  return SmoothFn1D(n);
}

SmoothFn1D SmoothFn1D::step() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Step;
  n->zones = {{-fn1d::kInf, 0.0, 0.0}, {1.0, fn1d::kInf, 1.0}};
  return SmoothFn1D(n);
}

SmoothFn1D operator+(const SmoothFn1D& x, const SmoothFn1D& y) {
  return SmoothFn1D(fn1d::make_binary(Kind::Sum, x.node_, y.node_));
}
SmoothFn1D operator-(const SmoothFn1D& x, const SmoothFn1D& y) {
  return SmoothFn1D(fn1d::make_binary(Kind::Diff, x.node_, y.node_));
}
SmoothFn1D operator*(const SmoothFn1D& x, const SmoothFn1D& y) {
  return SmoothFn1D(fn1d::make_binary(Kind::Prod, x.node_, y.node_));
}
SmoothFn1D operator/(const SmoothFn1D& x, const SmoothFn1D& y) {
  return SmoothFn1D(fn1d::make_binary(Kind::Quot, x.node_, y.node_));
}

SmoothFn1D SmoothFn1D::compose(const SmoothFn1D& f, const SmoothFn1D& g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->a = f.node_;
  n->b = g.node_;
  // Inner flat zone -> composite flat with value f(v).
  for (const auto& z : g.node_->zones)
    n->zones.push_back({z.lo, z.hi, f.node_->eval(z.value)});
  // Affine increasing/decreasing inner: pull back f's zones exactly.
  double a, b;
  if (fn1d::as_affine(*g.node_, a, b) && a != 0.0) {
    n->zones.clear();
    for (const auto& z : f.node_->zones) {
      double lo = (z.lo - b) / a, hi = (z.hi - b) / a;
      if (a < 0) std::swap(lo, hi);
      n->zones.push_back({lo, hi, z.value});
    }
  }
  return SmoothFn1D(n);
}

SmoothFn1D SmoothFn1D::reparam(double a, double b) const {
  return compose(*this, polynomial({b, a}));
}

SmoothFn1D SmoothFn1D::flat_glue(std::vector<double> breaks,
                                 std::vector<SmoothFn1D> pieces) {
  if (pieces.size() != breaks.size() + 1) fail("flat_glue: piece/break mismatch");
  auto covered = [](const Node& n, double t, double& val) {
    for (const auto& z : n.zones)
      if (z.lo <= t && t <= z.hi) {
        val = z.value;
        return true;
      }
    return false;
  };
  for (size_t i = 0; i < breaks.size(); ++i) {
    double vl, vr;
    if (!covered(*pieces[i].node_, breaks[i], vl) ||
        !covered(*pieces[i + 1].node_, breaks[i], vr))
      fail("flat_glue: breakpoint not inside flat zones of both pieces");
    if (std::abs(vl - vr) > kAlgebraicTol)
      fail("flat_glue: flat values disagree at breakpoint");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Glue;
  n->breaks = std::move(breaks);
  for (auto& p : pieces) n->pieces.push_back(p.node_);
  // Keep zones of each piece clipped to its segment.
  for (size_t i = 0; i < n->pieces.size(); ++i) {
    double lo = i == 0 ? -fn1d::kInf : n->breaks[i - 1];
    double hi = i == n->breaks.size() ? fn1d::kInf : n->breaks[i];
    for (const auto& z : n->pieces[i]->zones) {
      double zlo = std::max(z.lo, lo), zhi = std::min(z.hi, hi);
      if (zlo <= zhi) n->zones.push_back({zlo, zhi, z.value});
    }
  }
  return SmoothFn1D(n);
}

SmoothFn1D smash_1d(const SmashParams& p) {
  // T(t) = t * A(t) * A(1-t) + 1 - A(1-t) with A(t) = s((t-sigma)/(tau-sigma)).
  // On [0,1/2] this is t*s((t-sigma)/(tau-sigma)); on [1/2,1] the reflection
  // 1 - T(1-t). Monotone since s, s' >= 0.
  double d = p.tau - p.sigma;
  SmoothFn1D A = SmoothFn1D::step().reparam(1.0 / d, -p.sigma / d);
  SmoothFn1D C = SmoothFn1D::compose(A, SmoothFn1D::polynomial({1.0, -1.0}));
  SmoothFn1D t = SmoothFn1D::identity();
  return t * A * C + SmoothFn1D::constant(1.0) - C;
}

SmoothFn1D mu(const SmashParams& p) {
  SmoothFn1D T = smash_1d(p);
  return T.reparam(2.0, 0.0) - T.reparam(2.0, -1.0);
}

SmoothFn1D time_ramp(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) fail("time_ramp: eps out of (0, 1/2]");
  return smash_1d(SmashParams(eps, 0.5)).reparam(2.0 / eps, 0.0);
}

}  // namespace tamecell
