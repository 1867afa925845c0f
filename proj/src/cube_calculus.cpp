#include <algorithm>

#include "tamecell/cube_map.hpp"

namespace tamecell {

CubeMap smash_nd(int n, const SmashParams& p) {
  if (n < 0) fail("smash_nd: negative dimension");
  SmoothFn1D T = smash_1d(p);
  std::vector<Expr> comps;
  for (int j = 0; j < n; ++j) comps.push_back(Expr::fn1d(T, Expr::var(j)));
  CubeMap m = CubeMap::from_components(
      CubeDomain::full_cube(n), std::move(comps),
      Codomain::domain(CubeDomain::full_cube(n)));
  if (p.sigma > 0)
    m = m.with_certificate({p.sigma, TamenessCertificate::Status::ByConstruction, 0});
  return m;
}

CubeMap locally_tame_subdivision(int n, int k, const SmashParams& p) {
  if (n < 1 || k < 1) fail("locally_tame_subdivision: need n, k >= 1");
  SmoothFn1D T = smash_1d(p);
  SmoothFn1D t1;
  if (k == 1) {
    t1 = T;
  } else {
    // Piece j on [(j-1)/k, j/k] is (j-1)/k + T(k t - (j-1))/k; the flat zones
    // of T make adjacent pieces constant around each breakpoint.
    std::vector<double> breaks;
    std::vector<SmoothFn1D> pieces;
    for (int j = 1; j <= k; ++j) {
      SmoothFn1D piece = T.reparam(double(k), double(1 - j)) *
                             SmoothFn1D::constant(1.0 / k) +
                         SmoothFn1D::constant(double(j - 1) / k);
      pieces.push_back(piece);
      if (j < k) breaks.push_back(double(j) / k);
    }
    t1 = SmoothFn1D::flat_glue(std::move(breaks), std::move(pieces));
  }
  std::vector<Expr> comps;
  for (int j = 0; j < n; ++j) comps.push_back(Expr::fn1d(t1, Expr::var(j)));
  CubeMap m = CubeMap::from_components(
      CubeDomain::full_cube(n), std::move(comps),
      Codomain::domain(CubeDomain::full_cube(n)));
  std::vector<Seam> seams;
  if (p.sigma > 0) {
    for (int axis = 0; axis < n; ++axis)
      for (int j = 1; j < k; ++j)
        seams.push_back({axis, double(j) / k, p.sigma / k});
    m = m.with_seams(std::move(seams));
  }
  return m;
}

CubeMap straight_line_homotopy(const CubeMap& g) {
  const Codomain& cod = g.codomain();
  bool cube_codomain = cod.kind == Codomain::Kind::Domain &&
                       cod.dom && cod.dom->is_full_cube();
  if (!cube_codomain)
    fail("straight_line_homotopy: codomain must be a full cube (convex)");
  int n = g.domain().dim();
  CubeMap gc = g;
  auto body = [gc, n](const Vec& x) -> Value {
    Vec t(x.begin(), x.begin() + n);
    double s = x[size_t(n)];
    Vec gt = gc.eval_vec(t);
    Vec out(size_t(n), 0.0);
    for (int j = 0; j < n; ++j)
      out[size_t(j)] = (1.0 - s) * t[size_t(j)] + s * gt[size_t(j)];
    return out;
  };
  return CubeMap::from_callable(
      CubeDomain::product_with_interval(CubeDomain::full_cube(n)),
      Codomain::domain(CubeDomain::full_cube(n)), body,
      "straight_line_homotopy");
}

namespace {

// Shared pieces of R^n_eps. With Theta = T_{eps/2,eps}:
//   R(u, v) = (Theta(u_1), .., Theta(u_{n-1}), 1 - S(u) (1 - Theta(v))),
//   S(u)    = 1 - prod_j Theta(2 u_j / eps) Theta(2 (1-u_j) / eps).
// If the height is below 1 then some S-factor is < 1, which forces the
// corresponding coordinate into a flat zone of Theta, so the image lies in
// J^{n-1} exactly. On a side face S == 1, so the height move is the tame
// clamp Theta(v); on the top face the height stays 1. Both give
// f(R(y)) = f(y) for eps-tame f on the horn.
struct RetractionParts {
  SmoothFn1D theta;
  SmoothFn1D gate;  // Theta(2 t / eps)
  double eps;
};

RetractionParts retraction_parts(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) fail("approximate_retraction: eps out of (0, 1/2)");
  SmoothFn1D theta = smash_1d(SmashParams(eps / 2.0, eps));
  return {theta, theta.reparam(2.0 / eps, 0.0), eps};
}

}  // namespace

Vec retraction_point(int n, double eps, const Vec& x) {
  static thread_local double cached_eps = -1;
  static thread_local RetractionParts parts{{}, {}, 0};
  if (cached_eps != eps) {
    parts = retraction_parts(eps);
    cached_eps = eps;
  }
  if (int(x.size()) != n) fail("retraction_point: dimension mismatch");
  Vec out(size_t(n), 0.0);
  double prod = 1.0;
  for (int j = 0; j + 1 < n; ++j) {
    double u = x[size_t(j)];
    out[size_t(j)] = parts.theta(u);
    prod *= parts.gate(u) * parts.gate(1.0 - u);
  }
  double s = 1.0 - prod;
  out[size_t(n - 1)] = 1.0 - s * (1.0 - parts.theta(x[size_t(n - 1)]));
  return out;
}

CubeMap approximate_retraction(int n, double eps) {
  if (n < 1) fail("approximate_retraction: need n >= 1");
  RetractionParts parts = retraction_parts(eps);
  std::vector<Expr> comps;
  Expr prod = Expr::constant(1.0);
  for (int j = 0; j + 1 < n; ++j) {
    comps.push_back(Expr::fn1d(parts.theta, Expr::var(j)));
    prod = prod * Expr::fn1d(parts.gate, Expr::var(j)) *
           Expr::fn1d(parts.gate, Expr::constant(1.0) - Expr::var(j));
  }
  Expr s = Expr::constant(1.0) - prod;
  Expr height = Expr::constant(1.0) -
                s * (Expr::constant(1.0) - Expr::fn1d(parts.theta, Expr::var(n - 1)));
  comps.push_back(height);
  CubeMap m = CubeMap::from_components(CubeDomain::full_cube(n), std::move(comps),
                                       Codomain::domain(CubeDomain::horn_j(n)));
  // Locally constant within eps^2/4 of every face.
  double cert = std::min(eps / 2.0, eps * eps / 4.0);
  return m.with_certificate({cert, TamenessCertificate::Status::ByConstruction, 0});
}

CubeMap tamify(const CubeMap& f, const SmashParams& p) {
  if (!f.domain().is_full_cube())
    fail("tamify: domain of f must be I^n");
  int n = f.domain().dim();
  CubeMap out = CubeMap::chain(smash_nd(n, p), f);
  if (p.sigma > 0)
    out = out.with_certificate({p.sigma, TamenessCertificate::Status::ByConstruction, 0});
  return out;
}

CubeMap concat(const CubeMap& phi, const CubeMap& psi, const SmashParams& p) {
  int n = phi.domain().dim();
  if (psi.domain().dim() != n) fail("concat: dimension mismatch");
  if (phi.codomain().kind != psi.codomain().kind)
    fail("concat: codomain mismatch");
  SmoothFn1D T = smash_1d(p);
  CubeMap a = phi, b = psi;
  // Basepoint agreement at the seam: phi(1, t2..) = psi(0, t2..).
  {
    Vec probe(size_t(n), 0.5);
    probe[0] = 1.0;
    Value va = a.eval(probe);
    probe[0] = 0.0;
    Value vb = b.eval(probe);
    bool ok;
    if (va.index() != vb.index()) {
      ok = false;
    } else if (std::holds_alternative<Vec>(va)) {
      ok = sup_dist(as_vec(va), as_vec(vb)) <= kComposedTol;
    } else {
      const CWPoint& pa = as_cw(va);
      const CWPoint& pb = as_cw(vb);
      ok = pa.cell == pb.cell && sup_dist(pa.coords, pb.coords) <= kComposedTol;
    }
    if (!ok) fail("concat: basepoints disagree at the seam t1 = 1/2");
  }
  auto lower = [a, T](const Vec& x) -> Value {
    Vec t = x;
    t[0] = T(2.0 * x[0]);
    return a.eval(t);
  };
  auto upper = [b, T](const Vec& x) -> Value {
    Vec t = x;
    t[0] = T(2.0 * x[0] - 1.0);
    return b.eval(t);
  };
  std::vector<AxisRange> lo_axes(size_t(n), {0.0, 1.0});
  lo_axes[0] = {0.0, 0.5};
  std::vector<AxisRange> hi_axes(size_t(n), {0.0, 1.0});
  hi_axes[0] = {0.5, 1.0};
  CubeDomain whole = CubeDomain::full_cube(n);
  std::vector<std::pair<CubeDomain, CubeMap>> pieces;
  pieces.emplace_back(CubeDomain::box(lo_axes),
                      CubeMap::from_callable(CubeDomain::box(lo_axes),
                                             a.codomain(), lower, "concat.lo"));
  pieces.emplace_back(CubeDomain::box(hi_axes),
                      CubeMap::from_callable(CubeDomain::box(hi_axes),
                                             b.codomain(), upper, "concat.hi"));
  // Both sides are locally constant in t1 near 1/2 (flat zones of T), so the
  // seam is certified.
  double collar = p.sigma > 0 ? p.sigma / 2.0 : 1e-3;
  CubeMap out = glue_pieces_internal(whole, std::move(pieces),
                                     {{0, 0.5, collar}});
  if (p.sigma > 0 && a.tameness() && b.tameness()) {
    double e = std::min({p.sigma / 2.0, a.tameness()->epsilon, b.tameness()->epsilon});
    out = out.with_certificate({e, TamenessCertificate::Status::ByConstruction, 0});
  }
  return out;
}

namespace {

bool values_close(const Value& a, const Value& b, double tol) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Vec>(a)) return sup_dist(as_vec(a), as_vec(b)) <= tol;
  const CWPoint& pa = as_cw(a);
  const CWPoint& pb = as_cw(b);
  return pa.cell == pb.cell && sup_dist(pa.coords, pb.coords) <= tol;
}

}  // namespace

CubeMap glue_piecewise(CubeDomain whole, std::vector<GluePiece> pieces,
                       std::vector<SeamSpec> seams, double tol) {
  if (pieces.empty()) fail("glue_piecewise: no pieces");
  int n = whole.dim();
  // Coverage: every sample of the whole domain lies in some piece.
  SampleGrid cover = sample(whole, n <= 2 ? 9 : 5);
  for (const Vec& x : cover.points) {
    bool hit = false;
    for (const auto& p : pieces)
      if (p.domain.contains(x, 1e-9)) {
        hit = true;
        break;
      }
    if (!hit) fail("glue_piecewise: domain not covered by pieces");
  }
  std::vector<Seam> recorded;
  for (const auto& s : seams) {
    if (s.axis < 0 || s.axis >= n) fail("glue_piecewise: seam axis out of range");
    if (s.collar <= 0 && s.justification == SeamSpec::Justification::FlatCollar)
      fail("glue_piecewise: flat-collar seam needs a positive collar width");
    // Points on the seam hyperplane.
    std::vector<AxisRange> axes(size_t(n), {0.0, 1.0});
    axes[size_t(s.axis)] = {s.value, s.value};
    SampleGrid plane = sample(CubeDomain::box(axes), n <= 2 ? 17 : 7);
    for (const Vec& x : plane.points) {
      if (!whole.contains(x, 1e-9)) continue;
      // All covering pieces must agree at the seam.
      std::optional<Value> first;
      for (const auto& p : pieces) {
        if (!p.domain.contains(x, 1e-9)) continue;
        Value v = p.map.eval(x);
        if (!first)
          first = v;
        else if (!values_close(*first, v, tol))
          fail("glue_piecewise: seam value mismatch beyond tolerance");
      }
      if (!first) continue;
      if (s.justification == SeamSpec::Justification::FlatCollar) {
        // At least one side must be locally constant in the transverse
        // direction inside the collar.
        bool point_ok = false;
        for (int side = -1; side <= 1 && !point_ok; side += 2) {
          bool constant = true;
          for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            Vec y = x;
            y[size_t(s.axis)] = s.value + side * frac * s.collar;
            if (y[size_t(s.axis)] < 0 || y[size_t(s.axis)] > 1) continue;
            const GluePiece* owner = nullptr;
            for (const auto& p : pieces)
              if (p.domain.contains(y, 1e-9)) {
                owner = &p;
                break;
              }
            if (!owner) continue;
            if (!values_close(*first, owner->map.eval(y), tol)) {
              constant = false;
              break;
            }
          }
          point_ok = constant;
        }
        if (!point_ok)
          fail("glue_piecewise: no flat collar on either side of a seam "
               "(refusing uncertified gluing)");
      }
    }
    recorded.push_back({s.axis, s.value, s.collar});
  }
  std::vector<std::pair<CubeDomain, CubeMap>> ps;
  for (auto& p : pieces) ps.emplace_back(p.domain, p.map);
  return glue_pieces_internal(std::move(whole), std::move(ps), std::move(recorded));
}

}  // namespace tamecell
