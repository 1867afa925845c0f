#include "tamecell/engine.hpp"

#include <algorithm>
#include <set>

namespace tamecell {

namespace {

// Default smash parameters for a tameness budget eps.
SmashParams half_params(double eps) { return SmashParams(eps / 2.0, eps); }

// ---- the tame extension machine ----
//
// Extends data given on the L-shape of (I^m x P) x I_s, where P is a
// passenger block that is never clamped: data(y, pass, s) must be defined
// for y in dI^m (all s) and for s = 0 (all y), and the side restriction must
// be eps-tame in (y, s) for each fixed passenger. Stage 1 flows the bottom
// to its tamification over s in [0, eps/2]; stage 2 fills the remaining slab
// from its J-shaped data through R o T.
struct LMachine {
  int m = 0;
  double eps = 0;
  std::function<Value(const Vec& y, const Vec& pass, double s)> data;

  SmoothFn1D ramp;      // T_{eps,1/2}(2s/eps)
  SmoothFn1D t_in;      // T_{eps/2, eps}
  SmoothFn1D t_slab;    // T_{eps/4, eps/2}
  double eps_j = 0;     // eps/2
  double sigma_j = 0;   // eps/4

  static LMachine make(int m, double eps,
                       std::function<Value(const Vec&, const Vec&, double)> data) {
    if (!(eps > 0 && eps < 0.5)) fail("extension machine: eps out of (0, 1/2)");
    LMachine L;
    L.m = m;
    L.eps = eps;
    L.data = std::move(data);
    L.ramp = time_ramp(eps);
    L.t_in = smash_1d(half_params(eps));
    L.eps_j = eps / 2.0;
    L.sigma_j = eps / 4.0;
    L.t_slab = smash_1d(SmashParams(L.sigma_j, L.eps_j));
    return L;
  }

  double time_tameness() const {
    return std::min(eps * eps / 2.0, sigma_j * (1.0 - eps / 2.0));
  }
  double slice_tameness() const { return sigma_j; }
  double seam_position() const { return eps / 2.0; }
  double seam_collar() const { return time_tameness(); }

  Value eval(const Vec& y, const Vec& pass, double s) const {
    if (m == 0) return data({}, pass, 0.0);
    if (s <= eps / 2.0) {
      // stage 1: F(y,s) = data((1-ramp(s)) y + ramp(s) T_in(y), 0)
      double u = ramp(s);
      Vec b(y.size());
      for (size_t j = 0; j < y.size(); ++j)
        b[j] = (1.0 - u) * y[j] + u * t_in(y[j]);
      return data(b, pass, 0.0);
    }
    // stage 2: slab coordinates (y, z), z = 1 at the stage boundary.
    double z = (1.0 - s) / (1.0 - eps / 2.0);
    Vec w(y.size() + 1);
    for (size_t j = 0; j < y.size(); ++j) w[j] = t_slab(y[j]);
    w.back() = t_slab(z);
    Vec r = retraction_point(m + 1, eps_j, w);
    if (r.back() >= 1.0 - 1e-12) {
      // top of the slab: the tamified stage-1 end slice
      Vec yy(r.begin(), r.end() - 1);
      for (auto& c : yy) c = t_in(c);
      return data(yy, pass, 0.0);
    }
    Vec yy(r.begin(), r.end() - 1);
    double ss = 1.0 - r.back() * (1.0 - eps / 2.0);
    return data(yy, pass, ss);
  }
};

double attaching_eps(const CWComplex& X, const Cell& c) {
  if (!c.tame_eps) fail("engine: cell " + c.name + " has no tameness (complex not gathered)");
  (void)X;
  return *c.tame_eps;
}

// Caps machine epsilons so flat zones stay representable.
double clamp_eps(double e) { return std::min(e, 0.45); }

Codomain value_codomain(const MapTarget& t) {
  return t.kind == MapTarget::Kind::Euclidean ? Codomain::euclidean(t.euclid_dim)
                                              : Codomain::complex();
}

}  // namespace

CubeMap extend_tame_from_J(const CubeMap& f, double sigma) {
  if (f.domain().kind() != DomainKind::HornJ)
    fail("extend_tame_from_J: domain must be J^{n-1}");
  if (!f.tameness())
    fail("extend_tame_from_J: input carries no tameness certificate");
  double eps = f.tameness()->epsilon;
  if (!(sigma > 0 && sigma < eps))
    fail("extend_tame_from_J: need 0 < sigma < eps");
  int n = f.domain().dim();
  CubeMap T = smash_nd(n, SmashParams(sigma, eps));
  CubeMap R = approximate_retraction(n, eps);
  CubeMap g = CubeMap::chain(CubeMap::chain(T, R), f);
  return g.with_certificate(
      {sigma, TamenessCertificate::Status::ByConstruction, 0, -1});
}

LExtension extend_from_L(const CubeMap& f, double eps) {
  if (f.domain().kind() != DomainKind::HornL)
    fail("extend_from_L: domain must be L^{n-1}");
  int n = f.domain().dim();
  int m = n - 1;
  // Side tameness (in every coordinate, including time) is a precondition;
  // spot-check it on a coarse grid so we refuse obviously bad inputs.
  if (m >= 1) {
    CubeMap side = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::boundary(m)), f.codomain(),
        [f](const Vec& x) { return f.eval(x); }, "l.side_probe");
    VerificationReport probe = check_tame(side, eps, 5, 1e-6);
    if (!probe.pass)
      fail("extend_from_L: side restriction is not eps-tame (sampled)");
  }
  CubeMap fc = f;
  LMachine L = LMachine::make(m, eps, [fc](const Vec& y, const Vec&, double s) {
    Vec x = y;
    x.push_back(s);
    return fc.eval(x);
  });
  CubeMap out = CubeMap::from_callable(
      CubeDomain::product_with_interval(CubeDomain::full_cube(m)),
      f.codomain(),
      [L](const Vec& x) {
        Vec y(x.begin(), x.end() - 1);
        return L.eval(y, {}, x.back());
      },
      "extend_from_L");
  out = out.with_seams({{m, L.seam_position(), L.seam_collar()}});
  out = out.with_certificate({L.time_tameness(),
                              TamenessCertificate::Status::ByConstruction, 0, m});
  return {out, L.time_tameness(), L.slice_tameness()};
}

// ---- HEP ----

namespace {
void require_gathered(const CWComplex& X, const std::set<int>& base,
                      const char* who) {
  for (const auto& c : X.cells())
    if (c.dim >= 1 && !base.count(c.id) && !c.tame_eps)
      fail(std::string(who) + ": complex is not gathered (cell " + c.name + ")");
}
}  // namespace

CellwiseHomotopy hep(const ComplexPtr& X, const CellwiseMap& f,
                     const CellwiseHomotopy& h) {
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  require_gathered(*X, base, "hep");
  // h(.,0) must agree with f on the base.
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), 5);
    for (const Vec& t : g.points) {
      double d = f.target().dist(h.eval_cell(a, t, 0.0), f.eval_cell(a, t));
      if (d > kComposedTol) fail("hep: h(.,0) != f on the base");
    }
  }
  // Stationary input homotopy: the stationary extension is already tame and
  // compatible, so use it.
  bool stationary = true;
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), 5);
    for (const Vec& t : g.points) {
      Value at0 = h.eval_cell(a, t, 0.0);
      for (double s : {0.25, 0.5, 0.75, 1.0})
        if (f.target().dist(h.eval_cell(a, t, s), at0) > kAlgebraicTol)
          stationary = false;
    }
  }
  if (stationary) {
    CellwiseHomotopy H(X, f.target());
    for (const auto& c : X->cells()) {
      CubeMap piece = f.piece(c.id);
      H.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                            value_codomain(f.target()),
                            [piece](const Vec& x) {
                              Vec y(x.begin(), x.end() - 1);
                              return piece.eval(y);
                            },
                            "hep.stationary"));
    }
    H.set_time_tameness(0.45);
    return H;
  }
  // Pieces accumulate dimension by dimension; each level's machines capture
  // a snapshot of the strictly lower pieces (a DAG, no ownership cycles).
  CellwiseHomotopy H(X, f.target());
  std::map<int, CubeMap> built;
  double h_tame = h.time_tameness() > 0 ? h.time_tameness() : 0.25;
  for (int a : X->base_cells()) built[a] = h.piece(a);
  double running_time_tame = h_tame;
  for (int d = 0; d <= X->dim(); ++d) {
    double level_out = running_time_tame;
    auto lower = std::make_shared<const std::map<int, CubeMap>>(built);
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      CellwiseMap fc = f;
      if (d == 0) {
        Value v = f.eval_cell(id, {});
        built[id] = CubeMap::from_callable(CubeDomain::full_cube(1),
                                           value_codomain(f.target()),
                                           [v](const Vec&) { return v; },
                                           "hep.vertex");
        continue;
      }
      double eps_cell = clamp_eps(std::min(attaching_eps(*X, c), running_time_tame));
      ComplexPtr Xc = X;
      int cid = id;
      LMachine L = LMachine::make(
          d, eps_cell, [Xc, lower, fc, cid](const Vec& y, const Vec&, double s) -> Value {
            bool boundary = false;
            for (double v : y)
              if (std::abs(v) <= kMembershipTol || std::abs(v - 1.0) <= kMembershipTol)
                boundary = true;
            if (boundary) {
              CWPoint p = canonicalize(*Xc, CWPoint{cid, y});
              Vec x = p.coords;
              x.push_back(s);
              return lower->at(p.cell).eval(x);
            }
            if (s != 0.0) fail("hep machine: interior query off the bottom");
            return fc.eval_cell(cid, y);
          });
      level_out = std::min(level_out, L.time_tameness());
      built[id] = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(d)),
          value_codomain(f.target()),
          [L](const Vec& x) {
            Vec y(x.begin(), x.end() - 1);
            return L.eval(y, {}, x.back());
          },
          "hep.cell");
    }
    running_time_tame = level_out;
  }
  for (const auto& [id, piece] : built) H.set_piece(id, piece);
  H.set_time_tameness(running_time_tame);
  return H;
}

// ---- HEP2 ----

CellwiseHomotopy hep_rel(const ComplexPtr& X, const CellwiseMap& f,
                         const CellwiseHomotopy& F) {
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  require_gathered(*X, base, "hep_rel");
  const auto& inB = f.target().subspace;
  if (!inB) fail("hep_rel: target carries no subspace predicate B");
  // Preconditions, sampled: F(.,0) = f, F(.,1) in B, F(A x I) in B.
  for (const auto& c : X->cells()) {
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), 5);
    for (const Vec& t : g.points) {
      if (f.target().dist(F.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)) >
          kComposedTol)
        fail("hep_rel: F(.,0) != f");
      if (!inB(f.target().canonical(F.eval_cell(c.id, t, 1.0))))
        fail("hep_rel: F(.,1) leaves B");
      if (base.count(c.id))
        for (double s : {0.25, 0.5, 0.75})
          if (!inB(f.target().canonical(F.eval_cell(c.id, t, s))))
            fail("hep_rel: F(A x I) leaves B");
    }
  }
  double epsF = F.time_tameness() > 0 ? F.time_tameness() : 0.25;
  // 1. G(a,s) = F(a, 1-s) on the base; 2. H = hep(X, F(.,1), G) runs in B.
  CellwiseHomotopy G(X, f.target());
  for (int a : X->base_cells()) {
    CubeMap piece = F.piece(a);
    int dim = X->cell(a).dim;
    G.set_piece(a, CubeMap::from_callable(
                       CubeDomain::product_with_interval(CubeDomain::full_cube(dim)),
                       value_codomain(f.target()),
                       [piece](const Vec& x) {
                         Vec y = x;
                         y.back() = 1.0 - x.back();
                         return piece.eval(y);
                       },
                       "hep_rel.G"));
  }
  G.set_time_tameness(epsF);
  CellwiseMap f1 = F.slice(1.0);
  CellwiseHomotopy H = hep(X, f1, G);
  double epsH = H.time_tameness();

  // 3. H'(x,t) = F(x, T(2t)) then H(x, T(2t-1)); tame with flat collars.
  SmashParams pc(0.25, 0.5);
  SmoothFn1D Tc = smash_1d(pc);
  auto Fh = std::make_shared<CellwiseHomotopy>(F);
  auto Hh = std::make_shared<CellwiseHomotopy>(H);
  auto Hprime = [Fh, Hh, Tc](int cell, const Vec& y, double t) -> Value {
    if (t <= 0.5) return Fh->eval_cell(cell, y, Tc(2.0 * t));
    return Hh->eval_cell(cell, y, Tc(2.0 * t - 1.0));
  };

  // 4. The square, per cell: bottom H'(x, T(t)); base cells carry the
  //    amplitude shrink H'(a, (1-T(s)) T(t)), stationary at s = 1. Each
  //    level's machines capture a snapshot of the lower squares.
  std::map<int, CubeMap> square;
  for (int a : X->base_cells()) {
    int dim = X->cell(a).dim;
    int cell = a;
    square[a] = CubeMap::from_callable(
        CubeDomain::product_with_interval(
            CubeDomain::product_with_interval(CubeDomain::full_cube(dim))),
        value_codomain(f.target()),
        [Hprime, Tc, cell](const Vec& x) {
          double s = x.back();
          double t = x[x.size() - 2];
          Vec y(x.begin(), x.end() - 2);
          return Hprime(cell, y, (1.0 - Tc(s)) * Tc(t));
        },
        "hep_rel.shrink");
  }
  double running = clamp_eps(std::min({epsF, epsH, pc.sigma / 2.0}));
  for (int d = 0; d <= X->dim(); ++d) {
    double level_out = running;
    auto lower = std::make_shared<const std::map<int, CubeMap>>(square);
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      if (d == 0) {
        int cell = id;
        square[id] = CubeMap::from_callable(
            CubeDomain::product_with_interval(
                CubeDomain::product_with_interval(CubeDomain::full_cube(0))),
            value_codomain(f.target()),
            [Hprime, Tc, cell](const Vec& x) {
              return Hprime(cell, {}, Tc(x[0]));
            },
            "hep_rel.vertex");
        continue;
      }
      double eps_cell = clamp_eps(std::min(attaching_eps(*X, c), running));
      ComplexPtr Xc = X;
      int cid = id;
      // passenger = t (1 coordinate), cube = y, time = s.
      LMachine L = LMachine::make(
          d, eps_cell,
          [Xc, lower, Hprime, Tc, cid](const Vec& y, const Vec& pass, double s) -> Value {
            double t = pass[0];
            bool boundary = false;
            for (double v : y)
              if (std::abs(v) <= kMembershipTol || std::abs(v - 1.0) <= kMembershipTol)
                boundary = true;
            if (boundary) {
              CWPoint p = canonicalize(*Xc, CWPoint{cid, y});
              Vec x = p.coords;
              x.push_back(t);
              x.push_back(s);
              return lower->at(p.cell).eval(x);
            }
            if (s != 0.0) fail("hep_rel machine: interior query off the bottom");
            return Hprime(cid, y, Tc(t));
          });
      level_out = std::min(level_out, L.time_tameness());
      square[id] = CubeMap::from_callable(
          CubeDomain::product_with_interval(
              CubeDomain::product_with_interval(CubeDomain::full_cube(d))),
          value_codomain(f.target()),
          [L](const Vec& x) {
            double s = x.back();
            double t = x[x.size() - 2];
            Vec y(x.begin(), x.end() - 2);
            return L.eval(y, {t}, s);
          },
          "hep_rel.square");
    }
    running = level_out;
  }

  // 5. Three tame segments: the escort edge t = 0 (f to F'(.,0)), the s = 1
  //    slice (to F'(.,1) in B), then a stationary hold inside B.
  CellwiseHomotopy out(X, f.target());
  for (const auto& c : X->cells()) {
    CubeMap sq = square.at(c.id);
    out.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                            value_codomain(f.target()),
                            [sq, Tc](const Vec& x) {
                              double t = x.back();
                              Vec y(x.begin(), x.end() - 1);
                              auto at = [&](double tt, double ss) {
                                Vec q = y;
                                q.push_back(tt);
                                q.push_back(ss);
                                return sq.eval(q);
                              };
                              if (t <= 1.0 / 3.0) return at(0.0, Tc(3.0 * t));
                              if (t <= 2.0 / 3.0) return at(Tc(3.0 * t - 1.0), 1.0);
                              return at(1.0, 1.0);
                            },
                            "hep_rel.three_segment"));
  }
  out.set_time_tameness(std::min(running, pc.sigma / 3.0));
  return out;
}

// ---- collars ----

CollarData collar_retraction(const ComplexPtr& X, int n) {
  if (n < 1 || n > X->dim()) fail("collar_retraction: bad level");
  CollarData out;
  out.level = n;
  SmoothFn1D gate = smash_1d(SmashParams(0.25, 0.5));  // time gate T_{1/4,1/2}
  std::map<int, SmoothFn1D> smashes;
  for (int id : X->cells_of_dim(n)) {
    const Cell& c = X->cell(id);
    double tau = attaching_eps(*X, c);
    double sig = tau * 5.0 / 7.0;
    out.sigma[id] = sig;
    smashes[id] = smash_1d(SmashParams(sig, tau));
  }
  ComplexPtr Xc = X;
  auto sigma = std::make_shared<std::map<int, double>>(out.sigma);
  auto sm = std::make_shared<std::map<int, SmoothFn1D>>(smashes);
  out.in_B = [Xc, sigma, n](const CWPoint& p) {
    CWPoint c = canonicalize(*Xc, p);
    int d = Xc->cell(c.cell).dim;
    if (d < n) return true;
    if (d > n) return false;
    double s = sigma->at(c.cell);
    for (double v : c.coords)
      if (v <= s + kMembershipTol || v >= 1.0 - s - kMembershipTol) return true;
    return false;
  };
  out.retraction = [Xc, sm, n](const CWPoint& p) {
    CWPoint c = canonicalize(*Xc, p);
    if (Xc->cell(c.cell).dim < n) return c;
    const SmoothFn1D& T = sm->at(c.cell);
    Vec y = c.coords;
    for (auto& v : y) v = T(v);
    return canonicalize(*Xc, CWPoint{c.cell, y});
  };
  out.deformation = CellwiseHomotopy(X, MapTarget::cw(X));
  for (const auto& c : X->cells()) {
    if (c.dim > n) continue;
    if (c.dim < n) {
      int id = c.id;
      out.deformation.set_piece(
          c.id, CubeMap::from_callable(
                    CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                    Codomain::complex(),
                    [id](const Vec& x) {
                      Vec y(x.begin(), x.end() - 1);
                      return CWPoint{id, y};
                    },
                    "collar.stationary"));
      continue;
    }
    SmoothFn1D T = smashes[c.id];
    int id = c.id;
    out.deformation.set_piece(
        c.id, CubeMap::from_callable(
                  CubeDomain::product_with_interval(CubeDomain::full_cube(n)),
                  Codomain::complex(),
                  [T, gate, id](const Vec& x) -> Value {
                    double u = gate(x.back());
                    Vec y(x.begin(), x.end() - 1);
                    for (auto& v : y) v = (1.0 - u) * v + u * T(v);
                    return CWPoint{id, y};
                  },
                  "collar.deform"));
  }
  out.deformation.set_time_tameness(0.25);
  return out;
}

// ---- HELP ----

namespace {

void check_oracle_homotopy(const MapTarget& tgt, const CubeMap& H,
                           const CubeMap& start, int cell, double tol = kComposedTol) {
  // The homotopy's base is the start map's own domain.
  SampleGrid g = sample(start.domain(), 7);
  for (const Vec& t : g.points) {
    Vec x = t;
    x.push_back(0.0);
    if (tgt.dist(H.eval(x), start.eval(t)) > tol)
      fail("oracle homotopy start contract violated (cell " +
           std::to_string(cell) + "); oracle blamed");
  }
}

}  // namespace

HelpResult help(const ComplexPtr& X, const CellwiseMap& p,
                const NullHomotopyOracle& lift_oracle,
                const CellwiseMap& f_prime, const CellwiseMap& g,
                const CellwiseHomotopy& F_prime) {
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  const MapTarget& ytgt = f_prime.target();
  const MapTarget& ztgt = g.target();
  // Preconditions: g|A = F'(.,0) and p o f' = F'(.,1), sampled.
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 5);
    for (const Vec& t : gr.points) {
      if (ztgt.dist(g.eval_cell(a, t), F_prime.eval_cell(a, t, 0.0)) > kComposedTol)
        fail("help: g|A != F'(.,0)");
      Value fy = f_prime.eval_cell(a, t);
      Value pf = std::holds_alternative<CWPoint>(fy)
                     ? p.eval(as_cw(fy))
                     : p.eval_cell(0, as_vec(fy));
      if (ztgt.dist(pf, F_prime.eval_cell(a, t, 1.0)) > kComposedTol)
        fail("help: p o f' != F'(.,1)");
    }
  }
  auto apply_p = [&p](const Value& v) -> Value {
    if (std::holds_alternative<CWPoint>(v)) return p.eval(as_cw(v));
    fail("help: p expects complex points");
  };

  CellwiseMap f(X, ytgt);
  std::map<int, CubeMap> gpieces;
  for (int a : X->base_cells()) {
    f.set_piece(a, f_prime.piece(a));
    gpieces[a] = F_prime.piece(a);
  }
  double epsFp = F_prime.time_tameness() > 0 ? F_prime.time_tameness() : 0.25;
  double running = epsFp;
  for (int d = 0; d <= X->dim(); ++d) {
    double level_out = running;
    auto lower = std::make_shared<const std::map<int, CubeMap>>(gpieces);
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      ComplexPtr Xc = X;
      CellwiseMap gc = g;
      int cid = id;

      // K'_lambda: extend (G^{n-1} o phi, g o Phi) over the cell x I.
      CubeMap Kprime;
      double kprime_tame;
      if (d == 0) {
        Value v = g.eval_cell(id, {});
        Kprime = CubeMap::from_callable(CubeDomain::full_cube(1),
                                        value_codomain(ztgt),
                                        [v](const Vec&) { return v; }, "help.K0");
        kprime_tame = 0.45;
      } else {
        double eps_cell = clamp_eps(std::min(attaching_eps(*X, c), running));
        LMachine L = LMachine::make(
            d, eps_cell,
            [Xc, lower, gc, cid](const Vec& y, const Vec&, double s) -> Value {
              bool boundary = false;
              for (double v : y)
                if (std::abs(v) <= kMembershipTol ||
                    std::abs(v - 1.0) <= kMembershipTol)
                  boundary = true;
              if (boundary) {
                CWPoint q = canonicalize(*Xc, CWPoint{cid, y});
                Vec x = q.coords;
                x.push_back(s);
                return lower->at(q.cell).eval(x);
              }
              if (s != 0.0) fail("help machine: interior query off the bottom");
              return gc.eval_cell(cid, y);
            });
        Kprime = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)),
            value_codomain(ztgt),
            [L](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              return L.eval(y, {}, x.back());
            },
            "help.Kprime");
        kprime_tame = L.time_tameness();
      }
      // g'_lambda = K'(.,1), then the oracle solves the lifting square.
      CubeMap gprime = CubeMap::from_callable(
          CubeDomain::full_cube(d), value_codomain(ztgt),
          [Kprime](const Vec& y) {
            Vec x = y;
            x.push_back(1.0);
            return Kprime.eval(x);
          },
          "help.gprime");
      OracleRequest req;
      req.kind = OracleRequest::Kind::Lift;
      req.cell = id;
      req.dim = d;
      req.base_map = gprime;
      if (d >= 1) {
        CellwiseMap fc = f;
        req.boundary_map = CubeMap::from_callable(
            CubeDomain::boundary(d), value_codomain(ytgt),
            [Xc, fc, cid](const Vec& y) {
              CWPoint q = canonicalize(*Xc, CWPoint{cid, y});
              return fc.eval_cell(q.cell, q.coords);
            },
            "help.boundary");
      }
      auto ans = lift_oracle(req);
      if (!ans)
        fail("help: lift oracle unavailable for cell " + c.name);
      // Contract checks: boundary restriction, endpoints, relativity.
      SampleGrid gr = sample(CubeDomain::full_cube(d), 7);
      for (const Vec& t : gr.points) {
        Vec x0 = t;
        x0.push_back(0.0);
        if (ztgt.dist(ans->homotopy.eval(x0), gprime.eval(t)) > kComposedTol)
          fail("help: oracle K'' start mismatch (cell " + c.name + "); oracle blamed");
        x0.back() = 1.0;
        if (ztgt.dist(ans->homotopy.eval(x0), apply_p(ans->lift.eval(t))) > kComposedTol)
          fail("help: oracle K'' end is not p o f (cell " + c.name + "); oracle blamed");
      }
      if (d >= 1) {
        SampleGrid bd = sample(CubeDomain::boundary(d), 5);
        for (const Vec& t : bd.points) {
          if (ytgt.dist(ans->lift.eval(t), req.boundary_map.eval(t)) > kComposedTol)
            fail("help: oracle lift boundary mismatch (cell " + c.name + "); oracle blamed");
          Value pin = ans->homotopy.eval([&] {
            Vec x = t;
            x.push_back(0.0);
            return x;
          }());
          for (double s : {0.3, 0.7, 1.0}) {
            Vec x = t;
            x.push_back(s);
            if (ztgt.dist(ans->homotopy.eval(x), pin) > kComposedTol)
              fail("help: oracle K'' not relative to the boundary (cell " + c.name +
                   "); oracle blamed");
          }
        }
      }
      double eps_glue = clamp_eps(std::min(kprime_tame, ans->time_tameness));
      double s_star = 1.0 - eps_glue / 2.0;  // = (2 - eps)/2
      CubeMap Kpp = ans->homotopy;
      f.set_piece(id, ans->lift);
      gpieces[id] = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(d)),
          value_codomain(ztgt),
          [Kprime, Kpp, s_star](const Vec& x) {
            double s = x.back();
            Vec y(x.begin(), x.end() - 1);
            if (s <= s_star) {
              Vec q = y;
              q.push_back(s);
              return Kprime.eval(q);
            }
            Vec q = y;
            q.push_back((s - s_star) / (1.0 - s_star));
            return Kpp.eval(q);
          },
          "help.G");
      level_out = std::min({level_out, kprime_tame, ans->time_tameness * (1.0 - s_star)});
    }
    running = level_out;
  }
  HelpResult out;
  out.f = f;
  out.G = CellwiseHomotopy(X, ztgt);
  for (const auto& [id, piece] : gpieces) out.G.set_piece(id, piece);
  out.G.set_time_tameness(running);
  return out;
}

// ---- connectivity extension ----

CellwiseMap extend_into_connected(const ComplexPtr& X, const CellwiseMap& f,
                                  const NullHomotopyOracle& oracle) {
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  CellwiseMap g(X, f.target());
  for (int a : X->base_cells()) g.set_piece(a, f.piece(a));
  for (int d = 0; d <= X->dim(); ++d)
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      OracleRequest req;
      req.kind = OracleRequest::Kind::NullHomotopy;
      req.cell = id;
      req.dim = d;
      ComplexPtr Xc = X;
      CellwiseMap gc = g;
      int cid = id;
      if (d >= 1)
        req.boundary_map = CubeMap::from_callable(
            CubeDomain::boundary(d), value_codomain(f.target()),
            [Xc, gc, cid](const Vec& y) {
              CWPoint q = canonicalize(*Xc, CWPoint{cid, y});
              return gc.eval_cell(q.cell, q.coords);
            },
            "extend.boundary");
      auto ans = oracle(req);
      if (!ans) fail("extend_into_connected: oracle unavailable for cell " + c.name);
      if (d == 0) {
        // the oracle's lift provides a point of Y
        CubeMap pt = ans->lift;
        g.set_piece(id, pt);
        continue;
      }
      check_oracle_homotopy(f.target(), ans->homotopy, req.boundary_map, id);
      // Constant-end contract.
      {
        SampleGrid gr = sample(CubeDomain::boundary(d), 5);
        Value v0;
        bool first = true;
        for (const Vec& t : gr.points) {
          Vec x = t;
          x.push_back(1.0);
          Value v = ans->homotopy.eval(x);
          if (first) {
            v0 = v;
            first = false;
          } else if (f.target().dist(v, v0) > kComposedTol) {
            fail("extend_into_connected: oracle end is not constant; oracle blamed");
          }
        }
      }
      double eps_o = clamp_eps(ans->time_tameness);
      // J-shaped data in (y, s): sides from the oracle homotopy, constant top.
      CubeMap H = ans->homotopy;
      Vec one(size_t(d), 0.0);
      one[0] = 0.0;
      Vec top_probe(size_t(d), 0.0);
      top_probe.push_back(1.0);
      Value y0 = H.eval(top_probe);
      CubeMap jdata = CubeMap::from_callable(
          CubeDomain::horn_j(d + 1), value_codomain(f.target()),
          [H, y0](const Vec& x) -> Value {
            if (std::abs(x.back() - 1.0) <= kMembershipTol) return y0;
            return H.eval(x);
          },
          "extend.jdata");
      jdata = jdata.with_certificate(
          {eps_o, TamenessCertificate::Status::ByConstruction, 0, -1});
      CubeMap filled = extend_tame_from_J(jdata, eps_o / 2.0);
      g.set_piece(id, CubeMap::from_callable(
                          CubeDomain::full_cube(d), value_codomain(f.target()),
                          [filled](const Vec& y) {
                            Vec x = y;
                            x.push_back(0.0);
                            return filled.eval(x);
                          },
                          "extend.slice"));
    }
  return g;
}


// ---- compression into a subspace ----

namespace {

// Embeddings of the cube-pair cells into I^d (natural coordinates).
std::vector<std::pair<std::string, std::function<Vec(const Vec&)>>>
cube_pair_embeddings(int d) {
  using F = std::function<Vec(const Vec&)>;
  if (d == 0) return {{"c", F([](const Vec&) { return Vec{}; })}};
  if (d == 1)
    return {{"v0", F([](const Vec&) { return Vec{0.0}; })},
            {"v1", F([](const Vec&) { return Vec{1.0}; })},
            {"e", F([](const Vec& y) { return y; })}};
  if (d == 2)
    return {{"v00", F([](const Vec&) { return Vec{0.0, 0.0}; })},
            {"v10", F([](const Vec&) { return Vec{1.0, 0.0}; })},
            {"v01", F([](const Vec&) { return Vec{0.0, 1.0}; })},
            {"v11", F([](const Vec&) { return Vec{1.0, 1.0}; })},
            {"eb", F([](const Vec& y) { return Vec{y[0], 0.0}; })},
            {"er", F([](const Vec& y) { return Vec{1.0, y[0]}; })},
            {"et", F([](const Vec& y) { return Vec{y[0], 1.0}; })},
            {"el", F([](const Vec& y) { return Vec{0.0, y[0]}; })},
            {"f", F([](const Vec& y) { return y; })}};
  fail("cube_pair_embeddings: only d <= 2 supported at desk scale");
}

// Converts a tame CubeMap on I^d (d <= 2) into a cellwise map on the
// gathered cube pair. The compatibility law holds because the pair's tame
// attaching moves coordinates only inside the map's own tameness bands.
CellwiseMap cube_map_as_cellwise(const ComplexPtr& pair, const CubeMap& f,
                                 const MapTarget& tgt, int d) {
  CellwiseMap out(pair, tgt);
  Codomain cod = tgt.kind == MapTarget::Kind::Euclidean
                     ? Codomain::euclidean(tgt.euclid_dim)
                     : Codomain::complex();
  for (auto& [name, embed] : cube_pair_embeddings(d)) {
    int cell = pair->find_cell(name);
    CubeMap fc = f;
    auto em = embed;
    out.set_piece(cell,
                  CubeMap::from_callable(CubeDomain::full_cube(pair->cell(cell).dim),
                                         cod,
                                         [fc, em](const Vec& y) {
                                           return fc.eval(em(y));
                                         },
                                         "cubepair.piece"));
  }
  return out;
}

CellwiseHomotopy cube_homotopy_as_cellwise(const ComplexPtr& pair,
                                           const CubeMap& F,
                                           const MapTarget& tgt, int d,
                                           double time_tame) {
  CellwiseHomotopy out(pair, tgt);
  Codomain cod = tgt.kind == MapTarget::Kind::Euclidean
                     ? Codomain::euclidean(tgt.euclid_dim)
                     : Codomain::complex();
  for (auto& [name, embed] : cube_pair_embeddings(d)) {
    int cell = pair->find_cell(name);
    CubeMap Fc = F;
    auto em = embed;
    out.set_piece(cell,
                  CubeMap::from_callable(
                      CubeDomain::product_with_interval(
                          CubeDomain::full_cube(pair->cell(cell).dim)),
                      cod,
                      [Fc, em](const Vec& x) {
                        Vec y(x.begin(), x.end() - 1);
                        Vec q = em(y);
                        q.push_back(x.back());
                        return Fc.eval(q);
                      },
                      "cubepair.homotopy"));
  }
  out.set_time_tameness(time_tame);
  return out;
}

}  // namespace

CompressResult compress_into_subspace(const ComplexPtr& X, const CellwiseMap& f,
                                      const NullHomotopyOracle& oracle) {
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  const auto& inC = f.target().subspace;
  if (!inC) fail("compress_into_subspace: target carries no subspace predicate C");
  Codomain cod = value_codomain(f.target());
  // f already inside C: nothing to compress, return the stationary homotopy.
  {
    bool inside = true;
    for (const auto& c : X->cells()) {
      SampleGrid g = sample(CubeDomain::full_cube(c.dim), 5);
      for (const Vec& t : g.points)
        if (!inC(f.target().canonical(f.eval_cell(c.id, t)))) inside = false;
    }
    if (inside) {
      CompressResult out;
      out.g = f;
      out.H = CellwiseHomotopy(X, f.target());
      for (const auto& c : X->cells()) {
        CubeMap piece = f.piece(c.id);
        out.H.set_piece(c.id, CubeMap::from_callable(
                                  CubeDomain::product_with_interval(
                                      CubeDomain::full_cube(c.dim)),
                                  cod,
                                  [piece](const Vec& x) {
                                    Vec y(x.begin(), x.end() - 1);
                                    return piece.eval(y);
                                  },
                                  "compress.identity"));
      }
      out.H.set_time_tameness(0.45);
      return out;
    }
  }
  std::map<int, CubeMap> hpieces;
  CellwiseMap g(X, f.target());
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    CubeMap piece = f.piece(a);
    hpieces[a] = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)), cod,
        [piece](const Vec& x) {
          Vec y(x.begin(), x.end() - 1);
          return piece.eval(y);
        },
        "compress.stationary");
    g.set_piece(a, piece);
  }
  double head = 0.45, tail = 0.45;
  for (int d = 0; d <= X->dim(); ++d) {
    double level_head = head, level_tail = tail;
    auto lower = std::make_shared<const std::map<int, CubeMap>>(hpieces);
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      ComplexPtr Xc = X;
      int cid = id;
      CubeMap stage1;      // I^d x I -> Z
      CubeMap fmid;        // I^d -> Z, the stage-1 end slice
      double stage1_head, stage1_tail, slice_tame;
      if (d == 0) {
        Value v = f.eval_cell(id, {});
        stage1 = CubeMap::from_callable(CubeDomain::full_cube(1), cod,
                                        [v](const Vec&) { return v; },
                                        "compress.point");
        fmid = CubeMap::from_callable(CubeDomain::full_cube(0), cod,
                                      [v](const Vec&) { return v; },
                                      "compress.point0");
        stage1_head = stage1_tail = 0.45;
        slice_tame = 0.45;
      } else {
        double eps_cell =
            clamp_eps(std::min({attaching_eps(*X, c), head, tail}));
        CellwiseMap fc = f;
        LMachine L = LMachine::make(
            d, eps_cell,
            [Xc, lower, fc, cid](const Vec& y, const Vec&, double s) -> Value {
              bool boundary = false;
              for (double v : y)
                if (std::abs(v) <= kMembershipTol ||
                    std::abs(v - 1.0) <= kMembershipTol)
                  boundary = true;
              if (boundary) {
                CWPoint q = canonicalize(*Xc, CWPoint{cid, y});
                Vec x = q.coords;
                x.push_back(s);
                return lower->at(q.cell).eval(x);
              }
              if (s != 0.0) fail("compress machine: interior query off the bottom");
              return fc.eval_cell(cid, y);
            });
        stage1 = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
            [L](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              return L.eval(y, {}, x.back());
            },
            "compress.stage1");
        CubeMap s1 = stage1;
        fmid = CubeMap::from_callable(CubeDomain::full_cube(d), cod,
                                      [s1](const Vec& y) {
                                        Vec x = y;
                                        x.push_back(1.0);
                                        return s1.eval(x);
                                      },
                                      "compress.fmid");
        stage1_head = L.time_tameness();
        stage1_tail = L.time_tameness();
        slice_tame = L.slice_tameness();
      }
      // Oracle: pairs homotopy from fmid into C.
      OracleRequest req;
      req.kind = OracleRequest::Kind::Compression;
      req.cell = id;
      req.dim = d;
      req.base_map = fmid;
      auto ans = oracle(req);
      if (!ans)
        fail("compress_into_subspace: oracle unavailable for cell " + c.name);
      {
        SampleGrid gr = sample(CubeDomain::full_cube(d), 7);
        for (const Vec& t : gr.points) {
          Vec x0 = t;
          x0.push_back(0.0);
          if (f.target().dist(ans->homotopy.eval(x0), fmid.eval(t)) > kComposedTol)
            fail("compress: oracle start mismatch (cell " + c.name + "); oracle blamed");
          x0.back() = 1.0;
          if (!inC(f.target().canonical(ans->homotopy.eval(x0))))
            fail("compress: oracle end leaves C (cell " + c.name + "); oracle blamed");
        }
        if (d >= 1) {
          SampleGrid bd = sample(CubeDomain::boundary(d), 5);
          for (const Vec& t : bd.points)
            for (double s : {0.3, 0.7}) {
              Vec x = t;
              x.push_back(s);
              if (!inC(f.target().canonical(ans->homotopy.eval(x))))
                fail("compress: oracle pairs condition fails (cell " + c.name +
                     "); oracle blamed");
            }
        }
      }
      CubeMap corrected;  // I^d x I rel dI^d homotopy from fmid into C
      double corr_tail;
      if (d == 0) {
        corrected = ans->homotopy;
        corr_tail = clamp_eps(ans->time_tameness);
      } else {
        // Cell-level HEP2 on the gathered cube pair.
        double eps_pair = clamp_eps(
            std::min({slice_tame, ans->time_tameness, stage1_tail}));
        ComplexPtr pair = cube_pair(d, half_params(eps_pair));
        MapTarget tgt = f.target();
        CellwiseMap fp = cube_map_as_cellwise(pair, fmid, tgt, d);
        CellwiseHomotopy Fp = cube_homotopy_as_cellwise(
            pair, ans->homotopy, tgt, d, clamp_eps(ans->time_tameness));
        CellwiseHomotopy rel = hep_rel(pair, fp, Fp);
        ComplexPtr pairc = pair;
        auto relh = std::make_shared<CellwiseHomotopy>(rel);
        int top = pair->find_cell(d == 1 ? "e" : "f");
        corrected = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
            [pairc, relh, top](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              return relh->eval(CWPoint{top, y}, x.back());
            },
            "compress.rel");
        corr_tail = 1.0 / 3.0;  // three-segment hold
      }
      // Two-piece glue at s* = 1 - eps_glue/2 = (2 - eps)/2.
      double eps_glue = std::min(stage1_tail, 0.45);
      double s_star = 1.0 - eps_glue / 2.0;
      CubeMap st1 = stage1, corr = corrected;
      hpieces[id] = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
          [st1, corr, s_star](const Vec& x) {
            double s = x.back();
            Vec y(x.begin(), x.end() - 1);
            Vec q = y;
            if (s <= s_star) {
              q.push_back(s);
              return st1.eval(q);
            }
            q.push_back((s - s_star) / (1.0 - s_star));
            return corr.eval(q);
          },
          "compress.glued");
      CubeMap cc = corrected;
      g.set_piece(id, CubeMap::from_callable(CubeDomain::full_cube(d), cod,
                                             [cc](const Vec& y) {
                                               Vec x = y;
                                               x.push_back(1.0);
                                               return cc.eval(x);
                                             },
                                             "compress.g"));
      level_head = std::min(level_head, stage1_head);
      level_tail = std::min(level_tail, corr_tail * (1.0 - s_star));
    }
    head = level_head;
    tail = level_tail;
  }
  CompressResult out;
  out.g = g;
  out.H = CellwiseHomotopy(X, f.target());
  for (const auto& [id, piece] : hpieces) out.H.set_piece(id, piece);
  out.H.set_time_tameness(std::min(head, tail));
  return out;
}

// ---- subdivision cover ----

SubdivisionCover subdivide_until_cover(const CubeMap& f,
                                       const std::vector<PointPredicate>& preds,
                                       int k_max, int grid) {
  int m = f.domain().dim();
  for (int k = 1; k <= k_max; ++k) {
    std::vector<SubcubeChart> charts = subcube_lattice(m, k);
    std::vector<int> assignment(charts.size(), -1);
    bool all_ok = true;
    for (size_t ci = 0; ci < charts.size() && all_ok; ++ci) {
      // Candidate predicates must hold on the sample grid and on a 2x finer
      // safety grid (the heuristic margin for the compactness argument).
      int chosen = -1;
      for (size_t pi = 0; pi < preds.size() && chosen < 0; ++pi) {
        bool ok = true;
        for (int res : {grid, 2 * grid - 1}) {
          SampleGrid g = sample(CubeDomain::full_cube(m), res);
          for (const Vec& local : g.points) {
            Vec global = charts[ci].to_global(local);
            if (!preds[pi](f.eval(global))) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) chosen = int(pi);
      }
      if (chosen < 0)
        all_ok = false;
      else
        assignment[ci] = chosen;
    }
    if (all_ok) return {k, assignment};
  }
  if (std::getenv("TAMECELL_DEBUG") && m == 1) {
    int prev = -9;
    for (int i = 0; i <= 800; ++i) {
      Vec t{double(i) / 800};
      int mask = 0;
      for (size_t pi = 0; pi < preds.size(); ++pi)
        if (preds[pi](f.eval(t))) mask |= 1 << pi;
      if (mask != prev) {
        fprintf(stderr, "[subdiv] t=%.5f mask=%d\n", t[0], mask);
        prev = mask;
      }
    }
  }
  fail("subdivide_until_cover: k_max exceeded");
}

// ---- radial push oracle ----

NullHomotopyOracle radial_push_oracle(const ComplexPtr& Y,
                                      const std::map<int, double>& sigma,
                                      int attempts) {
  ComplexPtr Yc = Y;
  auto sig = std::make_shared<std::map<int, double>>(sigma);
  return [Yc, sig, attempts](const OracleRequest& req) -> std::optional<OracleAnswer> {
    if (req.kind != OracleRequest::Kind::Compression) return std::nullopt;
    const CubeMap& q = req.base_map;
    int d = req.dim;
    // All base-map values must sit in one open top cell.
    SampleGrid g = sample(CubeDomain::full_cube(d), 9);
    int cellid = -1;
    std::vector<Vec> image;
    for (const Vec& t : g.points) {
      CWPoint p = canonicalize(*Yc, as_cw(q.eval(t)));
      if (cellid < 0) cellid = p.cell;
      if (p.cell != cellid) return std::nullopt;  // not confined to one cell
      image.push_back(p.coords);
    }
    int m = Yc->cell(cellid).dim;
    if (m == 0) return std::nullopt;
    double s = sig->count(cellid) ? sig->at(cellid) : 0.25;
    double rho = 0.5 - s;                      // chamber half-width
    double R = std::sqrt(double(m)) * (rho + 0.08);
    if (R >= 0.5 - 1e-6) return std::nullopt;  // sphere does not fit
    // Grid search for an interior center away from the image.
    Vec best;
    double best_gap = -1;
    int side = std::max(3, int(std::round(std::pow(double(attempts), 1.0 / m))));
    std::vector<int> idx(size_t(m), 0);
    for (;;) {
      Vec c(size_t(m), 0.0);
      for (int j = 0; j < m; ++j)
        c[size_t(j)] = 0.5 + (double(idx[size_t(j)]) / (side - 1) - 0.5) * 1.2 * rho;
      double gap = 1e9;
      for (const Vec& im : image) gap = std::min(gap, sup_dist(c, im));
      if (gap > best_gap) {
        best_gap = gap;
        best = c;
      }
      int j = 0;
      for (; j < m; ++j) {
        if (idx[size_t(j)] + 1 < side) {
          ++idx[size_t(j)];
          break;
        }
        idx[size_t(j)] = 0;
      }
      if (j == m) break;
    }
    if (best_gap < 0.02) return std::nullopt;  // image too dense; search failed
    Vec center = best;
    SmoothFn1D gate = smash_1d(SmashParams(0.2, 0.4));
    CubeMap qc = q;
    int cell = cellid;
    auto push = [Yc, qc, center, R, gate, cell, m](const Vec& x) -> Value {
      Vec t(x.begin(), x.end() - 1);
      double u = gate(x.back());
      CWPoint p = canonicalize(*Yc, as_cw(qc.eval(t)));
      if (p.cell != cell) fail("radial push: image left the top cell");
      // Exit scale of the ray center -> p onto the sphere |y - mid| = R.
      double a = 0, b = 0, c0 = -R * R;
      for (int j = 0; j < m; ++j) {
        double dir = p.coords[size_t(j)] - center[size_t(j)];
        double off = center[size_t(j)] - 0.5;
        a += dir * dir;
        b += 2.0 * off * dir;
        c0 += off * off;
      }
      if (a < 1e-16) fail("radial push: hit the chosen center");
      double disc = b * b - 4.0 * a * c0;
      double lam = (-b + std::sqrt(disc)) / (2.0 * a);
      Vec y(size_t(m), 0.0);
      for (int j = 0; j < m; ++j) {
        double dir = p.coords[size_t(j)] - center[size_t(j)];
        y[size_t(j)] = center[size_t(j)] + (1.0 + u * (lam - 1.0)) * dir;
      }
      return CWPoint{cell, y};
    };
    OracleAnswer ans;
    ans.homotopy = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::full_cube(d)),
        Codomain::complex(), push, "radial_push");
    ans.time_tameness = 0.2;
    return ans;
  };
}

// ---- cellular approximation ----

namespace {

int max_canonical_dim(const CWComplex& Y, const CubeMap& g, int d) {
  int m = 0;
  SampleGrid gr = sample(CubeDomain::full_cube(d), 9);
  for (const Vec& t : gr.points) {
    CWPoint p = canonicalize(Y, as_cw(g.eval(t)));
    m = std::max(m, Y.cell(p.cell).dim);
  }
  return m;
}

}  // namespace

CellularApproxResult cellular_approximation(const CellwiseMap& f,
                                            const NullHomotopyOracle* oracle) {
  const ComplexPtr& X = f.source();
  if (f.target().kind != MapTarget::Kind::Complex)
    fail("cellular_approximation: target must be a complex");
  const ComplexPtr& Y = f.target().complex;
  std::set<int> base(X->base_cells().begin(), X->base_cells().end());
  Codomain cod = Codomain::complex();
  MapTarget tgt = f.target();

  std::map<int, CubeMap> hpieces;
  CellwiseMap g(X, tgt);
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    CubeMap piece = f.piece(a);
    // A cells must already be cellular.
    SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 7);
    for (const Vec& t : gr.points) {
      CWPoint p = canonicalize(*Y, as_cw(piece.eval(t)));
      if (Y->cell(p.cell).dim > c.dim)
        fail("cellular_approximation: f|A is not cellular");
    }
    hpieces[a] = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)), cod,
        [piece](const Vec& x) {
          Vec y(x.begin(), x.end() - 1);
          return piece.eval(y);
        },
        "cellular.stationary");
    g.set_piece(a, piece);
  }

  double head = 0.45, tail = 0.45;
  std::set<int> changed;
  for (int d = 0; d <= X->dim(); ++d) {
    double level_head = head, level_tail = tail;
    auto lower = std::make_shared<const std::map<int, CubeMap>>(hpieces);
    for (int id : X->cells_of_dim(d)) {
      if (base.count(id)) continue;
      const Cell& c = X->cell(id);
      ComplexPtr Xc = X;
      ComplexPtr Yc = Y;
      int cid = id;

      // Stage 1: absorb the lower corrections (HEP-style machine). Cells
      // whose boundary was untouched keep their original piece.
      bool lower_changed = false;
      if (d >= 1) {
        SampleGrid bg = sample(CubeDomain::boundary(d), 5);
        for (const Vec& t : bg.points) {
          CWPoint q = canonicalize(*X, CWPoint{id, t});
          if (changed.count(q.cell)) lower_changed = true;
        }
      }
      CubeMap stage1;
      double stage1_tail;
      if (d == 0 || !lower_changed) {
        CubeMap piece = f.piece(id);
        stage1 = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
            [piece](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              return piece.eval(y);
            },
            "cellular.unchanged");
        stage1_tail = 0.45;
      } else {
        double eps_cell = clamp_eps(std::min({attaching_eps(*X, c), head, tail}));
        CellwiseMap fc = f;
        LMachine L = LMachine::make(
            d, eps_cell,
            [Xc, lower, fc, cid](const Vec& y, const Vec&, double s) -> Value {
              bool boundary = false;
              for (double v : y)
                if (std::abs(v) <= kMembershipTol ||
                    std::abs(v - 1.0) <= kMembershipTol)
                  boundary = true;
              if (boundary) {
                CWPoint q = canonicalize(*Xc, CWPoint{cid, y});
                Vec x = q.coords;
                x.push_back(s);
                return lower->at(q.cell).eval(x);
              }
              if (s != 0.0) fail("cellular machine: interior query off the bottom");
              return fc.eval_cell(cid, y);
            });
        stage1 = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
            [L](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              return L.eval(y, {}, x.back());
            },
            "cellular.stage1");
        stage1_tail = L.time_tameness();
      }
      CubeMap s1 = stage1;
      CubeMap cur = CubeMap::from_callable(CubeDomain::full_cube(d), cod,
                                           [s1](const Vec& y) {
                                             Vec x = y;
                                             x.push_back(1.0);
                                             return s1.eval(x);
                                           },
                                           "cellular.cur");
      double cur_tame = d == 0 ? 0.45
                               : clamp_eps(std::min({attaching_eps(*X, c), head, tail})) / 4.0;

      // Correction stages: push the image down one skeleton level at a time.
      std::vector<CubeMap> stages;          // homotopies I^d x I, start = cur
      std::vector<double> stage_tails;
      int guard = 0;
      for (;;) {
        int m = max_canonical_dim(*Y, cur, d);
        if (m <= d || m == 0) break;
        if (++guard > 8) fail("cellular_approximation: descent did not terminate");
        CollarData collar = collar_retraction(Y, m);
        // Predicates: the collar B^m, and the open top cells of level m.
        PointPredicate in_B = [collar, Yc](const Value& v) {
          return collar.in_B(as_cw(v));
        };
        PointPredicate in_top = [Yc, m](const Value& v) {
          CWPoint p = canonicalize(*Yc, as_cw(v));
          return Yc->cell(p.cell).dim == m;
        };
        SubdivisionCover cover =
            d == 0 ? SubdivisionCover{1, {1}}
                   : subdivide_until_cover(cur, {in_B, in_top}, 512, 3);
        // Locally tame reparametrization; straight-line homotopy in the
        // domain cube, trivial for vertices.
        SmashParams sp(cur_tame > 0 ? std::min(cur_tame / 2, 0.2) : 0.1,
                       cur_tame > 0 ? std::min(cur_tame, 0.4) : 0.2);
        CubeMap base_map = cur;
        CubeMap tamed = base_map;
        if (d >= 1) {
          CubeMap tt = locally_tame_subdivision(d, cover.k, sp);
          SmoothFn1D gate = smash_1d(SmashParams(0.2, 0.4));
          CubeMap reparam = CubeMap::from_callable(
              CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
              [base_map, tt, gate](const Vec& x) {
                double u = gate(x.back());
                Vec y(x.begin(), x.end() - 1);
                Vec z = tt.eval_vec(y);
                for (size_t j = 0; j < y.size(); ++j)
                  z[j] = (1.0 - u) * y[j] + u * z[j];
                return base_map.eval(z);
              },
              "cellular.reparam");
          stages.push_back(reparam);
          stage_tails.push_back(0.2);
          tamed = CubeMap::from_callable(
              CubeDomain::full_cube(d), cod,
              [base_map, tt](const Vec& y) { return base_map.eval(tt.eval_vec(y)); },
              "cellular.tamed");
        }

        // Compress the top-cell subcubes into the collar, relative to the
        // collar subcubes, on the subdivision pair complex.
        NullHomotopyOracle push =
            oracle ? *oracle : radial_push_oracle(Y, collar.sigma);
        CubeMap compressed;
        double comp_tail;
        if (d == 0) {
          OracleRequest req;
          req.kind = OracleRequest::Kind::Compression;
          req.cell = id;
          req.dim = 0;
          req.base_map = tamed;
          auto ans = push(req);
          if (!ans) fail("cellular_approximation: push oracle failed on cell " + c.name);
          compressed = ans->homotopy;
          comp_tail = clamp_eps(ans->time_tameness);
        } else {
          // The fixed/moving subcomplexes: maximal runs of subcubes
          // with a common predicate. Runs keep the pair complex small no
          // matter how fine the subdivision is.
          if (d > 1)
            fail("cellular_approximation: source cells above dimension 1 are out of desk scale");
          int k = cover.k;
          struct Run {
            int lo, hi;  // subcube index range [lo, hi)
            int pred;
          };
          std::vector<Run> runs;
          for (int i = 0; i < k; ++i) {
            if (!runs.empty() && runs.back().pred == cover.assignment[size_t(i)])
              runs.back().hi = i + 1;
            else
              runs.push_back({i, i + 1, cover.assignment[size_t(i)]});
          }
          CWComplexBuilder pb;
          std::vector<int> verts;  // run boundary vertices
          for (size_t r = 0; r <= runs.size(); ++r)
            verts.push_back(pb.add_vertex("s" + std::to_string(r)));
          std::vector<int> run_cells;
          for (size_t r = 0; r < runs.size(); ++r) {
            int v0 = verts[r], v1 = verts[r + 1];
            run_cells.push_back(pb.add_cell(
                "run" + std::to_string(r), 1,
                CubeMap::from_callable(CubeDomain::boundary(1), Codomain::complex(),
                                       [v0, v1](const Vec& t) -> Value {
                                         return CWPoint{t[0] < 0.5 ? v0 : v1, {}};
                                       },
                                       "attach.endpoints"),
                0.45));
          }
          for (size_t r = 0; r < runs.size(); ++r)
            if (runs[r].pred == 0) pb.mark_base(run_cells[r]);
          CubeMap tm = tamed;
          int kk = k;
          auto run_bounds = std::make_shared<std::vector<Run>>(runs);
          for (size_t r = 0; r <= runs.size(); ++r) {
            double at = r == runs.size() ? 1.0 : double((*run_bounds)[r].lo) / kk;
            if (collar.in_B(canonicalize(*Yc, as_cw(tm.eval({at})))))
              pb.mark_base(verts[r]);
          }
          ComplexPtr sub = pb.build();
          MapTarget ptgt = tgt;
          CollarData col = collar;
          ptgt.subspace = [col](const Value& v) { return col.in_B(as_cw(v)); };
          CellwiseMap fsub(sub, ptgt);
          for (size_t r = 0; r <= runs.size(); ++r) {
            double at = r == runs.size() ? 1.0 : double((*run_bounds)[r].lo) / kk;
            fsub.set_piece(verts[r],
                           CubeMap::from_callable(CubeDomain::full_cube(0), cod,
                                                  [tm, at](const Vec&) {
                                                    return tm.eval({at});
                                                  },
                                                  "sub.v"));
          }
          for (size_t r = 0; r < runs.size(); ++r) {
            double lo = double(runs[r].lo) / kk, hi = double(runs[r].hi) / kk;
            fsub.set_piece(run_cells[r],
                           CubeMap::from_callable(CubeDomain::full_cube(1), cod,
                                                  [tm, lo, hi](const Vec& y) {
                                                    return tm.eval({lo + y[0] * (hi - lo)});
                                                  },
                                                  "sub.run"));
          }
          CompressResult comp = compress_into_subspace(sub, fsub, push);
          auto ch = std::make_shared<CellwiseHomotopy>(comp.H);
          std::vector<int> rc = run_cells;
          compressed = CubeMap::from_callable(
              CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
              [ch, run_bounds, rc, kk](const Vec& x) {
                double t = x[0], s = x.back();
                size_t r = 0;
                while (r + 1 < run_bounds->size() &&
                       t * kk >= double((*run_bounds)[r].hi))
                  ++r;
                double lo = double((*run_bounds)[r].lo) / kk;
                double hi = double((*run_bounds)[r].hi) / kk;
                double local = std::clamp((t - lo) / (hi - lo), 0.0, 1.0);
                return ch->eval_cell(rc[r], {local}, s);
              },
              "cellular.compress");
          comp_tail = comp.H.time_tameness();
        }
        stages.push_back(compressed);
        stage_tails.push_back(comp_tail);
        CubeMap cm = compressed;
        CubeMap after = CubeMap::from_callable(CubeDomain::full_cube(d), cod,
                                               [cm](const Vec& y) {
                                                 Vec x = y;
                                                 x.push_back(1.0);
                                                 return cm.eval(x);
                                               },
                                               "cellular.after");
        // Collar deformation down to the (m-1)-skeleton.
        auto colh = std::make_shared<CellwiseHomotopy>(collar.deformation);
        CubeMap af = after;
        ComplexPtr Yloc = Y;
        CubeMap down = CubeMap::from_callable(
            CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
            [colh, af, Yloc](const Vec& x) {
              Vec y(x.begin(), x.end() - 1);
              CWPoint p = canonicalize(*Yloc, as_cw(af.eval(y)));
              return colh->eval_cell(p.cell, p.coords, x.back());
            },
            "cellular.collar");
        stages.push_back(down);
        stage_tails.push_back(0.25);
        CubeMap dn = down;
        cur = CubeMap::from_callable(CubeDomain::full_cube(d), cod,
                                     [dn](const Vec& y) {
                                       Vec x = y;
                                       x.push_back(1.0);
                                       return dn.eval(x);
                                     },
                                     "cellular.cur");
        cur_tame = std::min(cur_tame, sp.sigma);
      }

      // Assemble: stage-1 on [0, s*], the corrections compressed into the
      // tail, each segment entered through a tame ramp. Vertices have no
      // lower constraints, so give their corrections a wide window.
      double eps_glue = std::min(stage1_tail, 0.45);
      double s_star = stages.empty() ? 1.1 : (d == 0 ? 0.5 : 1.0 - eps_glue / 2.0);
      auto stg = std::make_shared<std::vector<CubeMap>>(stages);
      SmoothFn1D ramp_seg = smash_1d(SmashParams(0.2, 0.4));
      CubeMap st1 = stage1;
      hpieces[id] = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(d)), cod,
          [st1, stg, s_star, ramp_seg](const Vec& x) {
                              double s = x.back();
                              Vec y(x.begin(), x.end() - 1);
                              if (s <= s_star || stg->empty()) {
                                Vec q = y;
                                q.push_back(std::min(s, 1.0));
                                return st1.eval(q);
                              }
                              double local = (s - s_star) / (1.0 - s_star);
                              double scaled = local * double(stg->size());
                              size_t idx = std::min(size_t(scaled), stg->size() - 1);
                              double within = scaled - double(idx);
                              Vec q = y;
                              q.push_back(ramp_seg(within));
                              return (*stg)[idx].eval(q);
                            },
                            "cellular.total");
      g.set_piece(id, cur);
      if (lower_changed || !stages.empty()) changed.insert(id);
      level_head = std::min(level_head, d == 0 ? 0.45 : stage1_tail);
      double last_tail = stages.empty() ? stage1_tail
                                        : stage_tails.back() * (1.0 - s_star) /
                                              double(stages.size());
      level_tail = std::min(level_tail, last_tail);
    }
    head = level_head;
    tail = level_tail;
  }
  CellularApproxResult out;
  out.g = g;
  out.H = CellwiseHomotopy(X, tgt);
  for (const auto& [id, piece] : hpieces) out.H.set_piece(id, piece);
  out.H.set_time_tameness(std::min(head, tail));
  return out;
}

}  // namespace tamecell
