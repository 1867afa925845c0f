#include "tamecell/suites.hpp"

#include <sstream>

namespace tamecell {
namespace fixtures {

CubeMap tame_trig_on_horn(int n, double eps, Rng& rng) {
  SmoothFn1D T = smash_1d(SmashParams(eps, std::min(0.5, 2 * eps)));
  std::vector<Expr> tamed;
  for (int j = 0; j < n; ++j) tamed.push_back(Expr::fn1d(T, Expr::var(j)));
  auto combo = [&](int terms) {
    Expr e = Expr::constant(rng.next() - 0.5);
    for (int k = 0; k < terms; ++k) {
      Expr phase = Expr::constant(2.0 * rng.next());
      Expr lin = Expr::constant(0.0);
      for (int j = 0; j < n; ++j)
        lin = lin + Expr::constant(1.0 + std::floor(3.0 * rng.next())) * tamed[size_t(j)];
      e = e + Expr::constant(0.5 + rng.next()) *
                  (k % 2 ? cos(lin + phase) : sin(lin + phase));
    }
    return e;
  };
  CubeMap f = CubeMap::from_components(CubeDomain::horn_j(n),
                                       {combo(2), combo(3)}, Codomain::euclidean(2));
  return f.with_certificate({eps, TamenessCertificate::Status::ByConstruction, 0, -1});
}

ComplexPtr interval_pair() {
  ComplexPtr I = interval();
  CWComplexBuilder b;
  int v0 = b.add_vertex("v0");
  int v1 = b.add_vertex("v1");
  b.add_cell("e", 1, I->cell(I->find_cell("e")).attaching, 0.45,
             I->cell(I->find_cell("e")).attach_recipe);
  b.mark_base(v0);
  b.mark_base(v1);
  return b.build();
}

ComplexPtr square_pair() { return cube_pair(2, SmashParams(0.35, 0.45)); }

ComplexPtr circle_pair() {
  ComplexPtr C = circle();
  CWComplexBuilder b;
  int star = b.add_vertex("*");
  b.add_cell("e", 1, C->cell(C->find_cell("e")).attaching, 0.45);
  b.mark_base(star);
  return b.build();
}

CellwiseMap plane_map(const ComplexPtr& X, double scale) {
  // Smooth map to the plane: each cell gets a trig expression of its
  // coordinates, shifted so that boundary compatibility holds by evaluating
  // through a common ambient immersion of the canonical point.
  CellwiseMap f(X, MapTarget::euclidean(2));
  ComplexPtr Xc = X;
  // One global function on canonical points keeps the pieces compatible.
  auto ambient = [Xc, scale](const CWPoint& p) -> Vec {
    // embed by cell id and coordinates; tame attachings make this smooth
    // enough for contract tests (values, not derivatives, are checked).
    double acc0 = 0.3 * p.cell, acc1 = 0.1 * p.cell;
    for (size_t i = 0; i < p.coords.size(); ++i) {
      acc0 += std::sin(1.3 * (i + 1) * p.coords[i] + 0.2 * p.cell);
      acc1 += std::cos(0.7 * (i + 1) * p.coords[i]);
    }
    return {scale * acc0, scale * acc1};
  };
  for (const auto& c : X->cells()) {
    int id = c.id;
    f.set_piece(id, CubeMap::from_callable(
                        CubeDomain::full_cube(c.dim), Codomain::euclidean(2),
                        [Xc, ambient, id](const Vec& y) -> Value {
                          return ambient(canonicalize(*Xc, CWPoint{id, y}));
                        },
                        "fixture.plane"));
  }
  return f;
}

CellwiseHomotopy base_wiggle(const ComplexPtr& X, const CellwiseMap& f) {
  CellwiseHomotopy h(X, f.target());
  SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
  for (int a : X->base_cells()) {
    const Cell& c = X->cell(a);
    CubeMap piece = f.piece(a);
    SmoothFn1D r = ramp;
    h.set_piece(a, CubeMap::from_callable(
                       CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                       Codomain::euclidean(2),
                       [piece, r](const Vec& x) -> Value {
                         Vec y(x.begin(), x.end() - 1);
                         double u = r(x.back());
                         Vec v = as_vec(piece.eval(y));
                         v[0] += 0.4 * std::sin(2.1 * u);
                         v[1] += 0.4 * (std::cos(1.7 * u) - 1.0);
                         return v;
                       },
                       "fixture.wiggle"));
  }
  h.set_time_tameness(0.2);
  return h;
}

CellwiseMap circle_into_torus_top(const ComplexPtr& circle, const ComplexPtr& torus) {
  CellwiseMap f(circle, MapTarget::cw(torus));
  int face = torus->find_cell("f");
  int vtx = circle->find_cell("*") >= 0 ? circle->find_cell("*")
                                        : circle->cells_of_dim(0)[0];
  int edge = circle->cells_of_dim(1)[0];
  SmoothFn1D T = smash_1d(SmashParams(0.1, 0.2));
  f.set_piece(vtx, CubeMap::from_callable(
                       CubeDomain::full_cube(0), Codomain::complex(),
                       [face](const Vec&) -> Value {
                         return CWPoint{face, {0.67, 0.5}};
                       },
                       "fixture.vertex"));
  f.set_piece(edge, CubeMap::from_callable(
                        CubeDomain::full_cube(1), Codomain::complex(),
                        [face, T](const Vec& y) -> Value {
                          double a = 2.0 * 3.14159265358979323846 * T(y[0]);
                          return CWPoint{face, {0.5 + 0.17 * std::cos(a),
                                                0.5 + 0.17 * std::sin(a)}};
                        },
                        "fixture.loop"));
  return f;
}

std::vector<std::string> dsl_corpus() {
  std::vector<std::string> out;
  Rng rng(2024);
  auto num = [&rng]() {
    std::ostringstream os;
    os << (0.125 * std::floor(rng.next() * 16.0));
    return os.str();
  };
  for (int i = 0; i < 50; ++i) {
    std::ostringstream os;
    switch (i % 10) {
      case 0: os << "T = smash(0.1, 0.25; t1)\n"; break;
      case 1: os << "f = sin(t1) + cos(t2) * " << num() << "\n"; break;
      case 2: os << "g = tuple(t1 * t2, exp(-t1), " << num() << ")\n"; break;
      case 3:
        os << "T = smash(0.05, 0.4; t1)\nF = compose(T; t1 * t2 + " << num()
           << ")\n";
        break;
      case 4: os << "h = -(t1 - t2) / (t3 + 2)\n"; break;
      case 5:
        os << "a = t1 + " << num() << "\nb = a * a - sin(a)\nc = tuple(a, b)\n";
        break;
      case 6: os << "p = smash(0, 0.5; t1 * " << num() << " + t2)\n"; break;
      case 7:
        os << "sq = tuple(smash(0.1, 0.2; t1), smash(0.1, 0.2; t2))\n"
              "w = compose(sq; t2, t1)\n";
        break;
      case 8: os << "m = exp(sin(cos(t1)) - t2 / 3)\n"; break;
      default:
        os << "u = t1 * t1 * t1 - " << num() << " * t1\nv = compose(u; smash(0.125, 0.25; t1))\n";
        break;
    }
    out.push_back(os.str());
  }
  return out;
}

}  // namespace fixtures

namespace {

using fixtures::Rng;

int pick_grid(const SuiteConfig& cfg, int dflt) { return cfg.grid > 0 ? cfg.grid : dflt; }
double pick_tol(const SuiteConfig& cfg, double dflt) { return cfg.tol > 0 ? cfg.tol : dflt; }

VerificationReport named(VerificationReport r, const std::string& name) {
  r.check = name;
  return r;
}

SuiteReport smash_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "smash";
  Rng rng(cfg.seed);
  int grid = pick_grid(cfg, 10000);
  double tol = pick_tol(cfg, 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    double tau = 0.1 + 0.4 * rng.next();
    double sigma = (trial == 0) ? 0.0 : tau * rng.next() * 0.95;
    SmashParams p(sigma, tau);
    SmoothFn1D T = smash_1d(p);
    VerificationReport rep;
    rep.check = "conditions(sigma=" + std::to_string(sigma) +
                ",tau=" + std::to_string(tau) + ")";
    rep.tol = tol;
    rep.grid = "grid=" + std::to_string(grid);
    for (int i = 0; i < grid; ++i) {
      double t = -0.25 + 1.5 * double(i) / (grid - 1);
      double v = T(t);
      if (t <= sigma) rep.merge_violation(std::abs(v), {t});
      if (t >= tau && t <= 1 - tau) rep.merge_violation(std::abs(v - t), {t});
      if (t >= 1 - sigma) rep.merge_violation(std::abs(v - 1), {t});
      rep.merge_violation(std::abs(T(1 - t) - (1 - v)), {t});
    }
    out.reports.push_back(rep);
    out.reports.push_back(
        named(check_monotone(T, grid, -0.25, 1.25),
              "monotone(sigma=" + std::to_string(sigma) + ")"));
  }
  return out;
}

SuiteReport retraction_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "retraction";
  int grid1d = pick_grid(cfg, 10000);
  for (int n : {1, 2, 3}) {
    int grid = std::max(3, int(std::round(std::pow(double(grid1d), 1.0 / n))));
    for (double eps : {0.1, 0.25, 0.4}) {
      CubeMap R = approximate_retraction(n, eps);
      std::ostringstream tag;
      tag << "n=" << n << ",eps=" << eps;
      out.reports.push_back(
          named(check_retraction(R, eps, grid), "contract(" + tag.str() + ")"));
      // Smoothness probes: the flat-zone boundary eps/2 (steps deep inside
      // the exponential tail) and the analytic mid-cube region.
      std::vector<Seam> probes;
      for (int axis = 0; axis < n; ++axis) {
        probes.push_back({axis, eps / 2.0, eps * eps / 25.0});
        probes.push_back({axis, 0.5, 0.1});
      }
      out.reports.push_back(named(check_seam_smoothness(R, 3, 1e-2, &probes),
                                  "smooth(" + tag.str() + ")"));
      // Tame certificate survives check_tame.
      out.reports.push_back(named(
          check_tame(R, R.tameness()->epsilon, std::max(5, grid / 2), 1e-12),
          "certificate(" + tag.str() + ")"));
    }
  }
  return out;
}

SuiteReport j_extension_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "j_extension";
  Rng rng(cfg.seed + 1);
  double tol = pick_tol(cfg, 1e-9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 3;
    double eps = 0.15 + 0.2 * rng.next();
    double sigma = eps / 2.0;
    CubeMap f = fixtures::tame_trig_on_horn(n, eps, rng);
    CubeMap g = extend_tame_from_J(f, sigma);
    VerificationReport rep;
    rep.check = "restriction(trial=" + std::to_string(trial) + ",n=" + std::to_string(n) + ")";
    rep.tol = tol;
    SampleGrid gr = sample(CubeDomain::horn_j(n), n == 1 ? 64 : (n == 2 ? 17 : 9));
    rep.grid = "J-grid=" + std::to_string(gr.points.size());
    for (const Vec& t : gr.points)
      rep.merge_violation(sup_dist(g.eval_vec(t), f.eval_vec(t)), t);
    out.reports.push_back(rep);
    out.reports.push_back(named(check_tame(g, sigma, n == 1 ? 33 : (n == 2 ? 11 : 7), 1e-9),
                                "sigma_tame(trial=" + std::to_string(trial) + ")"));
  }
  return out;
}

SuiteReport l_extension_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "l_extension";
  double tol = pick_tol(cfg, 1e-9);
  for (int n : {1, 2, 3}) {
    double eps = 0.3;
    int m = n - 1;
    // Bottom untame in the interior, sides tame: c0 + plateau-bump(y) * ramp(s).
    SmoothFn1D plateau = [&] {
      SmoothFn1D s = SmoothFn1D::step();
      SmoothFn1D up = s.reparam(1.0 / 0.15, -0.2 / 0.15);       // 0 below .2, 1 above .35
      SmoothFn1D down = s.reparam(-1.0 / 0.15, 1.0 + -0.65 / -0.15);
      // bump(t) = up(t) * up(1-t): flat 0 near both faces
      return up * SmoothFn1D::compose(up, SmoothFn1D::polynomial({1.0, -1.0}));
    }();
    SmoothFn1D tame_s = smash_1d(SmashParams(eps, 0.45));
    CubeMap f = CubeMap::from_callable(
        CubeDomain::horn_l(n), Codomain::euclidean(1),
        [m, plateau, tame_s](const Vec& x) -> Value {
          double acc = 0.25;
          double bump = 1.0;
          for (int j = 0; j < m; ++j) bump *= plateau(x[size_t(j)]);
          for (int j = 0; j < m; ++j) acc += std::sin(3.0 * x[size_t(j)]) * bump;
          acc += 0.5 * tame_s(x.back());
          return Vec{acc};
        },
        "fixture.l_data");
    LExtension ext = extend_from_L(f, eps);
    VerificationReport rep;
    rep.check = "restriction(n=" + std::to_string(n) + ")";
    rep.tol = tol;
    SampleGrid gr = sample(CubeDomain::horn_l(n), n == 1 ? 64 : (n == 2 ? 17 : 9));
    rep.grid = "L-grid=" + std::to_string(gr.points.size());
    for (const Vec& t : gr.points)
      rep.merge_violation(sup_dist(ext.map.eval_vec(t), f.eval_vec(t)), t);
    out.reports.push_back(rep);
    out.reports.push_back(named(
        check_tame(ext.map, ext.time_tameness, n == 1 ? 33 : (n == 2 ? 11 : 7),
                   1e-9, m),
        "time_tame(n=" + std::to_string(n) + ")"));
    out.reports.push_back(named(check_seam_smoothness(ext.map),
                                "seam(n=" + std::to_string(n) + ")"));
  }
  return out;
}

VerificationReport hep_contract_reports(const ComplexPtr& X, const CellwiseMap& f,
                                        const CellwiseHomotopy& h,
                                        const CellwiseHomotopy& H, int grid,
                                        double tol, const std::string& tag,
                                        SuiteReport& out) {
  // H(.,0) = f on every cell.
  VerificationReport start;
  start.check = "start(" + tag + ")";
  start.tol = tol;
  start.grid = "grid=" + std::to_string(grid);
  for (const auto& c : X->cells()) {
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), grid);
    for (const Vec& t : g.points)
      start.merge_violation(
          f.target().dist(H.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)), t);
  }
  out.reports.push_back(start);
  // H|A x I = h.
  VerificationReport basecheck;
  basecheck.check = "base(" + tag + ")";
  basecheck.tol = tol;
  basecheck.grid = "grid=" + std::to_string(grid);
  for (int a : X->base_cells()) {
    SampleGrid g = sample(CubeDomain::full_cube(X->cell(a).dim), grid);
    for (const Vec& t : g.points)
      for (double s : {0.0, 0.21, 0.5, 0.83, 1.0})
        basecheck.merge_violation(
            f.target().dist(H.eval_cell(a, t, s), h.eval_cell(a, t, s)), t);
  }
  out.reports.push_back(basecheck);
  out.reports.push_back(named(validate_homotopy(H, std::min(grid, 7), tol),
                              "compat(" + tag + ")"));
  // Time tameness certificate verifies.
  VerificationReport tame;
  tame.check = "time_tame(" + tag + ")";
  tame.tol = tol;
  double te = H.time_tameness();
  for (const auto& c : X->cells()) {
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), std::min(grid, 5));
    for (const Vec& t : g.points) {
      Value at0 = H.eval_cell(c.id, t, 0.0);
      Value at1 = H.eval_cell(c.id, t, 1.0);
      for (double frac : {0.3, 0.9}) {
        tame.merge_violation(
            f.target().dist(H.eval_cell(c.id, t, frac * te), at0), t);
        tame.merge_violation(
            f.target().dist(H.eval_cell(c.id, t, 1.0 - frac * te), at1), t);
      }
    }
  }
  out.reports.push_back(tame);
  return start;
}

SuiteReport hep_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "hep";
  double tol = pick_tol(cfg, 1e-9);
  int grid = pick_grid(cfg, 31);
  struct Case {
    const char* tag;
    ComplexPtr X;
  };
  std::vector<Case> cases = {{"interval", fixtures::interval_pair()},
                             {"square", fixtures::square_pair()},
                             {"circle", fixtures::circle_pair()}};
  for (auto& cs : cases) {
    CellwiseMap f = fixtures::plane_map(cs.X);
    CellwiseHomotopy h = fixtures::base_wiggle(cs.X, f);
    CellwiseHomotopy H = hep(cs.X, f, h);
    int g = cs.X->dim() >= 2 ? std::min(grid, 11) : grid;
    hep_contract_reports(cs.X, f, h, H, g, tol, cs.tag, out);
  }
  // Stationary h produces a homotopy whose slices stay at f.
  {
    ComplexPtr X = fixtures::interval_pair();
    CellwiseMap f = fixtures::plane_map(X);
    CellwiseHomotopy h(X, f.target());
    for (int a : X->base_cells()) {
      CubeMap piece = f.piece(a);
      h.set_piece(a, CubeMap::from_callable(
                         CubeDomain::product_with_interval(
                             CubeDomain::full_cube(X->cell(a).dim)),
                         Codomain::euclidean(2),
                         [piece](const Vec& x) {
                           Vec y(x.begin(), x.end() - 1);
                           return piece.eval(y);
                         },
                         "stationary"));
    }
    h.set_time_tameness(0.45);
    CellwiseHomotopy H = hep(X, f, h);
    VerificationReport rep;
    rep.check = "stationary_slices";
    rep.tol = tol;
    for (const auto& c : X->cells()) {
      SampleGrid g = sample(CubeDomain::full_cube(c.dim), grid);
      for (const Vec& t : g.points)
        for (double s : {0.2, 0.6, 1.0})
          rep.merge_violation(
              f.target().dist(H.eval_cell(c.id, t, s), f.eval_cell(c.id, t)), t);
    }
    out.reports.push_back(rep);
  }

  // HEP2 on the same demos: flow into the half-plane B = {y : y1 >= 1}.
  for (auto& cs : cases) {
    MapTarget tgt = MapTarget::euclidean(2);
    tgt.subspace = [](const Value& v) { return as_vec(v)[1] >= 1.0 - 1e-7; };
    ComplexPtr X = cs.X;
    CellwiseMap f(X, tgt);
    CellwiseMap base = fixtures::plane_map(X, 0.3);
    for (const auto& c : X->cells()) {
      CubeMap piece = base.piece(c.id);
      f.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::full_cube(c.dim), Codomain::euclidean(2),
                            [piece](const Vec& y) -> Value {
                              Vec v = as_vec(piece.eval(y));
                              v[1] += 1.0;  // keep A-values inside B
                              return v;
                            },
                            "hep2.f"));
    }
    // F flows straight up into B, tame in time.
    CellwiseHomotopy F(X, tgt);
    SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
    for (const auto& c : X->cells()) {
      CubeMap piece = f.piece(c.id);
      bool in_base = X->in_base(c.id);
      F.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                            Codomain::euclidean(2),
                            [piece, ramp, in_base](const Vec& x) -> Value {
                              Vec y(x.begin(), x.end() - 1);
                              double u = ramp(x.back());
                              Vec v = as_vec(piece.eval(y));
                              // rise to the half-plane; base cells wander
                              // inside B to make relativity nontrivial
                              double lift = std::max(0.0, 1.3 - v[1]);
                              v[1] += u * lift;
                              v[0] += in_base ? 0.2 * std::sin(3.0 * u) : 0.0;
                              return v;
                            },
                            "hep2.F"));
    }
    F.set_time_tameness(0.2);
    CellwiseHomotopy Fp = hep_rel(X, f, F);
    std::string tag = std::string("hep2.") + cs.tag;
    VerificationReport rep;
    rep.check = "contracts(" + tag + ")";
    rep.tol = tol;
    int g = X->dim() >= 2 ? 9 : grid;
    for (const auto& c : X->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), g);
      bool in_base = X->in_base(c.id);
      for (const Vec& t : gr.points) {
        rep.merge_violation(
            tgt.dist(Fp.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)), t);
        Value end = Fp.eval_cell(c.id, t, 1.0);
        rep.merge_violation(tgt.subspace(end) ? 0.0 : 1.0, t);
        if (in_base) {
          Value at = f.eval_cell(c.id, t);
          for (double s : {0.15, 0.35, 0.55, 0.8})
            rep.merge_violation(tgt.dist(Fp.eval_cell(c.id, t, s), at), t);
        }
      }
    }
    out.reports.push_back(rep);
    out.reports.push_back(named(validate_homotopy(Fp, 5, tol), "compat(" + tag + ")"));
    // Three-segment seams are continuous.
    VerificationReport seam;
    seam.check = "segment_seams(" + tag + ")";
    seam.tol = tol;
    for (const auto& c : X->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), std::min(g, 7));
      for (const Vec& t : gr.points)
        for (double at : {1.0 / 3.0, 2.0 / 3.0}) {
          double lo = at - 1e-6, hi = at + 1e-6;
          seam.merge_violation(
              tgt.dist(Fp.eval_cell(c.id, t, lo), Fp.eval_cell(c.id, t, hi)), t);
        }
    }
    out.reports.push_back(seam);
  }
  return out;
}

SuiteReport collar_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "collar";
  double tol = pick_tol(cfg, 1e-12);
  struct Case {
    const char* tag;
    ComplexPtr X;
    int level;
  };
  std::vector<Case> cases = {{"interval", interval(), 1},
                             {"square", square_gathered(), 2},
                             {"torus", torus(), 2}};
  for (auto& cs : cases) {
    CollarData col = collar_retraction(cs.X, cs.level);
    VerificationReport rep;
    rep.check = std::string("retraction_identity(") + cs.tag + ")";
    rep.tol = tol;
    // gamma o i = identity exactly on lower-skeleton canonical points.
    for (const auto& c : cs.X->cells()) {
      if (c.dim >= cs.level) continue;
      SampleGrid g = sample(CubeDomain::full_cube(c.dim), 9);
      for (const Vec& t : g.points) {
        CWPoint p = canonicalize(*cs.X, CWPoint{c.id, t});
        CWPoint r = col.retraction(p);
        rep.merge_violation(point_dist(*cs.X, p, r) > 0 ? point_dist(*cs.X, p, r) : 0.0,
                            t);
      }
    }
    out.reports.push_back(rep);
    // Deformation stationary on the lower skeleton.
    VerificationReport stat;
    stat.check = std::string("stationary(") + cs.tag + ")";
    stat.tol = tol;
    for (const auto& c : cs.X->cells()) {
      if (c.dim >= cs.level) continue;
      SampleGrid g = sample(CubeDomain::full_cube(c.dim), 9);
      for (const Vec& t : g.points)
        for (double s : {0.3, 0.7, 1.0}) {
          Value v = col.deformation.eval_cell(c.id, t, s);
          stat.merge_violation(point_dist(*cs.X, as_cw(v), CWPoint{c.id, t}), t);
        }
    }
    out.reports.push_back(stat);
    // Collar points retract into the lower skeleton.
    VerificationReport drop;
    drop.check = std::string("collar_drops(") + cs.tag + ")";
    drop.tol = 0.5;
    for (int id : cs.X->cells_of_dim(cs.level)) {
      double sg = col.sigma.at(id);
      SampleGrid g = sample(CubeDomain::full_cube(cs.level), 7);
      for (Vec t : g.points) {
        t[0] = sg * 0.5;  // inside the collar band
        CWPoint moved = col.retraction(CWPoint{id, t});
        drop.merge_violation(
            cs.X->cell(moved.cell).dim < cs.level ? 0.0 : 1.0, t);
      }
    }
    out.reports.push_back(drop);
  }
  return out;
}

SuiteReport help_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "help";
  double tol = pick_tol(cfg, 1e-9);
  int grid = pick_grid(cfg, 25);

  // Case 1: p = identity on the circle, trivial oracle.
  {
    ComplexPtr X = fixtures::interval_pair();
    ComplexPtr C = circle();
    CellwiseMap p = identity_map(C);
    // g: interval -> circle, tame wrap; f' sends endpoints to the vertex.
    int edge = C->cells_of_dim(1)[0];
    int vtx = C->cells_of_dim(0)[0];
    SmoothFn1D T = smash_1d(SmashParams(0.2, 0.35));
    CellwiseMap g(X, MapTarget::cw(C));
    g.set_piece(X->find_cell("v0"),
                CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                       [vtx](const Vec&) { return CWPoint{vtx, {}}; },
                                       "help.g"));
    g.set_piece(X->find_cell("v1"),
                CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                       [vtx](const Vec&) { return CWPoint{vtx, {}}; },
                                       "help.g"));
    g.set_piece(X->find_cell("e"),
                CubeMap::from_callable(
                    CubeDomain::full_cube(1), Codomain::complex(),
                    [edge, vtx, T](const Vec& y) -> Value {
                      double u = T(y[0]);
                      if (u <= 0.0 || u >= 1.0) return CWPoint{vtx, {}};
                      return CWPoint{edge, {u}};
                    },
                    "help.g"));
    CellwiseMap fp(X, MapTarget::cw(C));
    for (int a : X->base_cells()) fp.set_piece(a, g.piece(a));
    CellwiseHomotopy Fp(X, MapTarget::cw(C));
    for (int a : X->base_cells()) {
      CubeMap piece = g.piece(a);
      Fp.set_piece(a, CubeMap::from_callable(
                          CubeDomain::product_with_interval(CubeDomain::full_cube(0)),
                          Codomain::complex(),
                          [piece](const Vec&) { return piece.eval({}); },
                          "help.Fp"));
    }
    Fp.set_time_tameness(0.45);
    NullHomotopyOracle trivial = [&](const OracleRequest& req) -> std::optional<OracleAnswer> {
      if (req.kind != OracleRequest::Kind::Lift) return std::nullopt;
      OracleAnswer ans;
      ans.lift = req.base_map;  // p = identity
      CubeMap bm = req.base_map;
      ans.homotopy = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(req.dim)),
          Codomain::complex(),
          [bm](const Vec& x) {
            Vec y(x.begin(), x.end() - 1);
            return bm.eval(y);
          },
          "help.trivialK");
      ans.time_tameness = 0.45;
      return ans;
    };
    HelpResult res = help(X, p, trivial, fp, g, Fp);
    VerificationReport rep;
    rep.check = "identities(p=id)";
    rep.tol = tol;
    MapTarget ztgt = g.target();
    for (const auto& c : X->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), grid);
      for (const Vec& t : gr.points) {
        // (1) G(x,0) = g
        rep.merge_violation(ztgt.dist(res.G.eval_cell(c.id, t, 0.0), g.eval_cell(c.id, t)), t);
        // (2) G(x,1) = p o f
        Value pf = p.eval(as_cw(res.f.eval_cell(c.id, t)));
        rep.merge_violation(ztgt.dist(res.G.eval_cell(c.id, t, 1.0), pf), t);
        if (X->in_base(c.id)) {
          // (3) G|A = F', (4) f|A = f'
          for (double s : {0.25, 0.75})
            rep.merge_violation(
                ztgt.dist(res.G.eval_cell(c.id, t, s), Fp.eval_cell(c.id, t, s)), t);
          rep.merge_violation(
              fp.target().dist(res.f.eval_cell(c.id, t), fp.eval_cell(c.id, t)), t);
          // (5) p o f' = F'(.,1)
          Value pf2 = p.eval(as_cw(fp.eval_cell(c.id, t)));
          rep.merge_violation(ztgt.dist(pf2, Fp.eval_cell(c.id, t, 1.0)), t);
        }
      }
    }
    out.reports.push_back(rep);
    out.reports.push_back(named(validate_homotopy(res.G, 7, tol), "compat(p=id)"));

    // A = X: no cells to extend, outputs are the inputs.
    {
      CWComplexBuilder all;
      int v0 = all.add_vertex("v0");
      int v1 = all.add_vertex("v1");
      ComplexPtr I = interval();
      int e = all.add_cell("e", 1, I->cell(I->find_cell("e")).attaching, 0.45);
      all.mark_base(v0);
      all.mark_base(v1);
      all.mark_base(e);
      ComplexPtr XA = all.build();
      CellwiseMap gA = identity_map(XA);
      CellwiseMap fpA = identity_map(XA);
      CellwiseHomotopy FpA(XA, gA.target());
      for (const auto& c : XA->cells()) {
        int id = c.id;
        FpA.set_piece(id, CubeMap::from_callable(
                              CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                              Codomain::complex(),
                              [id](const Vec& x) -> Value {
                                Vec y(x.begin(), x.end() - 1);
                                return CWPoint{id, y};
                              },
                              "help.FpA"));
      }
      FpA.set_time_tameness(0.45);
      HelpResult resA = help(XA, identity_map(XA), trivial, fpA, gA, FpA);
      VerificationReport rep2;
      rep2.check = "A_equals_X";
      rep2.tol = tol;
      for (const auto& c : XA->cells()) {
        SampleGrid gr = sample(CubeDomain::full_cube(c.dim), grid);
        for (const Vec& t : gr.points) {
          rep2.merge_violation(
              gA.target().dist(resA.f.eval_cell(c.id, t), fpA.eval_cell(c.id, t)), t);
          rep2.merge_violation(gA.target().dist(resA.G.eval_cell(c.id, t, 0.5),
                                                FpA.eval_cell(c.id, t, 0.5)),
                               t);
        }
      }
      out.reports.push_back(rep2);
    }
  }

  // Case 2: quotient p : interval -> circle with a coordinate-reading lift
  // oracle; all five identities.
  {
    ComplexPtr X = fixtures::interval_pair();
    ComplexPtr I = interval();
    ComplexPtr C = circle();
    int iedge = I->cells_of_dim(1)[0];
    int iv0 = I->find_cell("v0");
    int iv1 = I->find_cell("v1");
    int cedge = C->cells_of_dim(1)[0];
    int cvtx = C->cells_of_dim(0)[0];
    CellwiseMap p(I, MapTarget::cw(C));
    p.set_piece(iv0, CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                            [cvtx](const Vec&) { return CWPoint{cvtx, {}}; },
                                            "p"));
    p.set_piece(iv1, CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                            [cvtx](const Vec&) { return CWPoint{cvtx, {}}; },
                                            "p"));
    p.set_piece(iedge, CubeMap::from_callable(
                           CubeDomain::full_cube(1), Codomain::complex(),
                           [cedge](const Vec& y) -> Value {
                             return CWPoint{cedge, {y[0]}};
                           },
                           "p"));
    SmoothFn1D T = smash_1d(SmashParams(0.2, 0.35));
    CellwiseMap g(X, MapTarget::cw(C));
    auto circle_path = [cedge, cvtx, T](const Vec& y) -> Value {
      double u = T(y[0]);
      if (u <= 0.0 || u >= 1.0) return CWPoint{cvtx, {}};
      return CWPoint{cedge, {u}};
    };
    g.set_piece(X->find_cell("v0"),
                CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                       [cvtx](const Vec&) { return CWPoint{cvtx, {}}; }, "g"));
    g.set_piece(X->find_cell("v1"),
                CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                       [cvtx](const Vec&) { return CWPoint{cvtx, {}}; }, "g"));
    g.set_piece(X->find_cell("e"),
                CubeMap::from_callable(CubeDomain::full_cube(1), Codomain::complex(),
                                       circle_path, "g"));
    CellwiseMap fp(X, MapTarget::cw(I));
    fp.set_piece(X->find_cell("v0"),
                 CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                        [iv0](const Vec&) { return CWPoint{iv0, {}}; }, "fp"));
    fp.set_piece(X->find_cell("v1"),
                 CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                        [iv1](const Vec&) { return CWPoint{iv1, {}}; }, "fp"));
    CellwiseHomotopy Fp(X, MapTarget::cw(C));
    for (int a : X->base_cells()) {
      CubeMap piece = g.piece(a);
      Fp.set_piece(a, CubeMap::from_callable(
                          CubeDomain::product_with_interval(CubeDomain::full_cube(0)),
                          Codomain::complex(),
                          [piece](const Vec&) { return piece.eval({}); },
                          "Fp"));
    }
    Fp.set_time_tameness(0.45);
    ComplexPtr Cc = C;
    ComplexPtr Ic = I;
    NullHomotopyOracle reader = [Cc, Ic, iedge, iv0, iv1](const OracleRequest& req)
        -> std::optional<OracleAnswer> {
      if (req.kind != OracleRequest::Kind::Lift) return std::nullopt;
      CubeMap bm = req.base_map;
      CubeMap boundary = req.boundary_map;
      int d = req.dim;
      auto lift_point = [Cc, Ic, iedge, iv0, iv1, bm, boundary, d](const Vec& t) -> Value {
        CWPoint z = canonicalize(*Cc, as_cw(bm.eval(t)));
        if (Ic->cell(iedge).dim == 1 && z.coords.size() == 1)
          return CWPoint{iedge, z.coords};
        // vertex of the circle: lift to the endpoint dictated by position
        if (d == 0) return as_cw(boundary.valid() ? boundary.eval(t) : bm.eval(t));
        return CWPoint{t[0] < 0.5 ? iv0 : iv1, {}};
      };
      OracleAnswer ans;
      ans.lift = CubeMap::from_callable(CubeDomain::full_cube(req.dim),
                                        Codomain::complex(), lift_point, "lift");
      CubeMap bm2 = req.base_map;
      ans.homotopy = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(req.dim)),
          Codomain::complex(),
          [bm2](const Vec& x) {
            Vec y(x.begin(), x.end() - 1);
            return bm2.eval(y);
          },
          "K2");
      ans.time_tameness = 0.45;
      return ans;
    };
    HelpResult res = help(X, p, reader, fp, g, Fp);
    VerificationReport rep;
    rep.check = "identities(p=quotient)";
    rep.tol = tol;
    MapTarget ztgt = g.target();
    for (const auto& c : X->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), grid);
      for (const Vec& t : gr.points) {
        rep.merge_violation(ztgt.dist(res.G.eval_cell(c.id, t, 0.0), g.eval_cell(c.id, t)), t);
        Value pf = p.eval(as_cw(res.f.eval_cell(c.id, t)));
        rep.merge_violation(ztgt.dist(res.G.eval_cell(c.id, t, 1.0), pf), t);
        if (X->in_base(c.id)) {
          for (double s : {0.3, 0.7})
            rep.merge_violation(
                ztgt.dist(res.G.eval_cell(c.id, t, s), Fp.eval_cell(c.id, t, s)), t);
          rep.merge_violation(
              fp.target().dist(res.f.eval_cell(c.id, t), fp.eval_cell(c.id, t)), t);
          Value pf2 = p.eval(as_cw(fp.eval_cell(c.id, t)));
          rep.merge_violation(ztgt.dist(pf2, Fp.eval_cell(c.id, t, 1.0)), t);
        }
      }
    }
    out.reports.push_back(rep);

    // Corrupted oracle: endpoint contract violated, engine must refuse.
    NullHomotopyOracle corrupted = [Cc, cvtx](const OracleRequest& req)
        -> std::optional<OracleAnswer> {
      if (req.kind != OracleRequest::Kind::Lift) return std::nullopt;
      OracleAnswer ans;
      ans.lift = CubeMap::from_callable(CubeDomain::full_cube(req.dim),
                                        Codomain::complex(),
                                        [cvtx](const Vec&) -> Value {
                                          return CWPoint{cvtx, {}};
                                        },
                                        "bad_lift");
      ans.homotopy = CubeMap::from_callable(
          CubeDomain::product_with_interval(CubeDomain::full_cube(req.dim)),
          Codomain::complex(),
          [cvtx](const Vec&) -> Value { return CWPoint{cvtx, {}}; }, "bad_K");
      ans.time_tameness = 0.45;
      return ans;
    };
    VerificationReport detect;
    detect.check = "corrupted_oracle_detected";
    detect.tol = 0.5;
    bool threw = false;
    try {
      help(X, p, corrupted, fp, g, Fp);
    } catch (const error& e) {
      threw = std::string(e.what()).find("oracle") != std::string::npos;
    }
    if (!threw) detect.merge_violation(1.0, {});
    out.reports.push_back(detect);
  }
  return out;
}

SuiteReport cellular_suite(const SuiteConfig& cfg) {
  SuiteReport out;
  out.name = "cellular";
  double tol = pick_tol(cfg, 1e-9);
  ComplexPtr S = circle();
  ComplexPtr T2 = torus();
  CellwiseMap f = fixtures::circle_into_torus_top(S, T2);
  CellularApproxResult res = cellular_approximation(f);
  // Canonical dimension audit: g(X^n) has canonical dimension <= n.
  VerificationReport dims;
  dims.check = "canonical_dims";
  dims.tol = 0.5;
  for (const auto& c : S->cells()) {
    SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 33);
    for (const Vec& t : gr.points) {
      CWPoint p = canonicalize(*T2, as_cw(res.g.eval_cell(c.id, t)));
      dims.merge_violation(T2->cell(p.cell).dim <= c.dim ? 0.0 : 1.0, t);
    }
  }
  out.reports.push_back(dims);
  // Homotopy contracts: H(.,0) = f, H(.,1) = g.
  VerificationReport ends;
  ends.check = "homotopy_endpoints";
  ends.tol = tol;
  for (const auto& c : S->cells()) {
    SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 33);
    for (const Vec& t : gr.points) {
      ends.merge_violation(
          f.target().dist(res.H.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)), t);
      ends.merge_violation(
          f.target().dist(res.H.eval_cell(c.id, t, 1.0), res.g.eval_cell(c.id, t)), t);
    }
  }
  out.reports.push_back(ends);
  out.reports.push_back(named(validate_map(res.g, 17, tol), "compat_g"));
  out.reports.push_back(named(validate_homotopy(res.H, 7, 1e-7), "compat_H"));
  // Already-cellular input passes through unchanged.
  {
    CellwiseMap id = identity_map(S);
    CellularApproxResult res2 = cellular_approximation(id);
    VerificationReport rep;
    rep.check = "already_cellular";
    rep.tol = tol;
    for (const auto& c : S->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 17);
      for (const Vec& t : gr.points) {
        rep.merge_violation(
            id.target().dist(res2.g.eval_cell(c.id, t), id.eval_cell(c.id, t)), t);
        for (double s : {0.4, 0.9})
          rep.merge_violation(
              id.target().dist(res2.H.eval_cell(c.id, t, s), id.eval_cell(c.id, t)), t);
      }
    }
    out.reports.push_back(rep);
  }
  // subdivide_until_cover agrees with the brute-force oracle.
  {
    SmoothFn1D T = smash_1d(SmashParams(0.1, 0.2));
    ComplexPtr T2c = T2;
    int face = T2->find_cell("f");
    CubeMap probe = CubeMap::from_callable(
        CubeDomain::full_cube(1), Codomain::complex(),
        [face, T](const Vec& y) -> Value {
          double a = 2.0 * 3.14159265358979323846 * T(y[0]);
          return CWPoint{face, {0.5 + 0.31 * std::cos(a), 0.5 + 0.31 * std::sin(a)}};
        },
        "probe");
    CollarData col = collar_retraction(T2, 2);
    PointPredicate in_B = [col](const Value& v) { return col.in_B(as_cw(v)); };
    PointPredicate in_top = [T2c](const Value& v) {
      CWPoint p = canonicalize(*T2c, as_cw(v));
      return T2c->cell(p.cell).dim == 2;
    };
    SubdivisionCover cover = subdivide_until_cover(probe, {in_B, in_top}, 16);
    // brute force: re-run the qualification test for every k from 1 up
    int brute = -1;
    for (int k = 1; k <= 16 && brute < 0; ++k) {
      bool ok = true;
      for (const auto& chart : subcube_lattice(1, k)) {
        bool any = false;
        for (const auto& pred : {in_B, in_top}) {
          bool all = true;
          for (int res : {5, 9}) {
            for (int i = 0; i < res; ++i) {
              Vec local{double(i) / (res - 1)};
              if (!pred(probe.eval(chart.to_global(local)))) {
                all = false;
                break;
              }
            }
            if (!all) break;
          }
          if (all) {
            any = true;
            break;
          }
        }
        if (!any) {
          ok = false;
          break;
        }
      }
      if (ok) brute = k;
    }
    VerificationReport rep;
    rep.check = "subdivision_matches_bruteforce";
    rep.tol = 0.5;
    rep.note = "k=" + std::to_string(cover.k);
    if (cover.k != brute) rep.merge_violation(1.0, {double(cover.k), double(brute)});
    out.reports.push_back(rep);
  }
  return out;
}

SuiteReport structure_suite(const SuiteConfig& cfg) {
  (void)cfg;
  SuiteReport out;
  out.name = "structure";
  auto expect = [&](const std::string& name, bool ok, double mag = 1.0) {
    VerificationReport rep;
    rep.check = name;
    rep.tol = 0.5;
    if (!ok) rep.merge_violation(mag, {});
    out.reports.push_back(rep);
  };
  ComplexPtr I = interval();
  ComplexPtr S = circle();
  ComplexPtr Q = square_gathered();
  ComplexPtr T2 = torus();
  expect("interval_cells", I->cell_count() == 3);
  expect("circle_cells", S->cell_count() == 2);
  expect("interval_gathered", I->gathered());
  expect("cube2_not_gathered", !cube_complex(2)->gathered());
  expect("cube1_gathered", cube_complex(1)->gathered());
  ComplexPtr IxI = product(I, I);
  expect("product_counts", IxI->cell_count() == I->cell_count() * I->cell_count());
  ComplexPtr pt = cube_complex(0);
  expect("product_point", product(S, pt)->cell_count() == S->cell_count());
  expect("product_point_gathered", product(S, pt)->gathered());
  ComplexPtr SxS = product(S, S);
  expect("torus_product_counts", SxS->cell_count() == 4);
  expect("product_gathered_false", !SxS->gathered());
  expect("coproduct_counts",
         coproduct(I, S)->cell_count() == I->cell_count() + S->cell_count());
  expect("coproduct_gathered", coproduct(I, S)->gathered());
  {
    std::vector<int> a = {I->find_cell("v0"), I->find_cell("v1")};
    ComplexPtr q = quotient(I, a);
    expect("quotient_counts", q->cell_count() == I->cell_count() - a.size() + 1);
    bool rejected = false;
    try {
      quotient(I, {});
    } catch (const error&) {
      rejected = true;
    }
    expect("quotient_empty_rejected", rejected);
  }
  expect("subcomplex_boundary",
         subcomplex_check(*Q, {Q->find_cell("v00"), Q->find_cell("v10"),
                               Q->find_cell("v01"), Q->find_cell("v11"),
                               Q->find_cell("eb"), Q->find_cell("er"),
                               Q->find_cell("et"), Q->find_cell("el")}));
  expect("subcomplex_bad", !subcomplex_check(*Q, {Q->find_cell("f")}));
  expect("validate_interval", validate_complex(*I).pass);
  expect("validate_square", validate_complex(*Q).pass);
  expect("validate_torus", validate_complex(*T2).pass);
  expect("validate_cube3", validate_complex(*cube_complex(3), 5).pass);
  // Mapping cylinder of the identity on the circle.
  {
    CellwiseMap idS = identity_map(S);
    MappingCylinder M = mapping_cylinder(idS);
    expect("cylinder_counts", M.complex->cell_count() == 3 * S->cell_count());
    VerificationReport rep;
    rep.check = "cylinder_gamma_j";
    rep.tol = kComposedTol;
    for (const auto& c : S->cells()) {
      SampleGrid gr = sample(CubeDomain::full_cube(c.dim), 33);
      for (const Vec& t : gr.points) {
        Value jx = M.embedding.eval_cell(c.id, t);
        Value gj = M.retraction.eval(as_cw(jx));
        rep.merge_violation(idS.target().dist(gj, idS.eval_cell(c.id, t)), t);
      }
    }
    out.reports.push_back(rep);
    VerificationReport repy;
    repy.check = "cylinder_gamma_on_Y";
    repy.tol = kComposedTol;
    for (const auto& [yid, mid] : M.y_cells) {
      SampleGrid gr = sample(CubeDomain::full_cube(S->cell(yid).dim), 17);
      for (const Vec& t : gr.points) {
        Value v = M.retraction.eval_cell(mid, t);
        repy.merge_violation(point_dist(*S, as_cw(v), CWPoint{yid, t}), t);
      }
    }
    out.reports.push_back(repy);
    expect("cylinder_valid", validate_complex(*M.complex, 5).pass);
  }
  return out;
}

SuiteReport dsl_suite(const SuiteConfig& cfg) {
  (void)cfg;
  SuiteReport out;
  out.name = "dsl";
  VerificationReport round;
  round.check = "golden_roundtrip";
  round.tol = 0.5;
  int idx = 0;
  for (const std::string& text : fixtures::dsl_corpus()) {
    try {
      dsl::Program p1 = dsl::parse(text);
      std::string printed = dsl::print(p1);
      dsl::Program p2 = dsl::parse(printed);
      if (!dsl::equal(p1, p2)) round.merge_violation(1.0, {double(idx)});
      if (dsl::print(p2) != printed) round.merge_violation(1.0, {double(idx)});
    } catch (const std::exception&) {
      round.merge_violation(1.0, {double(idx)});
    }
    ++idx;
  }
  out.reports.push_back(round);
  // DSL-built T^2 equals the library map.
  VerificationReport agree;
  agree.check = "dsl_vs_library";
  agree.tol = 1e-12;
  dsl::Program p = dsl::parse(
      "T2 = tuple(smash(0.1, 0.25; t1), smash(0.1, 0.25; t2))\n");
  CubeMap lib = smash_nd(2, SmashParams(0.1, 0.25));
  CubeMap viaDsl = dsl::to_cube_map(p, "T2");
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.next(), rng.next()};
    agree.merge_violation(sup_dist(dsl::evaluate(p, "T2", x), lib.eval_vec(x)), x);
    agree.merge_violation(sup_dist(viaDsl.eval_vec(x), lib.eval_vec(x)), x);
  }
  out.reports.push_back(agree);
  // Distinct error classes.
  VerificationReport errs;
  errs.check = "error_reporting";
  errs.tol = 0.5;
  auto expect_throw = [&errs](const std::string& text, const char* needle) {
    try {
      dsl::parse(text);
      errs.merge_violation(1.0, {});
    } catch (const dsl::ParseError& e) {
      if (std::string(e.what()).find(needle) == std::string::npos)
        errs.merge_violation(1.0, {});
    }
  };
  expect_throw("f = sin(", "syntax error");
  expect_throw("f = nope + 1", "unknown identifier");
  expect_throw("g = t1\nh = compose(g; t1, t2)", "dimension mismatch");
  out.reports.push_back(errs);
  return out;
}

}  // namespace

void register_all_suites() {
  static bool done = false;
  if (done) return;
  done = true;
  register_suite("smash", smash_suite);
  register_suite("retraction", retraction_suite);
  register_suite("j_extension", j_extension_suite);
  register_suite("l_extension", l_extension_suite);
  register_suite("hep", hep_suite);
  register_suite("collar", collar_suite);
  register_suite("help", help_suite);
  register_suite("cellular", cellular_suite);
  register_suite("structure", structure_suite);
  register_suite("dsl", dsl_suite);
}

}  // namespace tamecell
