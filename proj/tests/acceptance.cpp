// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. The full run must stay within the stated budgets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cstdio>

#include "doctest.h"
#include "tamecell/suites.hpp"

using namespace tamecell;
using fixtures::Rng;

namespace {

struct Criterion {
  const char* name;
  bool pass = true;
  double elapsed = 0;
  void report() const {
    std::printf("criterion %-28s %s  (%.2fs)\n", name, pass ? "PASS" : "FAIL", elapsed);
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace

TEST_CASE("1. smash suite") {
  Criterion crit{"1-smash"};
  Timer timer;
  Rng rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    double tau = 0.05 + 0.45 * rng.next();
    double sigma = trial == 0 ? 0.0 : tau * 0.97 * rng.next();
    SmoothFn1D T = smash_1d(SmashParams(sigma, tau));
    double prev = T(-0.25);
    for (int i = 0; i < 10000; ++i) {
      double t = -0.25 + 1.5 * i / 9999.0;
      double v = T(t);
      if (t <= sigma && std::abs(v) > 1e-12) crit.pass = false;
      if (t >= tau && t <= 1 - tau && std::abs(v - t) > 1e-12) crit.pass = false;
      if (t >= 1 - sigma && std::abs(v - 1) > 1e-12) crit.pass = false;
      if (std::abs(T(1 - t) - (1 - v)) > 1e-12) crit.pass = false;
      if (v < prev - 1e-12) crit.pass = false;
      prev = v;
    }
  }
  crit.elapsed = timer.seconds();
  if (crit.elapsed >= 5.0) crit.pass = false;  // runtime budget
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("2. retraction suite") {
  Criterion crit{"2-retraction"};
  Timer timer;
  for (int n : {1, 2, 3}) {
    for (double eps : {0.1, 0.25, 0.4}) {
      CubeMap R = approximate_retraction(n, eps);
      CubeDomain horn = CubeDomain::horn_j(n);
      CubeDomain chamber = horn.chamber(eps);
      int res = n == 1 ? 10000 : (n == 2 ? 100 : 22);
      SampleGrid g = sample(CubeDomain::full_cube(n), res);
      for (const Vec& x : g.points)
        if (!horn.contains(R.eval_vec(x), 1e-9)) crit.pass = false;
      for (const Vec& x : sample(chamber, n == 1 ? 100 : (n == 2 ? 31 : 9)).points)
        if (sup_dist(R.eval_vec(x), x) > 1e-12) crit.pass = false;
      std::vector<Seam> probes;
      for (int axis = 0; axis < n; ++axis) {
        probes.push_back({axis, eps / 2.0, eps * eps / 25.0});
        probes.push_back({axis, 0.5, 0.1});
      }
      if (!check_seam_smoothness(R, 3, 1e-2, &probes).pass) crit.pass = false;
    }
  }
  crit.elapsed = timer.seconds();
  if (crit.elapsed >= 30.0) crit.pass = false;
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("3. J-extension suite") {
  Criterion crit{"3-j-extension"};
  Timer timer;
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 3;
    double eps = 0.15 + 0.2 * rng.next();
    double sigma = eps / 2.0;
    CubeMap f = fixtures::tame_trig_on_horn(n, eps, rng);
    CubeMap g = extend_tame_from_J(f, sigma);
    for (const Vec& t : sample(CubeDomain::horn_j(n), n == 1 ? 128 : (n == 2 ? 33 : 9)).points)
      if (sup_dist(g.eval_vec(t), f.eval_vec(t)) > 1e-9) crit.pass = false;
    if (!check_tame(g, sigma, n == 1 ? 65 : (n == 2 ? 17 : 7), 1e-9).pass)
      crit.pass = false;
  }
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("4. L-extension and HEP suites") {
  Criterion crit{"4-l-extension-hep"};
  Timer timer;
  struct Case {
    const char* tag;
    ComplexPtr X;
  };
  // (interval, d interval), the gathered square pair for (I^2, dI^2), circle
  std::vector<Case> cases = {{"interval", fixtures::interval_pair()},
                             {"square", fixtures::square_pair()},
                             {"circle", fixtures::circle_pair()}};
  for (auto& cs : cases) {
    // ~1000 sample points per cell: 33^2 for squares, 1001 for edges
    int grid1 = 1001, grid2 = 33;
    CellwiseMap f = fixtures::plane_map(cs.X);
    CellwiseHomotopy h = fixtures::base_wiggle(cs.X, f);
    CellwiseHomotopy H = hep(cs.X, f, h);
    for (const auto& c : cs.X->cells()) {
      int g = c.dim >= 2 ? grid2 : grid1;
      for (const Vec& t : sample(CubeDomain::full_cube(c.dim), g).points)
        if (f.target().dist(H.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)) > 1e-9)
          crit.pass = false;
    }
    for (int a : cs.X->base_cells()) {
      int g = cs.X->cell(a).dim >= 2 ? grid2 : grid1;
      for (const Vec& t : sample(CubeDomain::full_cube(cs.X->cell(a).dim), g).points)
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
          if (f.target().dist(H.eval_cell(a, t, s), h.eval_cell(a, t, s)) > 1e-9)
            crit.pass = false;
    }
    if (!validate_homotopy(H, 7).pass) crit.pass = false;

    // HEP2 contracts on the same demo
    MapTarget tgt = MapTarget::euclidean(2);
    tgt.subspace = [](const Value& v) { return as_vec(v)[1] >= 1.0 - 1e-7; };
    CellwiseMap fp(cs.X, tgt);
    CellwiseMap base = fixtures::plane_map(cs.X, 0.3);
    for (const auto& c : cs.X->cells()) {
      CubeMap piece = base.piece(c.id);
      fp.set_piece(c.id, CubeMap::from_callable(
                             CubeDomain::full_cube(c.dim), Codomain::euclidean(2),
                             [piece](const Vec& y) -> Value {
                               Vec v = as_vec(piece.eval(y));
                               v[1] += 1.0;
                               return v;
                             },
                             "f"));
    }
    CellwiseHomotopy F(cs.X, tgt);
    SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
    for (const auto& c : cs.X->cells()) {
      CubeMap piece = fp.piece(c.id);
      bool in_base = cs.X->in_base(c.id);
      F.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::product_with_interval(CubeDomain::full_cube(c.dim)),
                            Codomain::euclidean(2),
                            [piece, ramp, in_base](const Vec& x) -> Value {
                              Vec y(x.begin(), x.end() - 1);
                              double u = ramp(x.back());
                              Vec v = as_vec(piece.eval(y));
                              v[1] += u * std::max(0.0, 1.3 - v[1]);
                              v[0] += in_base ? 0.2 * std::sin(3.0 * u) : 0.0;
                              return v;
                            },
                            "F"));
    }
    F.set_time_tameness(0.2);
    CellwiseHomotopy Fp = hep_rel(cs.X, fp, F);
    for (const auto& c : cs.X->cells()) {
      int g = c.dim >= 2 ? 17 : 201;
      bool in_base = cs.X->in_base(c.id);
      for (const Vec& t : sample(CubeDomain::full_cube(c.dim), g).points) {
        if (tgt.dist(Fp.eval_cell(c.id, t, 0.0), fp.eval_cell(c.id, t)) > 1e-9)
          crit.pass = false;
        if (!tgt.subspace(Fp.eval_cell(c.id, t, 1.0))) crit.pass = false;
        if (in_base) {
          Value at = fp.eval_cell(c.id, t);
          for (double s : {0.2, 0.5, 0.8})
            if (tgt.dist(Fp.eval_cell(c.id, t, s), at) > 1e-9) crit.pass = false;
        }
      }
    }
    if (!validate_homotopy(Fp, 5).pass) crit.pass = false;
  }
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("5. collar suite") {
  Criterion crit{"5-collar"};
  Timer timer;
  struct Case {
    ComplexPtr X;
    int level;
  };
  // gathered cube structure (square) and the torus
  std::vector<Case> cases = {{interval(), 1}, {square_gathered(), 2}, {torus(), 2}};
  for (auto& cs : cases) {
    CollarData col = collar_retraction(cs.X, cs.level);
    for (const auto& c : cs.X->cells()) {
      if (c.dim >= cs.level) continue;
      for (const Vec& t : sample(CubeDomain::full_cube(c.dim), 33).points) {
        CWPoint p = canonicalize(*cs.X, CWPoint{c.id, t});
        if (point_dist(*cs.X, p, col.retraction(p)) != 0.0) crit.pass = false;
        for (double s : {0.25, 0.6, 1.0})
          if (point_dist(*cs.X, as_cw(col.deformation.eval_cell(c.id, t, s)), p) > 1e-12)
            crit.pass = false;
      }
    }
  }
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("6. HELP suite") {
  Criterion crit{"6-help"};
  Timer timer;
  register_all_suites();
  SuiteReport rep = run_suite("help", SuiteConfig{});
  crit.pass = rep.pass();
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("7. cellular approximation") {
  Criterion crit{"7-cellular"};
  Timer timer;
  register_all_suites();
  SuiteReport rep = run_suite("cellular", SuiteConfig{});
  crit.pass = rep.pass();
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("8. structure suite") {
  Criterion crit{"8-structure"};
  Timer timer;
  ComplexPtr I = interval(), S = circle();
  if (product(I, I)->cell_count() != 9) crit.pass = false;
  if (product(S, cube_complex(0))->cell_count() != S->cell_count()) crit.pass = false;
  if (coproduct(I, S)->cell_count() != I->cell_count() + S->cell_count())
    crit.pass = false;
  ComplexPtr q = quotient(I, {I->find_cell("v0"), I->find_cell("v1")});
  if (q->cell_count() != I->cell_count() - 2 + 1) crit.pass = false;
  if (product(S, S)->gathered()) crit.pass = false;  // products lose tameness
  MappingCylinder M = mapping_cylinder(identity_map(S));
  if (M.complex->cell_count() != 3 * S->cell_count()) crit.pass = false;
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("9. DSL round trip") {
  Criterion crit{"9-dsl"};
  Timer timer;
  auto corpus = fixtures::dsl_corpus();
  if (corpus.size() != 50) crit.pass = false;
  for (const std::string& text : corpus) {
    try {
      dsl::Program p1 = dsl::parse(text);
      std::string printed = dsl::print(p1);
      dsl::Program p2 = dsl::parse(printed);
      if (!dsl::equal(p1, p2) || dsl::print(p2) != printed) crit.pass = false;
    } catch (const std::exception&) {
      crit.pass = false;
    }
  }
  dsl::Program t2 = dsl::parse("T2 = tuple(smash(0.1, 0.25; t1), smash(0.1, 0.25; t2))\n");
  CubeMap lib = smash_nd(2, SmashParams(0.1, 0.25));
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.next(), rng.next()};
    if (sup_dist(dsl::evaluate(t2, "T2", x), lib.eval_vec(x)) > 1e-12) crit.pass = false;
  }
  crit.elapsed = timer.seconds();
  crit.report();
  CHECK(crit.pass);
}

TEST_CASE("10. full verify suite") {
  Criterion crit{"10-verify-all"};
  Timer timer;
  register_all_suites();
  SuiteReport rep = run_suite("all", SuiteConfig{});
  crit.pass = rep.pass();
  crit.elapsed = timer.seconds();
  if (crit.elapsed >= 300.0) crit.pass = false;  // 5 minute budget
  crit.report();
  CHECK(crit.pass);
}
