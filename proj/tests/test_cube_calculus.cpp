#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/cube_map.hpp"
#include "tamecell/verify.hpp"

using namespace tamecell;

TEST_CASE("smash_nd applies the smash per coordinate") {
  CubeMap T2 = smash_nd(2, SmashParams(0.1, 0.25));
  Vec v = T2.eval_vec({0.05, 0.5});
  CHECK(v[0] == 0.0);
  CHECK(v[1] == doctest::Approx(0.5));
  // n = 1 collapses to smash_1d
  CubeMap T1 = smash_nd(1, SmashParams(0.1, 0.25));
  SmoothFn1D t1 = smash_1d(SmashParams(0.1, 0.25));
  for (int i = 0; i <= 100; ++i) {
    double t = i / 100.0;
    CHECK(T1.eval_vec({t})[0] == doctest::Approx(t1(t)).epsilon(1e-14));
  }
  // inputs in the tau-chamber are fixed pointwise
  CubeMap T3 = smash_nd(3, SmashParams(0.1, 0.25));
  for (const Vec& x : sample(CubeDomain::full_cube(3).chamber(0.25), 5).points)
    CHECK(sup_dist(T3.eval_vec(x), x) <= 1e-12);
  // by-construction certificate survives check_tame
  CHECK(T2.tameness());
  CHECK(check_tame(T2, T2.tameness()->epsilon, 21).pass);
}

TEST_CASE("locally tame subdivision") {
  // subcube endpoints are fixed points
  CubeMap t22 = locally_tame_subdivision(1, 2, SmashParams(0.1, 0.25));
  CHECK(t22.eval_vec({0.5})[0] == doctest::Approx(0.5));
  CHECK(t22.eval_vec({0.0})[0] == 0.0);
  CHECK(t22.eval_vec({1.0})[0] == doctest::Approx(1.0));
  // identity on the middle region of each subcube (small tau)
  CubeMap small = locally_tame_subdivision(1, 2, SmashParams(0.02, 0.05));
  CHECK(small.eval_vec({0.25})[0] == doctest::Approx(0.25));
  // n=2, k=3 grid matches the per-subcube affine conjugation oracle
  SmashParams p(0.1, 0.25);
  CubeMap t23 = locally_tame_subdivision(2, 3, p);
  SmoothFn1D T = smash_1d(p);
  auto charts = subcube_lattice(2, 3);
  for (const Vec& x : sample(CubeDomain::full_cube(2), 16).points) {
    // oracle: find the subcube, conjugate through its chart
    for (const auto& ch : charts) {
      Vec local = ch.to_local(x);
      bool inside = true;
      for (double c : local)
        if (c < -1e-12 || c > 1 + 1e-12) inside = false;
      if (!inside) continue;
      Vec expect(local.size());
      for (size_t j = 0; j < local.size(); ++j) expect[j] = T(local[j]);
      expect = ch.to_global(expect);
      CHECK(sup_dist(t23.eval_vec(x), expect) <= 1e-12);
      break;
    }
  }
  // smooth across subcube boundaries (forced by the flat zones)
  CHECK(check_seam_smoothness(t23).pass);
  CHECK(!t23.seams().empty());
}

TEST_CASE("straight line homotopy") {
  // identity g: H(t, s) = t for all s
  CubeMap id2 = CubeMap::from_components(
      CubeDomain::full_cube(2), {Expr::var(0), Expr::var(1)},
      Codomain::domain(CubeDomain::full_cube(2)));
  CubeMap H = straight_line_homotopy(id2);
  for (const Vec& x : sample(CubeDomain::full_cube(2), 7).points)
    for (double s : {0.0, 0.4, 1.0})
      CHECK(sup_dist(H.eval_vec({x[0], x[1], s}), x) <= 1e-15);
  // g = locally tame subdivision: s = 1/2 gives the midpoint; endpoints match
  CubeMap g = locally_tame_subdivision(1, 2, SmashParams(0.1, 0.25));
  CubeMap Hg = straight_line_homotopy(g);
  for (int i = 0; i <= 1000; ++i) {
    double t = i / 1000.0;
    double gt = g.eval_vec({t})[0];
    CHECK(Hg.eval_vec({t, 0.5})[0] == doctest::Approx(0.5 * (t + gt)));
    CHECK(Hg.eval_vec({t, 0.0})[0] == doctest::Approx(t));
    CHECK(Hg.eval_vec({t, 1.0})[0] == doctest::Approx(gt));
  }
  // non-cube codomain is rejected
  CubeMap into_plane = CubeMap::from_components(
      CubeDomain::full_cube(1), {Expr::var(0)}, Codomain::euclidean(1));
  CHECK_THROWS(straight_line_homotopy(into_plane));
}

TEST_CASE("approximate retraction") {
  // n=1: constant map to J^0 = {1}
  CubeMap R1 = approximate_retraction(1, 0.25);
  for (int i = 0; i <= 50; ++i)
    CHECK(R1.eval_vec({i / 50.0})[0] == 1.0);
  // identity on the chamber of J^1, membership everywhere
  CubeMap R2 = approximate_retraction(2, 0.25);
  CubeDomain J = CubeDomain::horn_j(2);
  for (const Vec& x : sample(J.chamber(0.25), 9).points)
    CHECK(sup_dist(R2.eval_vec(x), x) <= 1e-12);
  Vec mid = R2.eval_vec({0.5, 0.0});
  CHECK(J.contains(mid, 1e-9));
  VerificationReport rep = check_retraction(R2, 0.25, 100);
  CHECK(rep.pass);
  // the certificate survives check_tame
  CHECK(R2.tameness());
  CHECK(check_tame(R2, R2.tameness()->epsilon, 33).pass);
  CHECK_THROWS(approximate_retraction(2, 0.6));
}

TEST_CASE("tamify composes with the smash") {
  SmashParams p(0.1, 0.25);
  // identity tamifies to T itself
  CubeMap id1 = CubeMap::from_components(CubeDomain::full_cube(1), {Expr::var(0)},
                                         Codomain::euclidean(1));
  CubeMap tid = tamify(id1, p);
  SmoothFn1D T = smash_1d(p);
  for (int i = 0; i <= 200; ++i) {
    double t = i / 200.0;
    CHECK(tid.eval_vec({t})[0] == doctest::Approx(T(t)).epsilon(1e-14));
  }
  // agrees with f on the tau-chamber
  CubeMap f = CubeMap::from_components(
      CubeDomain::full_cube(2), {sin(Expr::var(0) + Expr::var(1)), cos(Expr::var(1))},
      Codomain::euclidean(2));
  CubeMap tf = tamify(f, p);
  for (const Vec& x : sample(CubeDomain::full_cube(2).chamber(0.25), 7).points)
    CHECK(sup_dist(tf.eval_vec(x), f.eval_vec(x)) <= 1e-12);
  // the certificate survives check_tame at sigma
  CHECK(check_tame(tf, p.sigma, 17, 1e-12).pass);
  CHECK_THROWS(tamify(CubeMap::from_components(CubeDomain::horn_j(2), {Expr::var(0)},
                                               Codomain::euclidean(1)),
                      p));
}

TEST_CASE("concatenation product") {
  SmashParams p(0.1, 0.25);
  Vec x0{1.5, -2.0};
  auto triple_map = [&](double a) {
    // basepoint on J^{n-1}, varies in the interior
    return CubeMap::from_callable(
        CubeDomain::full_cube(2), Codomain::euclidean(2),
        [a, x0](const Vec& t) -> Value {
          SmoothFn1D T = smash_1d(SmashParams(0.1, 0.25));
          double b1 = T(t[0]) * (1 - T(t[0])), b2 = T(t[1]);
          (void)b2;
          double bump = 4.0 * b1 * T(t[1]) * (1 - T(t[1])) * 4.0;
          return Vec{x0[0] + a * bump, x0[1] + a * bump * bump};
        },
        "triple");
  };
  CubeMap phi = triple_map(1.0), psi = triple_map(-0.5);
  CubeMap c = concat(phi, psi, p);
  // constant concatenation stays constant
  CubeMap cst = CubeMap::from_callable(CubeDomain::full_cube(2), Codomain::euclidean(2),
                                       [x0](const Vec&) -> Value { return x0; }, "c");
  CubeMap cc = concat(cst, cst, p);
  for (const Vec& x : sample(CubeDomain::full_cube(2), 7).points)
    CHECK(sup_dist(cc.eval_vec(x), x0) <= 1e-15);
  // the seam t1 = 1/2 maps to the basepoint
  for (int i = 0; i <= 20; ++i)
    CHECK(sup_dist(c.eval_vec({0.5, i / 20.0}), x0) <= 1e-12);
  // displayed case 0 <= t1 <= 1/2: phi(T(2 t1), t2)
  SmoothFn1D T = smash_1d(p);
  Vec expect = phi.eval_vec({T(0.6), 0.3});
  CHECK(sup_dist(c.eval_vec({0.3, 0.3}), expect) <= 1e-12);
  // the glued map records its seam and passes the smoothness check
  CHECK(!c.seams().empty());
  CHECK(check_seam_smoothness(c).pass);
  // restricted to J^{n-1} the product is the basepoint
  for (const Vec& x : sample(CubeDomain::horn_j(2), 11).points)
    CHECK(sup_dist(c.eval_vec(x), x0) <= 1e-12);
  // mismatched basepoints are refused
  CubeMap other = CubeMap::from_callable(CubeDomain::full_cube(2), Codomain::euclidean(2),
                                         [](const Vec&) -> Value {
                                           return Vec{9.0, 9.0};
                                         },
                                         "other");
  CHECK_THROWS(concat(phi, other, p));
}

TEST_CASE("certified piecewise gluing") {
  // two restrictions of one closed form reassemble exactly
  auto form = [](const Vec& x) -> Value {
    return Vec{std::sin(3 * x[0]) + x[1]};
  };
  std::vector<AxisRange> lo{{0.0, 0.6}, {0.0, 1.0}};
  std::vector<AxisRange> hi{{0.4, 1.0}, {0.0, 1.0}};
  CubeMap whole = glue_piecewise(
      CubeDomain::full_cube(2),
      {{CubeDomain::box(lo),
        CubeMap::from_callable(CubeDomain::box(lo), Codomain::euclidean(1), form, "lo")},
       {CubeDomain::box(hi),
        CubeMap::from_callable(CubeDomain::box(hi), Codomain::euclidean(1), form, "hi")}},
      {{0, 0.5, 0.05, SeamSpec::Justification::ClosedForm}});
  for (const Vec& x : sample(CubeDomain::full_cube(2), 9).points)
    CHECK(sup_dist(as_vec(whole.eval(x)), as_vec(form(x))) == 0.0);

  // gluing pattern: h eps-tame in time glued with h0 along the zero slice
  double eps = 0.2;
  SmoothFn1D ramp = smash_1d(SmashParams(eps, 0.4));
  auto h = [ramp](const Vec& x) -> Value {  // tame in the time coordinate
    return Vec{std::cos(2 * x[0]) * ramp(x[1])};
  };
  auto h0 = [](const Vec& x) -> Value { return Vec{0.0 * x[0]}; };
  std::vector<AxisRange> strip{{0.0, 1.0}, {0.0, eps / 2}};
  std::vector<AxisRange> rest{{0.0, 1.0}, {0.0, 1.0}};
  CubeMap glued = glue_piecewise(
      CubeDomain::full_cube(2),
      {{CubeDomain::box(strip),
        CubeMap::from_callable(CubeDomain::box(strip), Codomain::euclidean(1), h0, "h0")},
       {CubeDomain::box(rest),
        CubeMap::from_callable(CubeDomain::box(rest), Codomain::euclidean(1), h, "h")}},
      {{1, eps / 2, eps / 4, SeamSpec::Justification::FlatCollar}});
  // two-branch evaluation oracle
  for (const Vec& x : sample(CubeDomain::full_cube(2), 11).points) {
    Vec expect = x[1] <= eps / 2 ? as_vec(h0(x)) : as_vec(h(x));
    CHECK(sup_dist(as_vec(glued.eval(x)), expect) <= 1e-12);
  }
  CHECK(check_seam_smoothness(glued).pass);

  // refusal: seam values that disagree
  auto one = [](const Vec&) -> Value { return Vec{1.0}; };
  auto two = [](const Vec&) -> Value { return Vec{2.0}; };
  std::vector<AxisRange> l1{{0.0, 0.5}};
  std::vector<AxisRange> r1{{0.5, 1.0}};
  CHECK_THROWS(glue_piecewise(
      CubeDomain::full_cube(1),
      {{CubeDomain::box(l1),
        CubeMap::from_callable(CubeDomain::box(l1), Codomain::euclidean(1), one, "1")},
       {CubeDomain::box(r1),
        CubeMap::from_callable(CubeDomain::box(r1), Codomain::euclidean(1), two, "2")}},
      {{0, 0.5, 0.1, SeamSpec::Justification::FlatCollar}}));
  // refusal: no flat collar on either side (|t - 1/2| style crease)
  auto vee = [](const Vec& x) -> Value { return Vec{std::abs(x[0] - 0.5)}; };
  CHECK_THROWS(glue_piecewise(
      CubeDomain::full_cube(1),
      {{CubeDomain::box(l1),
        CubeMap::from_callable(CubeDomain::box(l1), Codomain::euclidean(1), vee, "l")},
       {CubeDomain::box(r1),
        CubeMap::from_callable(CubeDomain::box(r1), Codomain::euclidean(1), vee, "r")}},
      {{0, 0.5, 0.1, SeamSpec::Justification::FlatCollar}}));
}
