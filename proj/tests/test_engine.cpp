#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/suites.hpp"

using namespace tamecell;
using fixtures::Rng;

TEST_CASE("extend_tame_from_J") {
  // constant extends to constant
  CubeMap cst = CubeMap::from_callable(CubeDomain::horn_j(2), Codomain::euclidean(1),
                                       [](const Vec&) -> Value { return Vec{3.0}; },
                                       "c")
                    .with_certificate({0.25, TamenessCertificate::Status::ByConstruction, 0, -1});
  CubeMap g0 = extend_tame_from_J(cst, 0.1);
  for (const Vec& x : sample(CubeDomain::full_cube(2), 9).points)
    CHECK(g0.eval_vec(x)[0] == 3.0);
  // n = 1: J^0 = {1}, the extension is f(1) everywhere
  CubeMap f1 = CubeMap::from_callable(CubeDomain::horn_j(1), Codomain::euclidean(1),
                                      [](const Vec& x) -> Value {
                                        return Vec{2.0 + x[0]};
                                      },
                                      "f1")
                   .with_certificate({0.3, TamenessCertificate::Status::ByConstruction, 0, -1});
  CubeMap g1 = extend_tame_from_J(f1, 0.15);
  for (int i = 0; i <= 20; ++i)
    CHECK(g1.eval_vec({i / 20.0})[0] == doctest::Approx(3.0));
  // tame trig fixture: restriction matches f through the independently
  // assembled composition f o R o T (direct evaluation oracle)
  Rng rng(5);
  double eps = 0.25, sigma = 0.1;
  CubeMap f = fixtures::tame_trig_on_horn(2, eps, rng);
  CubeMap g = extend_tame_from_J(f, sigma);
  SmoothFn1D T = smash_1d(SmashParams(sigma, eps));
  for (const Vec& x : sample(CubeDomain::full_cube(2), 13).points) {
    Vec smashed{T(x[0]), T(x[1])};
    Vec oracle = f.eval_vec(retraction_point(2, eps, smashed));
    CHECK(sup_dist(g.eval_vec(x), oracle) <= 1e-12);
  }
  for (const Vec& x : sample(CubeDomain::horn_j(2), 17).points)
    CHECK(sup_dist(g.eval_vec(x), f.eval_vec(x)) <= 1e-9);
  CHECK(g.tameness());
  CHECK(check_tame(g, sigma, 15, 1e-9).pass);
  // missing certificate is an error
  CubeMap bare = CubeMap::from_callable(CubeDomain::horn_j(2), Codomain::euclidean(1),
                                        [](const Vec&) -> Value { return Vec{0.0}; },
                                        "bare");
  CHECK_THROWS(extend_tame_from_J(bare, 0.1));
  CHECK_THROWS(extend_tame_from_J(f, eps));  // need sigma < eps
}

TEST_CASE("extend_from_L stage formulas") {
  double eps = 0.3;
  // sides tame (c0 + bump * tame ramp), bottom untame in the interior
  SmoothFn1D up = SmoothFn1D::step().reparam(1.0 / 0.15, -0.2 / 0.15);
  SmoothFn1D bump = up * SmoothFn1D::compose(up, SmoothFn1D::polynomial({1.0, -1.0}));
  SmoothFn1D tame_s = smash_1d(SmashParams(eps, 0.45));
  auto raw = [bump, tame_s](const Vec& x) -> Value {
    double b = bump(x[0]);
    return Vec{0.25 + std::sin(3.0 * x[0]) * b + 0.5 * tame_s(x[1])};
  };
  CubeMap f = CubeMap::from_callable(CubeDomain::horn_l(2), Codomain::euclidean(1), raw, "L");
  LExtension ext = extend_from_L(f, eps);
  // g(t, 0) = f(t, 0) on a grid (the extension restricts to the data)
  for (int i = 0; i <= 64; ++i) {
    double t = i / 64.0;
    CHECK(sup_dist(ext.map.eval_vec({t, 0.0}), as_vec(raw({t, 0.0}))) <= 1e-12);
  }
  // stage-1 region follows the displayed blend formula (direct oracle)
  SmoothFn1D ramp = time_ramp(eps);
  SmoothFn1D t_in = smash_1d(SmashParams(eps / 2, eps));
  for (const Vec& x : sample(CubeDomain::full_cube(1), 17).points) {
    for (double s : {0.0, 0.05, 0.1, eps / 2}) {
      double u = ramp(s);
      double blend = (1 - u) * x[0] + u * t_in(x[0]);
      Vec oracle = as_vec(raw({blend, 0.0}));
      CHECK(sup_dist(ext.map.eval_vec({x[0], s}), oracle) <= 1e-12);
    }
  }
  // sides restriction
  for (double s : {0.1, 0.5, 0.9, 1.0})
    for (double side : {0.0, 1.0})
      CHECK(sup_dist(ext.map.eval_vec({side, s}), as_vec(raw({side, s}))) <= 1e-9);
  // time tameness certified and verified
  CHECK(ext.map.tameness());
  CHECK(ext.map.tameness()->axis == 1);
  CHECK(check_tame(ext.map, ext.time_tameness, 17, 1e-9, 1).pass);
  CHECK(check_seam_smoothness(ext.map).pass);
  // untame sides are refused
  auto untame = [](const Vec& x) -> Value { return Vec{x[1]}; };
  CubeMap badf = CubeMap::from_callable(CubeDomain::horn_l(2), Codomain::euclidean(1),
                                        untame, "bad");
  CHECK_THROWS(extend_from_L(badf, eps));
}

TEST_CASE("hep endpoint and base contracts") {
  ComplexPtr X = fixtures::interval_pair();
  CellwiseMap f = fixtures::plane_map(X);
  CellwiseHomotopy h = fixtures::base_wiggle(X, f);
  CellwiseHomotopy H = hep(X, f, h);
  for (const auto& c : X->cells()) {
    for (const Vec& t : sample(CubeDomain::full_cube(c.dim), 31).points)
      CHECK(f.target().dist(H.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)) <= 1e-9);
  }
  for (int a : X->base_cells())
    for (double s : {0.0, 0.2, 0.41, 0.77, 1.0})
      CHECK(f.target().dist(H.eval_cell(a, {}, s), h.eval_cell(a, {}, s)) <= 1e-9);
  CHECK(validate_homotopy(H).pass);
  CHECK(H.time_tameness() > 0);
  // incompatible h (h(.,0) != f) is refused
  CellwiseHomotopy bad = h;
  int a0 = X->base_cells()[0];
  bad.set_piece(a0, CubeMap::from_callable(
                        CubeDomain::product_with_interval(CubeDomain::full_cube(0)),
                        Codomain::euclidean(2),
                        [](const Vec&) -> Value { return Vec{77.0, 0.0}; },
                        "bad"));
  CHECK_THROWS(hep(X, f, bad));
  // non-gathered complexes are refused
  ComplexPtr C2 = cube_complex(2);
  CellwiseMap fc = fixtures::plane_map(C2);
  CellwiseHomotopy hc(C2, fc.target());
  CHECK_THROWS(hep(C2, fc, hc));
}

TEST_CASE("hep_rel with empty base") {
  // A = empty: the relative condition is vacuous, endpoints still hold
  CWComplexBuilder b;
  b.add_vertex("v");
  ComplexPtr X = b.build();
  MapTarget tgt = MapTarget::euclidean(1);
  tgt.subspace = [](const Value& v) { return as_vec(v)[0] >= 2.0 - 1e-9; };
  CellwiseMap f(X, tgt);
  f.set_piece(0, CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::euclidean(1),
                                        [](const Vec&) -> Value { return Vec{0.5}; },
                                        "f"));
  CellwiseHomotopy F(X, tgt);
  SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
  F.set_piece(0, CubeMap::from_callable(
                     CubeDomain::product_with_interval(CubeDomain::full_cube(0)),
                     Codomain::euclidean(1),
                     [ramp](const Vec& x) -> Value {
                       return Vec{0.5 + 2.0 * ramp(x[0])};
                     },
                     "F"));
  F.set_time_tameness(0.2);
  CellwiseHomotopy Fp = hep_rel(X, f, F);
  CHECK(as_vec(Fp.eval_cell(0, {}, 0.0))[0] == doctest::Approx(0.5));
  CHECK(tgt.subspace(Fp.eval_cell(0, {}, 1.0)));
  // precondition violations are refused: F(.,1) outside B
  CellwiseHomotopy shallow = F;
  shallow.set_piece(0, CubeMap::from_callable(
                           CubeDomain::product_with_interval(CubeDomain::full_cube(0)),
                           Codomain::euclidean(1),
                           [ramp](const Vec& x) -> Value {
                             return Vec{0.5 + 0.1 * ramp(x[0])};
                           },
                           "shallow"));
  CHECK_THROWS(hep_rel(X, f, shallow));
}

TEST_CASE("collar retraction data") {
  ComplexPtr T2 = torus();
  CollarData col = collar_retraction(T2, 2);
  int f = T2->find_cell("f");
  // points of the collar retract into the lower skeleton
  double sg = col.sigma.at(f);
  CHECK(col.in_B(CWPoint{f, {sg / 2, 0.5}}));
  CHECK(!col.in_B(CWPoint{f, {0.5, 0.5}}));
  CWPoint moved = col.retraction(CWPoint{f, {sg / 2, 0.5}});
  CHECK(T2->cell(moved.cell).dim < 2);
  // identity on the lower skeleton, exactly
  int a = T2->find_cell("a");
  CWPoint p{a, {0.37}};
  CWPoint r = col.retraction(p);
  CHECK(point_dist(*T2, p, r) == 0.0);
  // deformation is stationary on the lower skeleton
  for (double s : {0.3, 0.8})
    CHECK(point_dist(*T2, as_cw(col.deformation.eval_cell(a, {0.37}, s)), p) == 0.0);
  CHECK_THROWS(collar_retraction(product(circle(), circle()), 2));  // not gathered
}

TEST_CASE("extend_into_connected uses the oracle") {
  ComplexPtr X = fixtures::circle_pair();  // edge attached to the base vertex
  MapTarget tgt = MapTarget::euclidean(2);
  CellwiseMap f(X, tgt);
  int vtx = X->base_cells()[0];
  f.set_piece(vtx, CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::euclidean(2),
                                          [](const Vec&) -> Value {
                                            return Vec{1.0, 0.0};
                                          },
                                          "f0"));
  // oracle: contract the boundary loop linearly to its own value (target is
  // the plane, so the straight line suffices and is tame after a ramp)
  SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
  NullHomotopyOracle oracle = [ramp](const OracleRequest& req)
      -> std::optional<OracleAnswer> {
    if (req.kind != OracleRequest::Kind::NullHomotopy) return std::nullopt;
    CubeMap b = req.boundary_map;
    OracleAnswer ans;
    ans.homotopy = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::boundary(req.dim)),
        Codomain::euclidean(2),
        [b, ramp](const Vec& x) -> Value {
          Vec y(x.begin(), x.end() - 1);
          Vec v = b.eval_vec(y);
          double u = ramp(x.back());
          return Vec{(1 - u) * v[0], (1 - u) * v[1]};
        },
        "null");
    ans.time_tameness = 0.2;
    return ans;
  };
  CellwiseMap g = extend_into_connected(X, f, oracle);
  // g extends f on the base
  CHECK(tgt.dist(g.eval_cell(vtx, {}), f.eval_cell(vtx, {})) == 0.0);
  // boundary of the new cell still matches through the compatibility law
  CHECK(validate_map(g).pass);
}

TEST_CASE("compress_into_subspace") {
  ComplexPtr X = fixtures::interval_pair();
  MapTarget tgt = MapTarget::euclidean(2);
  tgt.subspace = [](const Value& v) { return as_vec(v)[1] <= 0.25 + 1e-9; };
  // f already inside C: identity result with a stationary homotopy
  CellwiseMap low(X, tgt);
  for (const auto& c : X->cells()) {
    double at = c.name == "v1" ? 1.0 : 0.0;
    low.set_piece(c.id, CubeMap::from_callable(
                            CubeDomain::full_cube(c.dim), Codomain::euclidean(2),
                            [at](const Vec& y) -> Value {
                              return Vec{y.empty() ? at : y[0], 0.1};
                            },
                            "low"));
  }
  NullHomotopyOracle none = [](const OracleRequest&) -> std::optional<OracleAnswer> {
    return std::nullopt;
  };
  CompressResult same = compress_into_subspace(X, low, none);
  for (const Vec& t : sample(CubeDomain::full_cube(1), 17).points) {
    CHECK(tgt.dist(same.g.eval_cell(X->find_cell("e"), t),
                   low.eval_cell(X->find_cell("e"), t)) == 0.0);
    for (double s : {0.4, 1.0})
      CHECK(tgt.dist(same.H.eval_cell(X->find_cell("e"), t, s),
                     low.eval_cell(X->find_cell("e"), t)) == 0.0);
  }
  // a map with the interior above C: compress down with a vertical oracle
  CellwiseMap f(X, tgt);
  for (const auto& c : X->cells()) {
    bool is_base = X->in_base(c.id);
    double at = c.name == "v1" ? 1.0 : 0.0;
    f.set_piece(c.id, CubeMap::from_callable(
                          CubeDomain::full_cube(c.dim), Codomain::euclidean(2),
                          [is_base, at](const Vec& y) -> Value {
                            double t = y.empty() ? at : y[0];
                            SmoothFn1D T = smash_1d(SmashParams(0.2, 0.35));
                            return Vec{t, is_base ? 0.1 : 0.1 + 0.8 * T(t) * (1 - T(t)) * 4.0 * 0.3};
                          },
                          "f"));
  }
  SmoothFn1D ramp = smash_1d(SmashParams(0.2, 0.4));
  NullHomotopyOracle vertical = [ramp](const OracleRequest& req)
      -> std::optional<OracleAnswer> {
    if (req.kind != OracleRequest::Kind::Compression) return std::nullopt;
    CubeMap b = req.base_map;
    OracleAnswer ans;
    ans.homotopy = CubeMap::from_callable(
        CubeDomain::product_with_interval(CubeDomain::full_cube(req.dim)),
        Codomain::euclidean(2),
        [b, ramp](const Vec& x) -> Value {
          Vec y(x.begin(), x.end() - 1);
          Vec v = b.eval_vec(y);
          double u = ramp(x.back());
          double excess = std::max(0.0, v[1] - 0.1);
          v[1] -= u * excess;  // descend into C, fixing points already there
          return v;
        },
        "vertical");
    ans.time_tameness = 0.2;
    return ans;
  };
  CompressResult res = compress_into_subspace(X, f, vertical);
  int e = X->find_cell("e");
  for (const Vec& t : sample(CubeDomain::full_cube(1), 33).points) {
    CHECK(tgt.subspace(res.g.eval_cell(e, t)));
    CHECK(tgt.dist(res.H.eval_cell(e, t, 0.0), f.eval_cell(e, t)) <= 1e-9);
  }
  // stationary on the base
  for (int a : X->base_cells())
    for (double s : {0.3, 0.6, 1.0})
      CHECK(tgt.dist(res.H.eval_cell(a, {}, s), f.eval_cell(a, {})) <= 1e-9);
  CHECK(validate_homotopy(res.H, 5, 1e-7).pass);
}

TEST_CASE("subdivide_until_cover") {
  // constants need k = 1
  CubeMap cst = CubeMap::from_callable(CubeDomain::full_cube(1), Codomain::euclidean(1),
                                       [](const Vec&) -> Value { return Vec{0.3}; },
                                       "c");
  PointPredicate low = [](const Value& v) { return as_vec(v)[0] < 0.5; };
  PointPredicate high = [](const Value& v) { return as_vec(v)[0] >= 0.5; };
  SubdivisionCover c1 = subdivide_until_cover(cst, {low, high}, 8);
  CHECK(c1.k == 1);
  CHECK(c1.assignment == std::vector<int>{0});
  // single-region maps need k = 1
  CubeMap ramp = CubeMap::from_components(CubeDomain::full_cube(1),
                                          {Expr::var(0) * Expr::constant(0.4)},
                                          Codomain::euclidean(1));
  CHECK(subdivide_until_cover(ramp, {low, high}, 8).k == 1);
  // a crossing map needs the crossing resolved
  CubeMap cross = CubeMap::from_components(CubeDomain::full_cube(1), {Expr::var(0)},
                                           Codomain::euclidean(1));
  PointPredicate band_lo = [](const Value& v) { return as_vec(v)[0] <= 0.55; };
  PointPredicate band_hi = [](const Value& v) { return as_vec(v)[0] >= 0.45; };
  SubdivisionCover cc = subdivide_until_cover(cross, {band_lo, band_hi}, 32);
  CHECK(cc.k >= 2);
  // impossible covers fail at k_max
  PointPredicate never = [](const Value&) { return false; };
  CHECK_THROWS(subdivide_until_cover(cross, {never}, 4));
}

TEST_CASE("cellular approximation audits") {
  ComplexPtr S = circle();
  ComplexPtr T2 = torus();
  CellwiseMap f = fixtures::circle_into_torus_top(S, T2);
  CellularApproxResult res = cellular_approximation(f);
  for (const auto& c : S->cells()) {
    for (const Vec& t : sample(CubeDomain::full_cube(c.dim), 33).points) {
      CWPoint p = canonicalize(*T2, as_cw(res.g.eval_cell(c.id, t)));
      CHECK(T2->cell(p.cell).dim <= c.dim);
      CHECK(f.target().dist(res.H.eval_cell(c.id, t, 0.0), f.eval_cell(c.id, t)) <= 1e-9);
      CHECK(f.target().dist(res.H.eval_cell(c.id, t, 1.0), res.g.eval_cell(c.id, t)) <= 1e-9);
    }
  }
  CHECK(validate_map(res.g, 17).pass);
}
