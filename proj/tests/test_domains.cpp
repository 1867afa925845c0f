#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/domains.hpp"

using namespace tamecell;

TEST_CASE("membership basics") {
  CubeDomain J1 = CubeDomain::horn_j(2);
  CHECK(J1.contains({0.0, 0.3}));
  CHECK(J1.contains({1.0, 0.3}));
  CHECK(J1.contains({0.5, 1.0}));
  CHECK(!J1.contains({0.5, 0.0}));
  CHECK(!J1.contains({0.5, 0.5}));
  CubeDomain cham = CubeDomain::full_cube(2).chamber(0.25);
  CHECK(cham.contains({0.5, 0.5}));
  CHECK(!cham.contains({0.1, 0.5}));
  CHECK_THROWS(cham.contains({0.1}));  // dimension mismatch
}

TEST_CASE("chambers per the face definition") {
  // chamber(I^2, 0.25) = [0.25, 0.75]^2
  CubeDomain c = CubeDomain::full_cube(2).chamber(0.25);
  CHECK(c.contains({0.25, 0.75}));
  CHECK(!c.contains({0.24, 0.5}));
  // chamber(J^1, eps) contains (1, 0.5) for any eps <= 0.5:
  // derived oracle: enumerate the maximal faces of J^1 and intersect.
  for (double eps : {0.1, 0.3, 0.5}) {
    CubeDomain jc = CubeDomain::horn_j(2).chamber(eps);
    bool oracle = false;
    // faces of J^1: {0} x I, {1} x I, I x {1}; face chambers shrink the free axis
    Vec x{1.0, 0.5};
    if (x[0] == 0.0 && x[1] >= eps && x[1] <= 1 - eps) oracle = true;
    if (x[0] == 1.0 && x[1] >= eps && x[1] <= 1 - eps) oracle = true;
    if (x[1] == 1.0 && x[0] >= eps && x[0] <= 1 - eps) oracle = true;
    CHECK(jc.contains(x) == oracle);
    CHECK(jc.contains(x));
  }
  // degenerate chamber at 1/2 is the set of face centers
  CubeDomain half = CubeDomain::boundary(2).chamber(0.5);
  CHECK(half.contains({0.5, 0.0}));
  CHECK(half.contains({1.0, 0.5}));
  CHECK(!half.contains({0.3, 0.0}));
}

TEST_CASE("horn decomposition of the boundary") {
  // J u (I^{n-1} x {0}) = dI^n  and  J n (I^{n-1} x {0}) = dI^{n-1} x {0}
  for (int n = 1; n <= 4; ++n) {
    CubeDomain J = CubeDomain::horn_j(n);
    CubeDomain B = CubeDomain::boundary(n);
    std::vector<AxisRange> bottom_axes(size_t(n), {0.0, 1.0});
    bottom_axes[size_t(n - 1)] = {0.0, 0.0};
    CubeDomain bottom = CubeDomain::box(bottom_axes);
    SampleGrid g = sample(B, n <= 2 ? 21 : (n == 3 ? 9 : 5));
    for (const Vec& x : g.points) {
      bool inJ = J.contains(x), inBot = bottom.contains(x);
      CHECK((inJ || inBot));  // union covers the boundary
      if (inJ && inBot) {
        // intersection: dI^{n-1} x {0}
        bool on_lower_boundary = false;
        for (int j = 0; j + 1 < n; ++j)
          if (x[size_t(j)] == 0.0 || x[size_t(j)] == 1.0) on_lower_boundary = true;
        CHECK(x[size_t(n - 1)] == 0.0);
        CHECK((n == 1 || on_lower_boundary));
      }
    }
  }
}

TEST_CASE("subcube charts invert to identity") {
  for (auto [n, k] : {std::pair{1, 2}, {2, 3}, {3, 2}}) {
    auto charts = subcube_lattice(n, k);
    CHECK(int(charts.size()) == int(std::pow(k, n)));
    SampleGrid g = sample(CubeDomain::full_cube(n), 5);
    for (const auto& ch : charts)
      for (const Vec& x : g.points) {
        Vec back = ch.to_local(ch.to_global(x));
        CHECK(sup_dist(back, x) <= 1e-14);
      }
  }
  // n=1, k=2 endpoints: [0, 1/2], [1/2, 1]
  auto charts = subcube_lattice(1, 2);
  CHECK(charts[0].to_global({0.0})[0] == 0.0);
  CHECK(charts[0].to_global({1.0})[0] == 0.5);
  CHECK(charts[1].to_global({0.0})[0] == 0.5);
  CHECK(charts[1].to_global({1.0})[0] == 1.0);
  // chart of J_k = (2,1), k=2 maps (0,0) to (1/2, 0)
  auto c22 = subcube_lattice(2, 2);
  for (const auto& ch : c22)
    if (ch.index == std::vector<int>{2, 1}) {
      Vec g0 = ch.to_global({0.0, 0.0});
      CHECK(g0[0] == 0.5);
      CHECK(g0[1] == 0.0);
    }
}

TEST_CASE("nested chambers shrink") {
  CubeDomain c1 = CubeDomain::full_cube(2).chamber(0.1);
  CubeDomain c2 = c1.chamber(0.2);
  SampleGrid g = sample(c2, 9);
  for (const Vec& x : g.points) CHECK(c1.contains(x));
}

TEST_CASE("faces and sampling") {
  CHECK(faces(1).size() == 2);
  CHECK(faces(3).size() == 6);
  CHECK(sample(CubeDomain::full_cube(1), 5).points.size() == 5);
  CHECK(sample(CubeDomain::boundary(2), 3).points.size() == 8);
  // every sample of J^1 satisfies membership (oracle)
  CubeDomain J = CubeDomain::horn_j(2);
  for (const Vec& x : sample(J, 9).points) CHECK(J.contains(x));
  // jittered samples stay inside
  for (const Vec& x : sample(J, 9, 42).points) CHECK(J.contains(x, 1e-9));
}
