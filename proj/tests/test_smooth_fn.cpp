#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/smooth_fn.hpp"
#include "tamecell/verify.hpp"

using namespace tamecell;

TEST_CASE("smash function satisfies the four conditions") {
  SmoothFn1D T = smash_1d(SmashParams(0.1, 0.25));
  CHECK(T(0.05) == 0.0);   // flat zone is exact
  CHECK(T(0.5) == doctest::Approx(0.5));
  CHECK(T(0.97) == 1.0);
  CHECK(std::abs(T(0.2) - (1.0 - T(0.8))) < 1e-12);
  for (int i = 0; i <= 2000; ++i) {
    double t = -0.3 + 1.6 * i / 2000.0;
    if (t <= 0.1) CHECK(T(t) == 0.0);
    if (t >= 0.25 && t <= 0.75) CHECK(std::abs(T(t) - t) < 1e-15);
    if (t >= 0.9) CHECK(T(t) == 1.0);
    CHECK(std::abs(T(1 - t) - (1 - T(t))) < 1e-12);
  }
}

TEST_CASE("smash is non-decreasing") {
  for (auto [sig, tau] : {std::pair{0.0, 0.5}, {0.1, 0.25}, {0.3, 0.31}, {0.49, 0.5}}) {
    SmoothFn1D T = smash_1d(SmashParams(sig, tau));
    VerificationReport rep = check_monotone(T, 4001, -0.25, 1.25);
    CHECK(rep.pass);
  }
}

TEST_CASE("smash rejects bad parameters") {
  CHECK_THROWS(SmashParams(0.3, 0.2));
  CHECK_THROWS(SmashParams(-0.1, 0.2));
  CHECK_THROWS(SmashParams(0.2, 0.6));
  CHECK_THROWS(SmashParams(0.2, 0.2));
}

TEST_CASE("flat zone metadata is sound") {
  // property: sampled values inside every declared flat zone are constant
  auto sound = [](const SmoothFn1D& f) {
    for (const auto& z : f.flat_zones()) {
      double lo = std::max(z.lo, -2.0), hi = std::min(z.hi, 3.0);
      if (lo > hi) continue;
      for (int i = 0; i <= 50; ++i) {
        double t = lo + (hi - lo) * i / 50.0;
        CHECK(std::abs(f(t) - z.value) < 1e-12);
      }
    }
  };
  sound(smash_1d(SmashParams(0.1, 0.25)));
  sound(mu(SmashParams(0.1, 0.25)));
  sound(SmoothFn1D::step());
  sound(smash_1d(SmashParams(0.2, 0.3)) * SmoothFn1D::polynomial({1.0, 2.0}) +
        SmoothFn1D::constant(3.0));
  sound(time_ramp(0.3));
  SmoothFn1D T = smash_1d(SmashParams(0.1, 0.2));
  sound(T.reparam(2.0, -0.5));
  sound(SmoothFn1D::compose(SmoothFn1D::exp_fn(), T));
}

TEST_CASE("mu is the smooth tame tent") {
  SmoothFn1D m = mu(SmashParams(0.1, 0.25));
  CHECK(m(0.0) == 0.0);
  CHECK(m(1.0) == 0.0);
  // derived from the smash oracle: T(1) - T(0)
  SmoothFn1D T = smash_1d(SmashParams(0.1, 0.25));
  CHECK(m(0.5) == doctest::Approx(T(1.0) - T(0.0)));
  CHECK(m(0.5) == 1.0);
}

TEST_CASE("psi and step primitives") {
  SmoothFn1D p = SmoothFn1D::psi();
  CHECK(p(-1.0) == 0.0);
  CHECK(p(0.0) == 0.0);
  CHECK(p(1.0) == doctest::Approx(std::exp(-1.0)));
  SmoothFn1D s = SmoothFn1D::step();
  CHECK(s(0.0) == 0.0);
  CHECK(s(1.0) == 1.0);
  CHECK(s(0.5) == doctest::Approx(0.5));
  CHECK(s(0.25) + s(0.75) == doctest::Approx(1.0));
}

TEST_CASE("flat gluing requires certified breakpoints") {
  SmoothFn1D T = smash_1d(SmashParams(0.1, 0.25));
  // T is flat around 1.5 with value 1; gluing a constant there is certified
  SmoothFn1D glued = SmoothFn1D::flat_glue({1.5}, {T, SmoothFn1D::constant(1.0)});
  CHECK(glued(0.5) == doctest::Approx(0.5));
  CHECK(glued(2.0) == 1.0);
  // the identity has no flat zone anywhere: refuse
  CHECK_THROWS(SmoothFn1D::flat_glue({0.5}, {SmoothFn1D::identity(),
                                             SmoothFn1D::identity()}));
  // mismatched flat values: refuse
  CHECK_THROWS(SmoothFn1D::flat_glue({1.5}, {T, SmoothFn1D::constant(0.5)}));
}

TEST_CASE("time ramp covers [0, eps/2]") {
  double eps = 0.3;
  SmoothFn1D r = time_ramp(eps);
  CHECK(r(0.0) == 0.0);
  CHECK(r(eps / 2.0) == 1.0);
  CHECK(r(eps * eps / 2.0) == 0.0);  // flat head
  CHECK(check_monotone(r, 2001, 0.0, eps / 2).pass);
}
