#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/dsl.hpp"
#include "tamecell/suites.hpp"

using namespace tamecell;

TEST_CASE("parse basics") {
  dsl::Program p = dsl::parse("T = smash(0.1, 0.25; t1)\n");
  CHECK(p.decls.size() == 1);
  CHECK(p.decls[0].name == "T");
  CHECK(dsl::arity(p, "T") == 1);
  CHECK(dsl::width(p, "T") == 1);
  // syntax error with position
  try {
    dsl::parse("f = sin(");
    CHECK(false);
  } catch (const dsl::ParseError& e) {
    CHECK(std::string(e.what()).find("syntax error") != std::string::npos);
    CHECK(e.line == 1);
    CHECK(e.column >= 8);
  }
  // unknown identifier and dimension mismatch are distinct
  CHECK_THROWS_WITH_AS(dsl::parse("f = nope"), doctest::Contains("unknown identifier"),
                       dsl::ParseError);
  CHECK_THROWS_WITH_AS(dsl::parse("g = t1 + t2\nh = compose(g; t1)"),
                       doctest::Contains("dimension mismatch"), dsl::ParseError);
}

TEST_CASE("evaluate") {
  dsl::Program p = dsl::parse("T = smash(0.1, 0.25; t1)\n");
  CHECK(dsl::evaluate(p, "T", {0.5})[0] == doctest::Approx(0.5));
  dsl::Program q = dsl::parse("m = tuple(t1, t2 * t2, sin(t1 + t2))\n");
  CHECK(dsl::evaluate(q, "m", {0.5, 0.25}).size() == 3);
  CHECK(dsl::width(q, "m") == 3);
  CHECK_THROWS(dsl::evaluate(q, "missing", {0.0, 0.0}));
  // DSL-built T^n equals the library construction on 1000 points
  dsl::Program t2 = dsl::parse(
      "T2 = tuple(smash(0.1, 0.25; t1), smash(0.1, 0.25; t2))\n");
  CubeMap lib = smash_nd(2, SmashParams(0.1, 0.25));
  CubeMap lowered = dsl::to_cube_map(t2, "T2");
  fixtures::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.next(), rng.next()};
    CHECK(sup_dist(dsl::evaluate(t2, "T2", x), lib.eval_vec(x)) <= 1e-12);
    CHECK(sup_dist(lowered.eval_vec(x), lib.eval_vec(x)) <= 1e-12);
  }
}

TEST_CASE("round trip on the golden corpus") {
  auto corpus = fixtures::dsl_corpus();
  CHECK(corpus.size() == 50);
  for (const std::string& text : corpus) {
    dsl::Program p1 = dsl::parse(text);
    std::string printed = dsl::print(p1);
    dsl::Program p2 = dsl::parse(printed);
    CHECK(dsl::equal(p1, p2));
    CHECK(dsl::print(p2) == printed);
  }
}

TEST_CASE("references and composition") {
  dsl::Program p = dsl::parse(
      "a = t1 * 2\n"
      "b = a + 1\n"
      "c = compose(b; t1 - 0.5)\n");
  CHECK(dsl::evaluate(p, "b", {0.25})[0] == doctest::Approx(1.5));
  CHECK(dsl::evaluate(p, "c", {0.75})[0] == doctest::Approx(0.5 + 1.0));
  CubeMap m = dsl::to_cube_map(p, "c");
  CHECK(m.eval_vec({0.75})[0] == doctest::Approx(1.5));
  // duplicate declarations rejected
  CHECK_THROWS(dsl::parse("x = 1\nx = 2"));
}
