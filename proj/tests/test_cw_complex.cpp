#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tamecell/cellwise.hpp"

using namespace tamecell;

TEST_CASE("demo complexes") {
  ComplexPtr I = interval();
  CHECK(I->cell_count() == 3);
  CHECK(I->gathered());
  CHECK(validate_complex(*I).pass);
  ComplexPtr S = circle();
  CHECK(S->cell_count() == 2);
  CHECK(S->gathered());
  ComplexPtr Q = square_gathered();
  CHECK(Q->cell_count() == 9);
  CHECK(Q->gathered());
  CHECK(validate_complex(*Q).pass);
  ComplexPtr T2 = torus();
  CHECK(T2->cell_count() == 4);
  CHECK(T2->gathered());
  CHECK(validate_complex(*T2).pass);
  CHECK(cube_complex(2)->cell_count() == 9);
  CHECK(!cube_complex(2)->gathered());
  CHECK(validate_complex(*cube_complex(2)).pass);
}

TEST_CASE("canonicalize") {
  ComplexPtr S = circle();
  int e = S->cells_of_dim(1)[0];
  int v = S->cells_of_dim(0)[0];
  // interior points stay put
  CWPoint p = canonicalize(*S, CWPoint{e, {0.3}});
  CHECK(p.cell == e);
  CHECK(p.coords[0] == doctest::Approx(0.3));
  // endpoints resolve to the unique vertex
  CHECK(canonicalize(*S, CWPoint{e, {1.0}}).cell == v);
  CHECK(canonicalize(*S, CWPoint{e, {0.0}}).cell == v);
  // torus: boundary points of the 2-cell match the attaching map (oracle)
  ComplexPtr T2 = torus();
  int f = T2->find_cell("f");
  const Cell& fc = T2->cell(f);
  for (const Vec& t : sample(CubeDomain::boundary(2), 9).points) {
    CWPoint via_phi = canonicalize(*T2, as_cw(fc.attaching.eval(t)));
    CWPoint via_can = canonicalize(*T2, CWPoint{f, t});
    CHECK(point_dist(*T2, via_phi, via_can) <= 1e-12);
  }
  // idempotence
  for (const Vec& t : sample(CubeDomain::full_cube(2), 7).points) {
    CWPoint once = canonicalize(*T2, CWPoint{f, t});
    CWPoint twice = canonicalize(*T2, once);
    CHECK(once.cell == twice.cell);
    CHECK(sup_dist(once.coords, twice.coords) == 0.0);
  }
  CHECK_THROWS(canonicalize(*S, CWPoint{e, {1.4}}));
}

TEST_CASE("validate_complex flags bad attachings") {
  // a 1-cell attaching into a 2-cell interior (higher skeleton)
  CWComplexBuilder b;
  int v = b.add_vertex("v");
  int f = b.add_cell("f", 2,
                     CubeMap::from_callable(CubeDomain::boundary(2), Codomain::complex(),
                                            [v](const Vec&) -> Value {
                                              return CWPoint{v, {}};
                                            },
                                            "const"),
                     0.4);
  b.add_cell("bad", 1,
             CubeMap::from_callable(CubeDomain::boundary(1), Codomain::complex(),
                                    [f](const Vec&) -> Value {
                                      return CWPoint{f, {0.5, 0.5}};
                                    },
                                    "bad"),
             0.4);
  ComplexPtr X = b.build();
  CHECK(!validate_complex(*X).pass);
}

TEST_CASE("validate_map and the compatibility law") {
  ComplexPtr T2 = torus();
  // constant map passes
  CellwiseMap cst = constant_map(T2, MapTarget::euclidean(2), Vec{1.0, 2.0});
  CHECK(validate_map(cst).pass);
  // perturbing one cell breaks the law with a located seam
  CellwiseMap broken = cst;
  broken.set_piece(T2->find_cell("f"),
                   CubeMap::from_callable(CubeDomain::full_cube(2), Codomain::euclidean(2),
                                          [](const Vec& y) -> Value {
                                            return Vec{1.0 + y[0], 2.0};
                                          },
                                          "broken"));
  VerificationReport rep = validate_map(broken);
  CHECK(!rep.pass);
  CHECK(rep.note.find("f") != std::string::npos);
  // the identity (characteristic inclusion viewpoint) passes
  CHECK(validate_map(identity_map(T2)).pass);
}

TEST_CASE("product counts and flags") {
  ComplexPtr I = interval();
  ComplexPtr IxI = product(I, I);
  CHECK(IxI->cell_count() == 9);
  CHECK(validate_complex(*IxI).pass);
  ComplexPtr pt = cube_complex(0);
  ComplexPtr S = circle();
  CHECK(product(S, pt)->cell_count() == S->cell_count());
  CHECK(product(S, pt)->gathered());
  ComplexPtr SxS = product(S, S);
  CHECK(SxS->cell_count() == S->cell_count() * S->cell_count());
  CHECK(!SxS->gathered());  // product attachings compose characteristic maps
  CHECK(validate_complex(*SxS).pass);
}

TEST_CASE("coproduct and quotient") {
  ComplexPtr I = interval();
  ComplexPtr S = circle();
  ComplexPtr C = coproduct(I, S);
  CHECK(C->cell_count() == I->cell_count() + S->cell_count());
  CHECK(C->gathered());
  // canonicalization stays within each summand (membership oracle)
  int left_edge = C->find_cell("l_e");
  int right_edge = C->find_cell("r_e");
  CHECK(C->cell(canonicalize(*C, CWPoint{left_edge, {1.0}}).cell).name.substr(0, 2) == "l_");
  CHECK(C->cell(canonicalize(*C, CWPoint{right_edge, {1.0}}).cell).name.substr(0, 2) == "r_");
  // I/dI is the circle with one vertex and one edge
  ComplexPtr q = quotient(I, {I->find_cell("v0"), I->find_cell("v1")});
  CHECK(q->cell_count() == 2);
  CHECK(q->gathered());
  CHECK(validate_complex(*q).pass);
  CHECK_THROWS(quotient(I, {}));
  CHECK_THROWS(quotient(I, {I->find_cell("e")}));  // not a subcomplex
  // count identity |X| - |A| + 1
  ComplexPtr Q = square_gathered();
  std::vector<int> border = {Q->find_cell("v00"), Q->find_cell("v10"),
                             Q->find_cell("v01"), Q->find_cell("v11"),
                             Q->find_cell("eb"),  Q->find_cell("er"),
                             Q->find_cell("et"),  Q->find_cell("el")};
  ComplexPtr disc = quotient(Q, border);
  CHECK(disc->cell_count() == Q->cell_count() - border.size() + 1);
}

TEST_CASE("subcomplex check") {
  ComplexPtr Q = square_gathered();
  CHECK(subcomplex_check(*Q, {Q->find_cell("v00")}));
  CHECK(subcomplex_check(*Q, {Q->find_cell("v00"), Q->find_cell("v10"),
                              Q->find_cell("eb")}));
  CHECK(!subcomplex_check(*Q, {Q->find_cell("eb")}));  // missing endpoints
  CHECK(!subcomplex_check(*Q, {99}));
}

TEST_CASE("mapping cylinder") {
  ComplexPtr S = circle();
  CellwiseMap id = identity_map(S);
  MappingCylinder M = mapping_cylinder(id);
  CHECK(M.complex->cell_count() == 3 * S->cell_count());  // X x I structure
  CHECK(validate_complex(*M.complex, 5).pass);
  // gamma o j = phi on dense samples (one thousand points per edge)
  for (const auto& c : S->cells()) {
    for (const Vec& t : sample(CubeDomain::full_cube(c.dim), c.dim == 1 ? 1001 : 1).points) {
      Value jx = M.embedding.eval_cell(c.id, t);
      Value gj = M.retraction.eval(as_cw(jx));
      CHECK(id.target().dist(gj, id.eval_cell(c.id, t)) <= 1e-9);
    }
  }
  // gamma restricted to the Y cells is the identity
  for (const auto& [yid, mid] : M.y_cells) {
    for (const Vec& t : sample(CubeDomain::full_cube(S->cell(yid).dim), 17).points) {
      Value v = M.retraction.eval_cell(mid, t);
      CHECK(point_dist(*S, as_cw(v), CWPoint{yid, t}) <= 1e-12);
    }
  }
  // non-cellular maps are refused: send the circle edge into a 2-cell
  ComplexPtr T2 = torus();
  CellwiseMap bad(S, MapTarget::cw(T2));
  int face = T2->find_cell("f");
  bad.set_piece(S->cells_of_dim(0)[0],
                CubeMap::from_callable(CubeDomain::full_cube(0), Codomain::complex(),
                                       [face](const Vec&) -> Value {
                                         return CWPoint{face, {0.5, 0.5}};
                                       },
                                       "bad"));
  bad.set_piece(S->cells_of_dim(1)[0],
                CubeMap::from_callable(CubeDomain::full_cube(1), Codomain::complex(),
                                       [face](const Vec&) -> Value {
                                         return CWPoint{face, {0.5, 0.5}};
                                       },
                                       "bad"));
  CHECK_THROWS(mapping_cylinder(bad));
}

TEST_CASE("complex JSON round-trips bit-exactly") {
  for (ComplexPtr X : {interval(), circle(), square_gathered(), torus()}) {
    std::string j1 = X->to_json();
    ComplexPtr Y = complex_from_json(j1);
    std::string j2 = Y->to_json();
    CHECK(j1 == j2);
    CHECK(X->cell_count() == Y->cell_count());
    CHECK(X->gathered() == Y->gathered());
    CHECK(validate_complex(*Y).pass);
  }
  CHECK_THROWS(complex_from_json("{"));
  CHECK_THROWS(complex_from_json("{\"cells\":[{\"name\":\"e\",\"dim\":1}]}"));
}
