#include "tamecell/cw_complex.hpp"

#include "tamecell/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tamecell {

using njson = nlohmann::ordered_json;

const Cell& CWComplex::cell(int id) const {
  if (id < 0 || id >= int(cells_.size())) fail("cell id out of range");
  return cells_[size_t(id)];
}

int CWComplex::find_cell(const std::string& name) const {
  for (const auto& c : cells_)
    if (c.name == name) return c.id;
  return -1;
}

std::vector<int> CWComplex::cells_of_dim(int d) const {
  std::vector<int> out;
  for (const auto& c : cells_)
    if (c.dim == d) out.push_back(c.id);
  return out;
}

bool CWComplex::in_base(int id) const {
  return std::find(base_.begin(), base_.end(), id) != base_.end();
}

int CWComplexBuilder::add_vertex(const std::string& name) {
  Cell c;
  c.id = int(cells_.size());
  c.name = name;
  c.dim = 0;
  cells_.push_back(std::move(c));
  return cells_.back().id;
}

int CWComplexBuilder::add_cell(const std::string& name, int dim,
                               CubeMap attaching,
                               std::optional<double> tame_eps,
                               std::string attach_recipe) {
  if (dim < 1) fail("add_cell: use add_vertex for dimension 0");
  Cell c;
  c.id = int(cells_.size());
  c.name = name;
  c.dim = dim;
  c.attaching = std::move(attaching);
  c.tame_eps = tame_eps;
  c.attach_recipe = std::move(attach_recipe);
  cells_.push_back(std::move(c));
  return cells_.back().id;
}

void CWComplexBuilder::mark_base(int id) { base_.push_back(id); }

ComplexPtr CWComplexBuilder::build() {
  auto X = std::make_shared<CWComplex>();
  X->cells_ = std::move(cells_);
  X->base_ = std::move(base_);
  X->dim_ = -1;
  bool gathered = true;
  for (const auto& c : X->cells_) {
    X->dim_ = std::max(X->dim_, c.dim);
    if (c.dim >= 1 && !c.tame_eps) gathered = false;
  }
  X->gathered_ = gathered && !X->cells_.empty();
  cells_.clear();
  base_.clear();
  return X;
}

CWPoint canonicalize(const CWComplex& X, CWPoint p) {
  for (;;) {
    const Cell& c = X.cell(p.cell);
    if (c.dim == 0) {
      p.coords.clear();
      return p;
    }
    if (int(p.coords.size()) != c.dim) fail("canonicalize: coordinate arity mismatch");
    bool boundary = false;
    for (auto& t : p.coords) {
      if (t < -kMembershipTol || t > 1 + kMembershipTol)
        fail("canonicalize: coordinates outside the cube");
      if (std::abs(t) <= kMembershipTol) {
        t = 0.0;
        boundary = true;
      } else if (std::abs(t - 1.0) <= kMembershipTol) {
        t = 1.0;
        boundary = true;
      }
    }
    if (!boundary) return p;
    Value v = c.attaching.eval(p.coords);
    p = as_cw(v);
  }
}

double point_dist(const CWComplex& X, const CWPoint& a, const CWPoint& b) {
  CWPoint ca = canonicalize(X, a);
  CWPoint cb = canonicalize(X, b);
  if (ca.cell != cb.cell) return 1.0;
  return sup_dist(ca.coords, cb.coords);
}

bool same_point(const CWComplex& X, const CWPoint& a, const CWPoint& b,
                double tol) {
  return point_dist(X, a, b) <= tol;
}

VerificationReport validate_complex(const CWComplex& X, int grid) {
  VerificationReport rep;
  rep.check = "complex";
  rep.tol = kComposedTol;
  rep.grid = "grid=" + std::to_string(grid);
  for (const auto& c : X.cells()) {
    if (c.dim == 0) continue;
    if (!c.attaching.valid()) {
      rep.pass = false;
      rep.note = "cell " + c.name + " has no attaching map";
      return rep;
    }
    SampleGrid g = sample(CubeDomain::boundary(c.dim), grid);
    for (const Vec& t : g.points) {
      CWPoint v = as_cw(c.attaching.eval(t));
      const Cell& target = X.cell(v.cell);
      if (target.dim >= c.dim) {
        rep.pass = false;
        rep.merge_violation(1.0, t);
        rep.note = "cell " + c.name + " attaches to dimension " +
                   std::to_string(target.dim);
      }
      CWPoint canon = canonicalize(X, v);
      double d = v.cell == canon.cell ? sup_dist(v.coords, canon.coords) : 1.0;
      if (d > kComposedTol) {
        rep.merge_violation(d, t);
        rep.note = "cell " + c.name + " attaching not canonical";
      }
    }
    if (c.tame_eps) {
      VerificationReport tame = check_tame(c.attaching, *c.tame_eps,
                                           std::max(5, grid), kComposedTol);
      if (!tame.pass) {
        rep.pass = false;
        rep.worst = std::max(rep.worst, tame.worst);
        rep.note = "cell " + c.name + " tameness certificate fails";
      }
    }
  }
  return rep;
}

bool subcomplex_check(const CWComplex& X, const std::vector<int>& cells) {
  std::set<int> in(cells.begin(), cells.end());
  for (int id : cells) {
    if (id < 0 || id >= int(X.cell_count())) return false;
    const Cell& c = X.cell(id);
    if (c.dim == 0) continue;
    // Attaching values of a member cell must land in member cells.
    SampleGrid g = sample(CubeDomain::boundary(c.dim), 5);
    for (const Vec& t : g.points) {
      CWPoint v = canonicalize(X, as_cw(c.attaching.eval(t)));
      if (!in.count(v.cell)) return false;
    }
  }
  return true;
}

// ---- attaching recipes ----

namespace {

CubeMap constant_attach(int n, const CWPoint& at) {
  return CubeMap::from_callable(
      CubeDomain::boundary(n), Codomain::complex(),
      [at](const Vec&) -> Value { return at; }, "attach.constant");
}

CubeMap endpoints_attach(int v0, int v1) {
  return CubeMap::from_callable(
      CubeDomain::boundary(1), Codomain::complex(),
      [v0, v1](const Vec& t) -> Value {
        return CWPoint{t[0] < 0.5 ? v0 : v1, {}};
      },
      "attach.endpoints");
}

struct EdgeRef {
  int edge;
  bool reverse;
  CWPoint at0;  // canonical value of the edge at parameter 0
  CWPoint at1;
};

// Tame traversal of the square boundary: bottom (t,0), right (1,t),
// top (t,1), left (0,t); each edge at parameter T(t) (or T(1-t) reversed).
// Flat zones of T make the corners locally constant, so this attaching is
// sigma-tame.
CubeMap edge_loop_attach(const SmashParams& p, std::array<EdgeRef, 4> edges) {
  SmoothFn1D T = smash_1d(p);
  auto point_on = [](const EdgeRef& e, double s) -> CWPoint {
    if (s <= 0.0) return e.reverse ? e.at1 : e.at0;
    if (s >= 1.0) return e.reverse ? e.at0 : e.at1;
    return CWPoint{e.edge, {e.reverse ? 1.0 - s : s}};
  };
  return CubeMap::from_callable(
      CubeDomain::boundary(2), Codomain::complex(),
      [T, edges, point_on](const Vec& x) -> Value {
        double u = x[0], v = x[1];
        if (std::abs(v) <= kMembershipTol) return point_on(edges[0], T(u));
        if (std::abs(u - 1) <= kMembershipTol) return point_on(edges[1], T(v));
        if (std::abs(v - 1) <= kMembershipTol) return point_on(edges[2], T(u));
        if (std::abs(u) <= kMembershipTol) return point_on(edges[3], T(v));
        fail("edge_loop attach: point not on the square boundary");
      },
      "attach.edge_loop");
}

EdgeRef edge_ref(const std::vector<Cell>& cells, int edge, bool reverse) {
  const Cell& e = cells[size_t(edge)];
  CWPoint a0 = as_cw(e.attaching.eval({0.0}));
  CWPoint a1 = as_cw(e.attaching.eval({1.0}));
  return {edge, reverse, a0, a1};
}

}  // namespace

// ---- demo complexes ----

ComplexPtr interval() {
  CWComplexBuilder b;
  int v0 = b.add_vertex("v0");
  int v1 = b.add_vertex("v1");
  njson rec = {{"kind", "endpoints"}, {"at0", "v0"}, {"at1", "v1"}};
  b.add_cell("e", 1, endpoints_attach(v0, v1), 0.45, rec.dump());
  return b.build();
}

ComplexPtr circle() {
  ComplexPtr I = interval();
  return quotient(I, {I->find_cell("v0"), I->find_cell("v1")});
}

ComplexPtr cube_complex(int n) {
  if (n < 0) fail("cube_complex: negative dimension");
  CWComplexBuilder b;
  // Faces indexed by patterns over {'0','1','f'}.
  std::vector<std::string> patterns;
  {
    std::string cur(size_t(n), '0');
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (size_t code = 0; code < total; ++code) {
      size_t c = code;
      for (int i = 0; i < n; ++i) {
        cur[size_t(i)] = "01f"[c % 3];
        c /= 3;
      }
      patterns.push_back(cur);
    }
  }
  std::sort(patterns.begin(), patterns.end(),
            [](const std::string& a, const std::string& b) {
              auto da = std::count(a.begin(), a.end(), 'f');
              auto db = std::count(b.begin(), b.end(), 'f');
              return da != db ? da < db : a < b;
            });
  std::map<std::string, int> id_of;
  for (const auto& pat : patterns) {
    int d = int(std::count(pat.begin(), pat.end(), 'f'));
    std::string name = "c" + pat;
    if (d == 0) {
      id_of[pat] = b.add_vertex(name);
      continue;
    }
    // Attaching: pin every boundary coordinate of the face at once.
    auto ids = std::make_shared<std::map<std::string, int>>(id_of);
    std::string pattern = pat;
    auto attach = [ids, pattern](const Vec& t) -> Value {
      std::string target = pattern;
      Vec rest;
      size_t fi = 0;
      for (char& ch : target) {
        if (ch != 'f') continue;
        double v = t[fi++];
        if (std::abs(v) <= kMembershipTol)
          ch = '0';
        else if (std::abs(v - 1.0) <= kMembershipTol)
          ch = '1';
        else
          rest.push_back(v);
      }
      auto it = ids->find(target);
      if (it == ids->end()) fail("cube_complex: missing face");
      return CWPoint{it->second, rest};
    };
    njson rec = {{"kind", "cube_face"}};
    std::optional<double> eps;
    if (d == 1) eps = 0.45;  // vacuously tame: discrete attaching domain
    id_of[pat] = b.add_cell(name, d,
                            CubeMap::from_callable(CubeDomain::boundary(d),
                                                   Codomain::complex(), attach,
                                                   "attach.cube_face"),
                            eps, rec.dump());
  }
  return b.build();
}

namespace {

// Shared tame parameters for the gathered demo complexes. The wide flats
// keep the collar machinery comfortable at desk scale.
constexpr double kDemoSigma = 0.35;
constexpr double kDemoTau = 0.45;

njson edge_loop_recipe(const std::vector<std::string>& edges,
                       double sigma = kDemoSigma, double tau = kDemoTau) {
  return {{"kind", "edge_loop"},
          {"sigma", sigma},
          {"tau", tau},
          {"bottom", edges[0]},
          {"right", edges[1]},
          {"top", edges[2]},
          {"left", edges[3]}};
}

}  // namespace

namespace {
ComplexPtr square_gathered_with(const SmashParams& p, bool mark_boundary_base);
}

ComplexPtr square_gathered() {
  return square_gathered_with(SmashParams(kDemoSigma, kDemoTau), false);
}

namespace {
ComplexPtr square_gathered_with(const SmashParams& p, bool mark_boundary_base) {
  CWComplexBuilder b;
  int v00 = b.add_vertex("v00");
  int v10 = b.add_vertex("v10");
  int v01 = b.add_vertex("v01");
  int v11 = b.add_vertex("v11");
  auto ep = [](const char* a, const char* c) {
    return njson{{"kind", "endpoints"}, {"at0", a}, {"at1", c}}.dump();
  };
  int eb = b.add_cell("eb", 1, endpoints_attach(v00, v10), 0.45, ep("v00", "v10"));
  int er = b.add_cell("er", 1, endpoints_attach(v10, v11), 0.45, ep("v10", "v11"));
  int et = b.add_cell("et", 1, endpoints_attach(v01, v11), 0.45, ep("v01", "v11"));
  int el = b.add_cell("el", 1, endpoints_attach(v00, v01), 0.45, ep("v00", "v01"));
  std::array<EdgeRef, 4> refs = {
      EdgeRef{eb, false, {v00, {}}, {v10, {}}},
      EdgeRef{er, false, {v10, {}}, {v11, {}}},
      EdgeRef{et, false, {v01, {}}, {v11, {}}},
      EdgeRef{el, false, {v00, {}}, {v01, {}}},
  };
  b.add_cell("f", 2, edge_loop_attach(p, refs), p.sigma,
             edge_loop_recipe({"eb", "er", "et", "el"}, p.sigma, p.tau).dump());
  if (mark_boundary_base)
    for (int id : {v00, v10, v01, v11, eb, er, et, el}) b.mark_base(id);
  return b.build();
}
}  // namespace

ComplexPtr cube_pair(int d, const SmashParams& p) {
  if (d == 0) {
    CWComplexBuilder b;
    b.add_vertex("c");
    return b.build();
  }
  if (d == 1) {
    CWComplexBuilder b;
    int v0 = b.add_vertex("v0");
    int v1 = b.add_vertex("v1");
    b.add_cell("e", 1, endpoints_attach(v0, v1), 0.45);
    b.mark_base(v0);
    b.mark_base(v1);
    return b.build();
  }
  if (d == 2) return square_gathered_with(p, true);
  fail("cube_pair: only d <= 2 supported at desk scale");
}

ComplexPtr torus() {
  CWComplexBuilder b;
  int v = b.add_vertex("v");
  auto loop_rec = njson{{"kind", "endpoints"}, {"at0", "v"}, {"at1", "v"}}.dump();
  int a = b.add_cell("a", 1, endpoints_attach(v, v), 0.45, loop_rec);
  int bb = b.add_cell("b", 1, endpoints_attach(v, v), 0.45, loop_rec);
  std::array<EdgeRef, 4> refs = {
      EdgeRef{a, false, {v, {}}, {v, {}}},
      EdgeRef{bb, false, {v, {}}, {v, {}}},
      EdgeRef{a, false, {v, {}}, {v, {}}},
      EdgeRef{bb, false, {v, {}}, {v, {}}},
  };
  SmashParams p(kDemoSigma, kDemoTau);
  b.add_cell("f", 2, edge_loop_attach(p, refs), kDemoSigma,
             edge_loop_recipe({"a", "b", "a", "b"}).dump());
  return b.build();
}

// ---- constructions ----

ComplexPtr coproduct(const ComplexPtr& X, const ComplexPtr& Y) {
  CWComplexBuilder b;
  auto copy_in = [&b](const ComplexPtr& Z, const std::string& prefix, int offset) {
    for (const auto& c : Z->cells()) {
      if (c.dim == 0) {
        b.add_vertex(prefix + c.name);
        continue;
      }
      CubeMap att = c.attaching;
      auto shifted = [att, offset](const Vec& t) -> Value {
        CWPoint p = as_cw(att.eval(t));
        p.cell += offset;
        return p;
      };
      b.add_cell(prefix + c.name, c.dim,
                 CubeMap::from_callable(att.domain(), Codomain::complex(),
                                        shifted, "attach.coproduct"),
                 c.tame_eps);
    }
  };
  copy_in(X, "l_", 0);
  copy_in(Y, "r_", int(X->cell_count()));
  for (int id : X->base_cells()) b.mark_base(id);
  for (int id : Y->base_cells()) b.mark_base(id + int(X->cell_count()));
  return b.build();
}

ComplexPtr product(const ComplexPtr& X, const ComplexPtr& Y) {
  CWComplexBuilder b;
  std::map<std::pair<int, int>, int> pair_id;
  // Cells ordered by total dimension so attachings reference built cells.
  std::vector<std::pair<int, int>> pairs;
  for (const auto& cx : X->cells())
    for (const auto& cy : Y->cells()) pairs.emplace_back(cx.id, cy.id);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const std::pair<int, int>& a, const std::pair<int, int>& c) {
                     return X->cell(a.first).dim + Y->cell(a.second).dim <
                            X->cell(c.first).dim + Y->cell(c.second).dim;
                   });
  ComplexPtr Xc = X, Yc = Y;
  auto table = std::make_shared<std::map<std::pair<int, int>, int>>();
  for (const auto& [ix, iy] : pairs) {
    const Cell& cx = X->cell(ix);
    const Cell& cy = Y->cell(iy);
    int p = cx.dim, q = cy.dim;
    std::string name = cx.name + "x" + cy.name;
    if (p + q == 0) {
      pair_id[{ix, iy}] = b.add_vertex(name);
      (*table)[{ix, iy}] = pair_id[{ix, iy}];
      continue;
    }
    int ixc = ix, iyc = iy;
    auto attach = [Xc, Yc, table, ixc, iyc, p, q](const Vec& w) -> Value {
      Vec u(w.begin(), w.begin() + p);
      Vec v(w.begin() + p, w.end());
      CWPoint px = canonicalize(*Xc, CWPoint{ixc, u});
      CWPoint py = canonicalize(*Yc, CWPoint{iyc, v});
      auto it = table->find({px.cell, py.cell});
      if (it == table->end()) fail("product: missing pair cell");
      Vec coords = px.coords;
      coords.insert(coords.end(), py.coords.begin(), py.coords.end());
      return CWPoint{it->second, coords};
    };
    // Product attachings compose characteristic maps, so tameness is lost
    // whenever both factors have positive dimension.
    std::optional<double> eps;
    if (p + q == 1) eps = 0.45;
    else if (q == 0) eps = cx.tame_eps;
    else if (p == 0) eps = cy.tame_eps;
    pair_id[{ix, iy}] =
        b.add_cell(name, p + q,
                   CubeMap::from_callable(CubeDomain::boundary(p + q),
                                          Codomain::complex(), attach,
                                          "attach.product"),
                   eps);
    (*table)[{ix, iy}] = pair_id[{ix, iy}];
  }
  for (int bx : X->base_cells())
    for (int by : Y->base_cells()) b.mark_base(pair_id[{bx, by}]);
  return b.build();
}

ComplexPtr quotient(const ComplexPtr& X, const std::vector<int>& a_cells) {
  if (a_cells.empty()) fail("quotient: A must be a nonempty subcomplex");
  if (!subcomplex_check(*X, a_cells)) fail("quotient: A is not a subcomplex");
  CWComplexBuilder b;
  int star = b.add_vertex("*");
  std::set<int> in_a(a_cells.begin(), a_cells.end());
  auto remap = std::make_shared<std::map<int, int>>();
  ComplexPtr Xc = X;
  for (const auto& c : X->cells()) {
    if (in_a.count(c.id)) continue;
    if (c.dim == 0) {
      (*remap)[c.id] = b.add_vertex(c.name);
      continue;
    }
    CubeMap att = c.attaching;
    auto star_set = std::make_shared<std::set<int>>(in_a);
    auto attach = [Xc, att, remap, star_set, star](const Vec& t) -> Value {
      CWPoint p = canonicalize(*Xc, as_cw(att.eval(t)));
      if (star_set->count(p.cell)) return CWPoint{star, {}};
      auto it = remap->find(p.cell);
      if (it == remap->end()) fail("quotient: unmapped cell");
      return CWPoint{it->second, p.coords};
    };
    // Serializable recipe when the projected attaching is constant to *.
    std::string recipe;
    {
      bool all_star = true;
      for (const Vec& t : sample(CubeDomain::boundary(c.dim), 5).points)
        if (as_cw(attach(t)).cell != star) all_star = false;
      if (all_star) recipe = njson{{"kind", "constant"}, {"cell", "*"}}.dump();
    }
    (*remap)[c.id] =
        b.add_cell(c.name, c.dim,
                   CubeMap::from_callable(att.domain(), Codomain::complex(),
                                          attach, "attach.quotient"),
                   c.tame_eps, recipe);
  }
  return b.build();
}

// ---- (de)serialization ----

std::string CWComplex::to_json() const {
  njson out;
  out["cells"] = njson::array();
  for (const auto& c : cells_) {
    njson jc;
    jc["name"] = c.name;
    jc["dim"] = c.dim;
    if (!c.attach_recipe.empty()) jc["attach"] = njson::parse(c.attach_recipe);
    if (c.tame_eps) jc["tame_eps"] = *c.tame_eps;
    out["cells"].push_back(jc);
  }
  out["base"] = njson::array();
  for (int id : base_) out["base"].push_back(cells_[size_t(id)].name);
  return out.dump(2);
}

ComplexPtr complex_from_json(const std::string& text) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("complex JSON parse error: ") + e.what());
  }
  if (!j.contains("cells")) fail("complex JSON: missing 'cells'");
  CWComplexBuilder b;
  std::map<std::string, int> id_of;
  std::vector<Cell> built;  // for edge endpoint resolution
  for (const auto& jc : j["cells"]) {
    std::string name = jc.at("name").get<std::string>();
    int dim = jc.at("dim").get<int>();
    if (id_of.count(name)) fail("complex JSON: duplicate cell name " + name);
    if (dim == 0) {
      int id = b.add_vertex(name);
      id_of[name] = id;
      Cell c;
      c.id = id;
      c.dim = 0;
      c.name = name;
      built.push_back(c);
      continue;
    }
    if (!jc.contains("attach")) fail("complex JSON: cell " + name + " needs attach");
    const njson& ja = jc["attach"];
    std::string kind = ja.at("kind").get<std::string>();
    CubeMap att;
    if (kind == "endpoints") {
      auto resolve = [&](const std::string& key) {
        std::string vn = ja.at(key).get<std::string>();
        auto it = id_of.find(vn);
        if (it == id_of.end()) fail("complex JSON: unknown vertex " + vn);
        return it->second;
      };
      if (dim != 1) fail("complex JSON: endpoints attach needs dim 1");
      att = endpoints_attach(resolve("at0"), resolve("at1"));
    } else if (kind == "constant") {
      std::string vn = ja.at("cell").get<std::string>();
      auto it = id_of.find(vn);
      if (it == id_of.end()) fail("complex JSON: unknown cell " + vn);
      att = constant_attach(dim, CWPoint{it->second, {}});
    } else if (kind == "edge_loop") {
      if (dim != 2) fail("complex JSON: edge_loop attach needs dim 2");
      SmashParams p(ja.at("sigma").get<double>(), ja.at("tau").get<double>());
      std::array<EdgeRef, 4> refs;
      const char* keys[4] = {"bottom", "right", "top", "left"};
      for (int i = 0; i < 4; ++i) {
        std::string en = ja.at(keys[i]).get<std::string>();
        auto it = id_of.find(en);
        if (it == id_of.end()) fail("complex JSON: unknown edge " + en);
        refs[size_t(i)] = edge_ref(built, it->second, false);
      }
      att = edge_loop_attach(p, refs);
    } else {
      fail("complex JSON: unknown attach kind '" + kind + "'");
    }
    std::optional<double> eps;
    if (jc.contains("tame_eps")) eps = jc["tame_eps"].get<double>();
    int id = b.add_cell(name, dim, att, eps, ja.dump());
    id_of[name] = id;
    Cell c;
    c.id = id;
    c.dim = dim;
    c.name = name;
    c.attaching = att;
    built.push_back(c);
  }
  if (j.contains("base"))
    for (const auto& bn : j["base"]) {
      auto it = id_of.find(bn.get<std::string>());
      if (it == id_of.end()) fail("complex JSON: unknown base cell");
      b.mark_base(it->second);
    }
  return b.build();
}

}  // namespace tamecell
