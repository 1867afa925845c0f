#include "tamecell/cellwise.hpp"

namespace tamecell {

double MapTarget::dist(const Value& a, const Value& b) const {
  if (a.index() != b.index()) return 1.0;
  if (std::holds_alternative<Vec>(a)) return sup_dist(as_vec(a), as_vec(b));
  if (kind != Kind::Complex || !complex) fail("MapTarget: complex value without complex");
  return point_dist(*complex, as_cw(a), as_cw(b));
}

Value MapTarget::canonical(const Value& v) const {
  if (std::holds_alternative<Vec>(v)) return v;
  if (kind != Kind::Complex || !complex) fail("MapTarget: complex value without complex");
  return canonicalize(*complex, as_cw(v));
}

const CubeMap& CellwiseMap::piece(int cell) const {
  auto it = pieces_.find(cell);
  if (it == pieces_.end())
    fail("CellwiseMap: no piece for cell " + std::to_string(cell));
  return it->second;
}

Value CellwiseMap::eval(const CWPoint& p) const {
  CWPoint c = canonicalize(*source_, p);
  return eval_cell(c.cell, c.coords);
}

Value CellwiseMap::eval_cell(int cell, const Vec& local) const {
  return piece(cell).eval(local);
}

const CubeMap& CellwiseHomotopy::piece(int cell) const {
  auto it = pieces_.find(cell);
  if (it == pieces_.end())
    fail("CellwiseHomotopy: no piece for cell " + std::to_string(cell));
  return it->second;
}

Value CellwiseHomotopy::eval(const CWPoint& p, double t) const {
  CWPoint c = canonicalize(*source_, p);
  return eval_cell(c.cell, c.coords, t);
}

Value CellwiseHomotopy::eval_cell(int cell, const Vec& local, double t) const {
  Vec x = local;
  x.push_back(t);
  return piece(cell).eval(x);
}

CellwiseMap CellwiseHomotopy::slice(double t) const {
  CellwiseMap out(source_, target_);
  for (const auto& [cell, m] : pieces_) {
    CubeMap mc = m;
    int n = source_->cell(cell).dim;
    out.set_piece(cell,
                  CubeMap::from_callable(
                      CubeDomain::full_cube(n), mc.codomain(),
                      [mc, t](const Vec& y) {
                        Vec x = y;
                        x.push_back(t);
                        return mc.eval(x);
                      },
                      "slice"));
  }
  return out;
}

VerificationReport validate_map(const CellwiseMap& f, int grid, double tol) {
  VerificationReport rep;
  rep.check = "cellwise_compat";
  rep.tol = tol;
  rep.grid = "grid=" + std::to_string(grid);
  const CWComplex& X = *f.source();
  for (const auto& c : X.cells()) {
    if (!f.has_piece(c.id)) {
      rep.pass = false;
      rep.note = "missing piece for cell " + c.name;
      return rep;
    }
    if (c.dim == 0) continue;
    SampleGrid g = sample(CubeDomain::boundary(c.dim), grid);
    for (const Vec& t : g.points) {
      Value own = f.eval_cell(c.id, t);
      CWPoint through = canonicalize(X, CWPoint{c.id, t});
      Value low = f.eval_cell(through.cell, through.coords);
      double d = f.target().dist(own, low);
      if (d > rep.worst) rep.note = "worst seam on cell " + c.name;
      rep.merge_violation(d, t);
    }
  }
  return rep;
}

VerificationReport validate_homotopy(const CellwiseHomotopy& H, int grid,
                                     double tol) {
  VerificationReport rep;
  rep.check = "cellwise_homotopy_compat";
  rep.tol = tol;
  rep.grid = "grid=" + std::to_string(grid);
  const CWComplex& X = *H.source();
  std::vector<double> times = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (const auto& c : X.cells()) {
    if (!H.has_piece(c.id)) {
      rep.pass = false;
      rep.note = "missing piece for cell " + c.name;
      return rep;
    }
    if (c.dim == 0) continue;
    SampleGrid g = sample(CubeDomain::boundary(c.dim), grid);
    for (const Vec& t : g.points) {
      CWPoint through = canonicalize(X, CWPoint{c.id, t});
      for (double s : times) {
        Value own = H.eval_cell(c.id, t, s);
        Value low = H.eval_cell(through.cell, through.coords, s);
        double d = H.target().dist(own, low);
        if (d > rep.worst) rep.note = "worst seam on cell " + c.name;
        rep.merge_violation(d, t);
      }
    }
  }
  return rep;
}

CellwiseMap constant_map(const ComplexPtr& X, const MapTarget& tgt,
                         const Value& v) {
  CellwiseMap f(X, tgt);
  for (const auto& c : X->cells()) {
    Codomain cod = tgt.kind == MapTarget::Kind::Euclidean
                       ? Codomain::euclidean(tgt.euclid_dim)
                       : Codomain::complex();
    f.set_piece(c.id, CubeMap::from_callable(
                          CubeDomain::full_cube(c.dim), cod,
                          [v](const Vec&) { return v; }, "constant"));
  }
  return f;
}

CellwiseMap identity_map(const ComplexPtr& X) {
  CellwiseMap f(X, MapTarget::cw(X));
  for (const auto& c : X->cells()) {
    int id = c.id;
    f.set_piece(id, CubeMap::from_callable(
                        CubeDomain::full_cube(c.dim), Codomain::complex(),
                        [id](const Vec& y) { return CWPoint{id, y}; },
                        "identity"));
  }
  return f;
}

MappingCylinder mapping_cylinder(const CellwiseMap& phi) {
  const ComplexPtr& X = phi.source();
  if (phi.target().kind != MapTarget::Kind::Complex)
    fail("mapping_cylinder: phi must map into a complex");
  const ComplexPtr& Y = phi.target().complex;
  // Cellularity: phi(X^n) in Y^n, checked on samples.
  for (const auto& c : X->cells()) {
    SampleGrid g = sample(CubeDomain::full_cube(c.dim), 5);
    for (const Vec& t : g.points) {
      CWPoint v = canonicalize(*Y, as_cw(phi.eval_cell(c.id, t)));
      if (Y->cell(v.cell).dim > c.dim)
        fail("mapping_cylinder: phi is not cellular (cell " + c.name + ")");
    }
  }
  MappingCylinder M;
  CWComplexBuilder b;
  auto y_cells = std::make_shared<std::map<int, int>>();
  auto x_copies = std::make_shared<std::map<int, int>>();
  auto prisms = std::make_shared<std::map<int, int>>();
  // Y cells, in order. Ids shift but structure is copied verbatim.
  for (const auto& c : Y->cells()) {
    if (c.dim == 0) {
      (*y_cells)[c.id] = b.add_vertex("y_" + c.name);
      continue;
    }
    CubeMap att = c.attaching;
    auto remap = [att, y_cells](const Vec& t) -> Value {
      CWPoint p = as_cw(att.eval(t));
      return CWPoint{y_cells->at(p.cell), p.coords};
    };
    (*y_cells)[c.id] =
        b.add_cell("y_" + c.name, c.dim,
                   CubeMap::from_callable(att.domain(), Codomain::complex(),
                                          remap, "attach.cyl_y"),
                   c.tame_eps);
  }
  // X x {1} copies, ordered by dimension.
  ComplexPtr Xc = X;
  for (int d = 0; d <= X->dim(); ++d)
    for (int id : X->cells_of_dim(d)) {
      const Cell& c = X->cell(id);
      if (d == 0) {
        (*x_copies)[id] = b.add_vertex("x_" + c.name);
        continue;
      }
      CubeMap att = c.attaching;
      auto remap = [att, x_copies, Xc](const Vec& t) -> Value {
        CWPoint p = canonicalize(*Xc, as_cw(att.eval(t)));
        return CWPoint{x_copies->at(p.cell), p.coords};
      };
      (*x_copies)[id] =
          b.add_cell("x_" + c.name, d,
                     CubeMap::from_callable(att.domain(), Codomain::complex(),
                                            remap, "attach.cyl_x"),
                     c.tame_eps);
    }
  // Prism cells X x (0,1), dimension d+1, time last.
  CellwiseMap phic = phi;
  ComplexPtr Yc = Y;
  for (int d = 0; d <= X->dim(); ++d)
    for (int id : X->cells_of_dim(d)) {
      const Cell& c = X->cell(id);
      auto attach = [=](const Vec& w) -> Value {
        Vec y(w.begin(), w.end() - 1);
        double t = w.back();
        if (std::abs(t - 1.0) <= kMembershipTol) {
          CWPoint p = canonicalize(*Xc, CWPoint{id, y});
          return CWPoint{x_copies->at(p.cell), p.coords};
        }
        if (std::abs(t) <= kMembershipTol) {
          CWPoint p = canonicalize(*Yc, as_cw(phic.eval(CWPoint{id, y})));
          return CWPoint{y_cells->at(p.cell), p.coords};
        }
        // side: y on dI^d, recurse into the prism of the lower cell
        CWPoint p = canonicalize(*Xc, CWPoint{id, y});
        Vec coords = p.coords;
        coords.push_back(t);
        return CWPoint{prisms->at(p.cell), coords};
      };
      (*prisms)[id] = b.add_cell(
          "p_" + c.name, d + 1,
          CubeMap::from_callable(CubeDomain::boundary(d + 1),
                                 Codomain::complex(), attach, "attach.cyl_prism"),
          std::nullopt);
    }
  M.complex = b.build();
  for (const auto& [k, v] : *y_cells) M.y_cells[k] = v;
  for (const auto& [k, v] : *x_copies) M.x_copies[k] = v;
  for (const auto& [k, v] : *prisms) M.prisms[k] = v;

  // j : X -> M, x maps to the top copy.
  M.embedding = CellwiseMap(X, MapTarget::cw(M.complex));
  for (const auto& c : X->cells()) {
    int mid = M.x_copies.at(c.id);
    M.embedding.set_piece(
        c.id, CubeMap::from_callable(CubeDomain::full_cube(c.dim),
                                     Codomain::complex(),
                                     [mid](const Vec& y) {
                                       return CWPoint{mid, y};
                                     },
                                     "cylinder.j"));
  }
  // gamma : M -> Y. Identity on Y cells, phi on copies, phi o collapse on
  // prisms; gamma o j = phi pointwise.
  M.retraction = CellwiseMap(M.complex, MapTarget::cw(Y));
  for (const auto& [yid, mid] : M.y_cells) {
    int y = yid;
    M.retraction.set_piece(
        mid, CubeMap::from_callable(
                 CubeDomain::full_cube(Y->cell(y).dim), Codomain::complex(),
                 [y](const Vec& t) { return CWPoint{y, t}; }, "cylinder.gamma"));
  }
  for (const auto& [xid, mid] : M.x_copies) {
    int x = xid;
    M.retraction.set_piece(
        mid, CubeMap::from_callable(
                 CubeDomain::full_cube(X->cell(x).dim), Codomain::complex(),
                 [phic, x](const Vec& t) { return phic.eval_cell(x, t); },
                 "cylinder.gamma"));
  }
  for (const auto& [xid, mid] : M.prisms) {
    int x = xid;
    M.retraction.set_piece(
        mid, CubeMap::from_callable(
                 CubeDomain::full_cube(X->cell(x).dim + 1), Codomain::complex(),
                 [phic, x](const Vec& w) {
                   Vec y(w.begin(), w.end() - 1);
                   return phic.eval_cell(x, y);
                 },
                 "cylinder.gamma"));
  }
  return M;
}

}  // namespace tamecell
