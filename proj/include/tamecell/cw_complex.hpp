#pragma once

#include <map>
#include <memory>

#include "tamecell/cube_map.hpp"
#include "tamecell/verify.hpp"

namespace tamecell {

/// One cube cell. The attaching map sends dI^n into the (n-1)-skeleton and
/// always evaluates to canonical points; tame_eps is set when the attaching
/// map carries a tameness certificate (gathered cells).
struct Cell {
  int id = -1;
  std::string name;
  int dim = 0;
  CubeMap attaching;  // empty for vertices
  std::optional<double> tame_eps;
  std::string attach_recipe;  // JSON recipe when serializable, else empty
};

/// A finite cubical CW complex, frozen after construction. An optional
/// relative base A is a subcomplex given by cell ids.
class CWComplex {
 public:
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int id) const;
  int find_cell(const std::string& name) const;  // -1 if absent
  int dim() const { return dim_; }
  size_t cell_count() const { return cells_.size(); }
  std::vector<int> cells_of_dim(int d) const;
  bool gathered() const { return gathered_; }
  const std::vector<int>& base_cells() const { return base_; }
  bool in_base(int id) const;

  std::string to_json() const;

 private:
  friend class CWComplexBuilder;
  std::vector<Cell> cells_;
  std::vector<int> base_;
  int dim_ = -1;
  bool gathered_ = false;
};

using ComplexPtr = std::shared_ptr<const CWComplex>;

class CWComplexBuilder {
 public:
  int add_vertex(const std::string& name);
  /// dim >= 1; the attaching map must produce canonical CWPoints of lower
  /// dimension on dI^dim.
  int add_cell(const std::string& name, int dim, CubeMap attaching,
               std::optional<double> tame_eps = std::nullopt,
               std::string attach_recipe = {});
  void mark_base(int id);
  int next_id() const { return int(cells_.size()); }
  ComplexPtr build();

 private:
  std::vector<Cell> cells_;
  std::vector<int> base_;
};

/// Resolves boundary coordinates through attaching maps until the point is
/// interior (or a vertex). Terminates because the dimension strictly drops.
CWPoint canonicalize(const CWComplex& X, CWPoint p);

/// Canonical-form equality with tolerance.
bool same_point(const CWComplex& X, const CWPoint& a, const CWPoint& b,
                double tol = kComposedTol);
double point_dist(const CWComplex& X, const CWPoint& a, const CWPoint& b);

/// Filtration consistency, attaching-image containment on grids, gathered
/// certificates.
VerificationReport validate_complex(const CWComplex& X, int grid = 9);

bool subcomplex_check(const CWComplex& X, const std::vector<int>& cells);

// ---- constructions ----

ComplexPtr product(const ComplexPtr& X, const ComplexPtr& Y);
ComplexPtr coproduct(const ComplexPtr& X, const ComplexPtr& Y);
/// Collapses the subcomplex A (nonempty list of cell ids) to a new vertex.
ComplexPtr quotient(const ComplexPtr& X, const std::vector<int>& a_cells);

// ---- demo complexes ----

ComplexPtr interval();                  // 2 vertices + 1 edge, gathered
ComplexPtr circle();                    // quotient(interval, boundary)
ComplexPtr cube_complex(int n);         // all 3^n faces, not gathered
/// Gathered CW structure on the square: tame-reparametrized edge traversal.
ComplexPtr square_gathered();
/// Gathered torus: one vertex, two loops, one 2-cell with tame attaching
/// word; same cell counts as circle() x circle().
ComplexPtr torus();

/// Loads/saves the complex definition JSON (see README for the schema).
ComplexPtr complex_from_json(const std::string& text);

}  // namespace tamecell
