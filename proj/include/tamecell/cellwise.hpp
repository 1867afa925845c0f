#pragma once

#include "tamecell/cw_complex.hpp"

namespace tamecell {

/// Target of a cellwise map: Euclidean space or a CW complex, with an
/// optional subspace predicate (the B of a map of pairs).
struct MapTarget {
  enum class Kind { Euclidean, Complex };
  Kind kind = Kind::Euclidean;
  int euclid_dim = 0;
  ComplexPtr complex;
  std::function<bool(const Value&)> subspace;  // optional B membership

  static MapTarget euclidean(int m) { return {Kind::Euclidean, m, nullptr, {}}; }
  static MapTarget cw(ComplexPtr c) {
    return {Kind::Complex, 0, std::move(c), {}};
  }
  double dist(const Value& a, const Value& b) const;
  /// Canonicalizes complex-valued points; identity on Euclidean values.
  Value canonical(const Value& v) const;
};

/// A map out of a complex, stored per cell (the final-diffeology viewpoint):
/// one CubeMap I^n -> target per cell. The compatibility law is the
/// executable content of the subduction: on every sampled boundary point,
/// the cell's value must match the value at the canonicalized image.
class CellwiseMap {
 public:
  CellwiseMap() = default;
  CellwiseMap(ComplexPtr src, MapTarget tgt) : source_(std::move(src)), target_(std::move(tgt)) {}

  void set_piece(int cell, CubeMap m) { pieces_[cell] = std::move(m); }
  const CubeMap& piece(int cell) const;
  bool has_piece(int cell) const { return pieces_.count(cell) > 0; }

  /// Evaluates at a point of the complex (canonicalizes first).
  Value eval(const CWPoint& p) const;
  /// Evaluates the stored piece of a cell directly.
  Value eval_cell(int cell, const Vec& local) const;

  const ComplexPtr& source() const { return source_; }
  const MapTarget& target() const { return target_; }

 private:
  ComplexPtr source_;
  MapTarget target_;
  std::map<int, CubeMap> pieces_;
};

/// A homotopy stored per cell of X as maps I^n x I -> target, with a
/// tameness-in-time certificate. Each time slice is a valid CellwiseMap.
class CellwiseHomotopy {
 public:
  CellwiseHomotopy() = default;
  CellwiseHomotopy(ComplexPtr src, MapTarget tgt)
      : source_(std::move(src)), target_(std::move(tgt)) {}

  void set_piece(int cell, CubeMap m) { pieces_[cell] = std::move(m); }
  const CubeMap& piece(int cell) const;
  bool has_piece(int cell) const { return pieces_.count(cell) > 0; }

  Value eval(const CWPoint& p, double t) const;
  Value eval_cell(int cell, const Vec& local, double t) const;
  CellwiseMap slice(double t) const;

  double time_tameness() const { return time_tameness_; }
  void set_time_tameness(double eps) { time_tameness_ = eps; }

  const ComplexPtr& source() const { return source_; }
  const MapTarget& target() const { return target_; }

 private:
  ComplexPtr source_;
  MapTarget target_;
  std::map<int, CubeMap> pieces_;
  double time_tameness_ = 0.0;
};

/// Samples every cell boundary and checks the compatibility invariant.
VerificationReport validate_map(const CellwiseMap& f, int grid = 9,
                                double tol = kComposedTol);
VerificationReport validate_homotopy(const CellwiseHomotopy& H, int grid = 7,
                                     double tol = kComposedTol);

/// Constant map fixture.
CellwiseMap constant_map(const ComplexPtr& X, const MapTarget& tgt,
                         const Value& v);

/// The identity of X as a cellwise map into X itself.
CellwiseMap identity_map(const ComplexPtr& X);

// ---- mapping cylinder ----

struct MappingCylinder {
  ComplexPtr complex;           // M_phi
  CellwiseMap embedding;        // j : X -> M_phi (x maps to (x,1))
  CellwiseMap retraction;       // gamma : M_phi -> Y with gamma o j = phi
  std::map<int, int> y_cells;   // Y cell id -> M cell id
  std::map<int, int> x_copies;  // X cell id -> M cell id of X x {1} copy
  std::map<int, int> prisms;    // X cell id -> M cell id of the prism
};

/// Pushout of Y <- X -> X x I along a cellular phi.
MappingCylinder mapping_cylinder(const CellwiseMap& phi);

}  // namespace tamecell
