#pragma once

#include <string>

#include "tamecell/common.hpp"

namespace tamecell {

/// One axis constraint of a face box: pinned (lo == hi) or an interval.
struct AxisRange {
  double lo;
  double hi;
  bool pinned() const { return lo == hi; }
};

/// An axis-aligned box with some axes pinned; the maximal faces of every
/// domain kind normalize to a finite union of these.
struct FaceBox {
  std::vector<AxisRange> axes;
  bool contains(const Vec& x, double tol) const;
};

enum class DomainKind {
  FullCube,       // I^n
  Boundary,       // dI^n
  HornJ,          // J^{n-1} = dI^{n-1} x I  u  I^{n-1} x {1}, inside I^n
  HornL,          // L^{n-1} = dI^{n-1} x I  u  I^{n-1} x {0}, inside I^n
  Chamber,        // eps-chamber of a base domain
  Subcube,        // K_{J_k} for a multi-index
  ProductWithI,   // base x I
  Union,          // finite union
};

/// Symbolic cubical domain. Kept as kind + parameters plus the normalized
/// list of maximal face boxes; membership is decided exactly from
/// coordinates with a kMembershipTol band.
class CubeDomain {
 public:
  static CubeDomain full_cube(int n);
  static CubeDomain boundary(int n);
  /// J^{n-1} as a subset of I^n (ambient dimension n >= 1).
  static CubeDomain horn_j(int n);
  /// L^{n-1} as a subset of I^n.
  static CubeDomain horn_l(int n);
  static CubeDomain subcube(int n, int k, const std::vector<int>& index);
  /// General axis-aligned box (pinned axes allowed).
  static CubeDomain box(std::vector<AxisRange> axes);
  static CubeDomain product_with_interval(const CubeDomain& base);
  static CubeDomain finite_union(std::vector<CubeDomain> parts);

  /// The eps-chamber: union of eps-chambers of the maximal faces.
  CubeDomain chamber(double eps) const;

  bool contains(const Vec& x, double tol = kMembershipTol) const;

  int dim() const { return dim_; }
  DomainKind kind() const { return kind_; }
  double chamber_eps() const { return eps_; }
  const std::vector<FaceBox>& boxes() const { return boxes_; }
  std::string describe() const;

  bool is_full_cube() const { return kind_ == DomainKind::FullCube; }

 private:
  CubeDomain(int n, DomainKind k) : dim_(n), kind_(k) {}
  int dim_;
  DomainKind kind_;
  double eps_ = 0;
  std::vector<FaceBox> boxes_;
};

/// Deterministic boundary-inclusive grid restricted to a domain.
struct SampleGrid {
  std::vector<Vec> points;
  int resolution = 0;
  unsigned seed = 0;
};

/// Grid with `resolution` points per free axis; duplicates across face boxes
/// removed. With jitter_seed != 0, interior points are perturbed
/// deterministically while staying inside the domain.
SampleGrid sample(const CubeDomain& d, int resolution, unsigned jitter_seed = 0);

/// Face descriptor of I^n: coordinate axis (0-based) and side alpha in {0,1}.
struct FaceDescriptor {
  int axis;
  int side;
};

std::vector<FaceDescriptor> faces(int n);

/// Affine chart I^n ~ K_{J_k} for a subcube of the k-fold subdivision.
struct SubcubeChart {
  std::vector<int> index;  // 1-based multi-index (j_1..j_n)
  int k = 1;
  Vec to_global(const Vec& local) const;
  Vec to_local(const Vec& global) const;
};

/// All k^n subcube charts of I^n, lexicographic in the multi-index.
std::vector<SubcubeChart> subcube_lattice(int n, int k);

}  // namespace tamecell
