#pragma once

#include "tamecell/cellwise.hpp"

namespace tamecell {

/// Oracle interface for the nonconstructive (connectivity-based) steps.
/// Returned homotopies are contract-checked before use; violations abort
/// with the oracle blamed.
struct OracleRequest {
  enum class Kind {
    NullHomotopy,  // boundary_map dI^d -> Y; want H with H(.,0)=b, H(.,1) const
    Compression,   // base_map I^d -> Z; want pairs homotopy into C
    Lift,          // lift base_map through p with prescribed boundary values
  };
  Kind kind;
  int cell = -1;  // source cell being processed (for blame messages)
  int dim = 0;
  CubeMap boundary_map;  // NullHomotopy / Lift
  CubeMap base_map;      // Compression / Lift
};

struct OracleAnswer {
  CubeMap homotopy;  // NullHomotopy: dI^d x I; Compression/Lift: I^d x I
  CubeMap lift;      // Lift only: I^d -> Y
  double time_tameness = 0.25;
};

using NullHomotopyOracle =
    std::function<std::optional<OracleAnswer>(const OracleRequest&)>;

// ---- tame extension machinery ----

/// Extends an eps-tame f on J^{n-1} to the sigma-tame f o R^n_eps o
/// T^n_{sigma,eps} on I^n; requires a tameness certificate on f.
CubeMap extend_tame_from_J(const CubeMap& f, double sigma);

struct LExtension {
  CubeMap map;            // on I^{n-1} x I
  double time_tameness;   // computed flat width in the time coordinate
  double slice_tameness;  // tameness of the s = 1 slice in the cube coords
};

/// Extends f on L^{n-1} (sides eps-tame) to a tame homotopy on I^{n-1} x I:
/// stage 1 flows the bottom to its tamification, stage 2 extends the
/// remaining slab from its J-shaped data.
LExtension extend_from_L(const CubeMap& f, double eps);

// ---- homotopy extension ----

/// Homotopy extension property: X relative gathered with base A
/// (X->base_cells()), f defined on all of X, h a tame homotopy on the A
/// cells with h(.,0) = f|A. Returns H with H|AxI = h and H(.,0) = f.
CellwiseHomotopy hep(const ComplexPtr& X, const CellwiseMap& f,
                     const CellwiseHomotopy& h);

/// HEP2: F is a tame homotopy of pairs with F(.,0) = f, F(.,1) in B and
/// F(AxI) in B (B = f.target().subspace). Returns F' relative to A with
/// F'(.,0) = f and F'(.,1) in B, assembled as three tame segments.
CellwiseHomotopy hep_rel(const ComplexPtr& X, const CellwiseMap& f,
                         const CellwiseHomotopy& F);

// ---- collars ----

struct CollarData {
  int level = 0;
  std::map<int, double> sigma;  // per top-cell sigma_lambda
  /// Canonical point lies in the open set B^n.
  std::function<bool(const CWPoint&)> in_B;
  /// gamma^n: B^n -> X^{n-1}; identity on the lower skeleton.
  std::function<CWPoint(const CWPoint&)> retraction;
  /// Deformation of X^n relative to X^{n-1}; restricted to B^n it lands in
  /// B^n and ends at the retraction.
  CellwiseHomotopy deformation;
};

CollarData collar_retraction(const ComplexPtr& X, int n);

// ---- HELP ----

struct HelpResult {
  CellwiseMap f;        // X -> Y
  CellwiseHomotopy G;   // X x I -> Z
};

/// Homotopy extension lifting property along p : Y -> Z. f_prime lives on
/// the A cells, F_prime is a tame homotopy on A with g|A = F'(.,0) and
/// p o f' = F'(.,1).
HelpResult help(const ComplexPtr& X, const CellwiseMap& p,
                const NullHomotopyOracle& lift_oracle,
                const CellwiseMap& f_prime, const CellwiseMap& g,
                const CellwiseHomotopy& F_prime);

// ---- connectivity-driven extension and compression ----

/// Extends f (given on the A cells) over X, using oracle null-homotopies
/// for the attaching spheres.
CellwiseMap extend_into_connected(const ComplexPtr& X, const CellwiseMap& f,
                                  const NullHomotopyOracle& oracle);

struct CompressResult {
  CellwiseMap g;        // g(X) inside C
  CellwiseHomotopy H;   // f ~ g relative to A
};

/// Compresses f : (X, A) -> (Z, C) into C relative to A; C is
/// f.target().subspace.
CompressResult compress_into_subspace(const ComplexPtr& X, const CellwiseMap& f,
                                      const NullHomotopyOracle& oracle);

// ---- subdivision and cellular approximation ----

struct SubdivisionCover {
  int k = 0;
  std::vector<int> assignment;  // chart index -> predicate index
};

using PointPredicate = std::function<bool(const Value&)>;

/// Smallest k <= k_max such that every subcube's sampled image (with a 2x
/// finer safety margin) satisfies a single predicate. Sampling is a
/// heuristic for the compactness argument and is reported as such.
SubdivisionCover subdivide_until_cover(const CubeMap& f,
                                       const std::vector<PointPredicate>& preds,
                                       int k_max, int grid = 5);

struct CellularApproxResult {
  CellwiseMap g;        // cellular
  CellwiseHomotopy H;   // f ~ g relative to A
};

/// Cellular approximation of f between gathered complexes; the default
/// radial-push oracle resolves the connectivity steps by grid-searching an
/// unhit interior point of the target cell.
CellularApproxResult cellular_approximation(const CellwiseMap& f,
                                            const NullHomotopyOracle* oracle = nullptr);

/// Default oracle used by cellular approximation: radial push inside a top
/// cell away from an unhit center onto a sphere inside the collar.
NullHomotopyOracle radial_push_oracle(const ComplexPtr& Y,
                                      const std::map<int, double>& sigma,
                                      int attempts = 64);

/// Gathered CW structure on (I^d, dI^d) with tame parameters p; base = the
/// boundary cells. Supports d <= 2.
ComplexPtr cube_pair(int d, const SmashParams& p);

}  // namespace tamecell
