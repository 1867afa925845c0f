#pragma once

#include <map>

#include "tamecell/cube_map.hpp"

namespace tamecell {

/// Machine-readable outcome of one numerical check. Checks refute,
/// never prove; smoothness passes mean "consistent with smooth".
struct VerificationReport {
  std::string check;
  bool pass = true;
  double worst = 0.0;           // worst violation magnitude
  Vec witness;                  // point realizing the worst violation
  double tol = 0.0;
  std::string grid;             // grid metadata
  std::string note;

  void merge_violation(double magnitude, const Vec& point);
  std::string to_json() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

/// Aggregate of reports; pass iff all sub-reports pass.
struct SuiteReport {
  std::string name;
  std::vector<VerificationReport> reports;
  double elapsed_seconds = 0.0;
  bool pass() const;
  std::string to_json() const;
};

/// Checks the clamping identity of Definition "eps-tame": for each sampled
/// point and coordinate j with |t_j - alpha| <= eps, f(t) must equal f with
/// t_j replaced by alpha.
VerificationReport check_tame(const CubeMap& f, double eps, int grid,
                              double tol = kAlgebraicTol, int axis = -1);

/// Two-sided divided differences of orders 1..3 across each recorded seam
/// (or the given probes), computed with steps h and h/2; their mismatch must
/// shrink linearly in h (smoothness-by-flatness surrogate).
VerificationReport check_seam_smoothness(const CubeMap& f, int max_order = 3,
                                         double h = 1e-2,
                                         const std::vector<Seam>* probes = nullptr);

/// Image membership in J^{n-1} and identity on the eps-chamber of J^{n-1}.
VerificationReport check_retraction(const CubeMap& r, double eps, int grid);

/// Endpoint and stationarity contracts of a homotopy given as a CubeMap on
/// I^n x I: H(.,0) = f0, optionally H(.,1) = f1, optionally stationary on a
/// relative subdomain.
VerificationReport check_homotopy_contracts(
    const CubeMap& H, const CubeMap& f0, const CubeMap* f1 = nullptr,
    const CubeDomain* relative = nullptr, int grid = 11,
    double tol = kComposedTol);

/// Forward differences of a 1D function must be >= -1e-12 on the grid.
VerificationReport check_monotone(const SmoothFn1D& f, int grid,
                                  double lo = 0.0, double hi = 1.0);

// ---- suite registry ----

struct SuiteConfig {
  int grid = 0;          // 0 = suite default
  double tol = 0.0;      // 0 = suite default
  unsigned seed = 12345;
};

using SuiteFn = std::function<SuiteReport(const SuiteConfig&)>;

void register_suite(const std::string& name, SuiteFn fn);
std::vector<std::string> suite_names();
/// Runs the named suites ("all" = every registered suite); exit status
/// should reflect pass().
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace tamecell
