#pragma once

#include <functional>
#include <memory>

#include "tamecell/domains.hpp"
#include "tamecell/expr.hpp"

namespace tamecell {

/// Records why a map is tame. "by-construction" certificates are emitted
/// only by operations whose output tameness is forced by the defining
/// formula; "sampled-verified" ones come from check_tame.
struct TamenessCertificate {
  enum class Status { ByConstruction, SampledVerified };
  double epsilon;
  Status status = Status::ByConstruction;
  int grid_resolution = 0;  // set for sampled certificates
  int axis = -1;            // -1: every coordinate; else tame in one axis only
                            // (the homotopy reading of tameness)
};

struct Codomain {
  enum class Kind { Euclidean, Domain, Complex };
  Kind kind = Kind::Euclidean;
  int euclid_dim = 0;
  std::shared_ptr<const CubeDomain> dom;

  static Codomain euclidean(int m) { return {Kind::Euclidean, m, nullptr}; }
  static Codomain domain(const CubeDomain& d) {
    return {Kind::Domain, d.dim(), std::make_shared<CubeDomain>(d)};
  }
  static Codomain complex() { return {Kind::Complex, 0, nullptr}; }
  int dim() const { return euclid_dim; }
};

/// Seam of a certified piecewise assembly: an axis-aligned hyperplane
/// {x_axis == value} with a collar inside which the gluing hypothesis holds.
struct Seam {
  int axis;
  double value;
  double collar;
};

namespace mapdet {
struct Body;
}

/// A smooth map on a cubical domain. The body is a componentwise expression
/// tensor, a certified piecewise assembly, a composition chain, or an opaque
/// evaluator produced by the engine; piecewise assemblies can only be built
/// through glue_piecewise and always record their seams.
class CubeMap {
 public:
  CubeMap() : domain_(CubeDomain::full_cube(0)) {}

  Value eval(const Vec& x) const;
  Vec eval_vec(const Vec& x) const;

  const CubeDomain& domain() const { return domain_; }
  const Codomain& codomain() const { return codomain_; }
  const std::optional<TamenessCertificate>& tameness() const { return tameness_; }
  const std::vector<Seam>& seams() const { return seams_; }
  bool valid() const { return body_ != nullptr; }

  CubeMap with_certificate(TamenessCertificate c) const;
  CubeMap with_seams(std::vector<Seam> s) const;

  static CubeMap from_components(CubeDomain dom, std::vector<Expr> comps,
                                 Codomain cod);
  static CubeMap from_callable(CubeDomain dom, Codomain cod,
                               std::function<Value(const Vec&)> f,
                               std::string description = {});
  /// outer after inner; all intermediate values must be Euclidean.
  static CubeMap chain(CubeMap inner, CubeMap outer);

  std::string describe() const;

 private:
  CubeDomain domain_;
  Codomain codomain_;
  std::shared_ptr<const mapdet::Body> body_;
  std::optional<TamenessCertificate> tameness_;
  std::vector<Seam> seams_;
  friend struct mapdet::Body;
  friend CubeMap glue_pieces_internal(CubeDomain, std::vector<std::pair<CubeDomain, CubeMap>>,
                                      std::vector<Seam>);
};

// ---- cube-calculus operations ----

/// T^n_{sigma,tau}: componentwise smash. Tame by construction at eps = sigma
/// (certificate present only when sigma > 0).
CubeMap smash_nd(int n, const SmashParams& p);

/// The locally tame map TT^n_{k,sigma,tau}: restriction to each subcube
/// K_{J_k} is T^n under the affine chart, surjective onto the subcube, and
/// smooth across subcube boundaries because of the tame flat zones.
CubeMap locally_tame_subdivision(int n, int k, const SmashParams& p);

/// H(t,s) = (1-s) t + s g(t) on I^n x I; requires cube codomain (convexity).
CubeMap straight_line_homotopy(const CubeMap& g);

/// The eps-approximate retraction R^n_eps : I^n -> J^{n-1}: a single closed
/// form, identity on the eps-chamber of J^{n-1}, image exactly inside the
/// horn. Additionally satisfies f(R(y)) = f(y) for every eps-tame f and every
/// y in J^{n-1}, which extend_tame_from_J relies on.
CubeMap approximate_retraction(int n, double eps);

/// f o T^n_{sigma,tau}: the sigma-tame representative of f.
CubeMap tamify(const CubeMap& f, const SmashParams& p);

/// Concatenation phi * psi of maps of triples (I^n, dI^n, J^{n-1}) ->
/// (X, A, x0) along the first coordinate. Callers must ensure the triple
/// conditions; the seam value is checked on samples.
CubeMap concat(const CubeMap& phi, const CubeMap& psi, const SmashParams& p);

struct GluePiece {
  CubeDomain domain;
  CubeMap map;
};

struct SeamSpec {
  enum class Justification { FlatCollar, ClosedForm };
  int axis;
  double value;
  double collar;
  Justification justification = Justification::FlatCollar;
};

/// Certified piecewise assembly. Refuses gluings whose pieces disagree on
/// seam samples beyond tol or that carry no collar/closed-form
/// justification; flat collars are spot-checked at build time.
CubeMap glue_piecewise(CubeDomain whole, std::vector<GluePiece> pieces,
                       std::vector<SeamSpec> seams,
                       double tol = kAlgebraicTol);

/// Direct evaluation of R^n_eps without building a CubeMap.
Vec retraction_point(int n, double eps, const Vec& x);

}  // namespace tamecell
