#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tamecell {

using Vec = std::vector<double>;

// Default tolerances: algebraic identities, composed evaluations, boundary
// membership bands.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kComposedTol = 1e-9;
inline constexpr double kMembershipTol = 1e-12;

/// A point of a CW complex: cell id plus local cube coordinates.
struct CWPoint {
  int cell = -1;
  Vec coords;
};

/// Values taken by cube maps: a Euclidean vector or a point of a complex.
using Value = std::variant<Vec, CWPoint>;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline double sup_dist(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline const Vec& as_vec(const Value& v) {
  if (const Vec* p = std::get_if<Vec>(&v)) return *p;
  fail("expected Euclidean value, got complex point");
}

inline const CWPoint& as_cw(const Value& v) {
  if (const CWPoint* p = std::get_if<CWPoint>(&v)) return *p;
  fail("expected complex point, got Euclidean value");
}

/// Runs fn(i) for i in [0, n). Parallelised over a small pool; the
/// TAMECELL_THREADS environment variable caps the worker count.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

int max_threads();

}  // namespace tamecell
