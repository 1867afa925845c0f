#include "tamecell/verify.hpp"

#include <chrono>
#include <mutex>
#include <sstream>

namespace tamecell {

void VerificationReport::merge_violation(double magnitude, const Vec& point) {
  if (magnitude > worst) {
    worst = magnitude;
    witness = point;
  }
  if (magnitude > tol) pass = false;
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string vec_json(const Vec& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}
}  // namespace

std::string VerificationReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"check\":\"" << json_escape(check) << "\",\"status\":\""
     << (pass ? "pass" : "fail") << "\",\"worst\":" << worst
     << ",\"witness\":" << vec_json(witness) << ",\"tol\":" << tol
     << ",\"grid\":\"" << json_escape(grid) << "\"";
  if (!note.empty()) os << ",\"note\":\"" << json_escape(note) << "\"";
  os << "}";
  return os.str();
}

std::string VerificationReport::csv_header() {
  return "check,status,worst,tol,grid,witness";
}

std::string VerificationReport::to_csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << '"' << check << "\"," << (pass ? "pass" : "fail") << ',' << worst << ','
     << tol << ",\"" << grid << "\",\"";
  for (size_t i = 0; i < witness.size(); ++i) os << (i ? " " : "") << witness[i];
  os << '"';
  return os.str();
}

bool SuiteReport::pass() const {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::string SuiteReport::to_json() const {
  std::ostringstream os;
  os << "{\"suite\":\"" << json_escape(name) << "\",\"status\":\""
     << (pass() ? "pass" : "fail") << "\",\"elapsed_s\":" << elapsed_seconds
     << ",\"checks\":[";
  for (size_t i = 0; i < reports.size(); ++i)
    os << (i ? "," : "") << reports[i].to_json();
  os << "]}";
  return os.str();
}

VerificationReport check_tame(const CubeMap& f, double eps, int grid, double tol,
                              int axis) {
  VerificationReport rep;
  rep.check = "tame(eps=" + std::to_string(eps) + ")";
  rep.tol = tol;
  rep.grid = "grid=" + std::to_string(grid) + " on " + f.domain().describe();
  SampleGrid g = sample(f.domain(), grid);
  int n = f.domain().dim();
  std::mutex mu;
  parallel_for(g.points.size(), [&](size_t i) {
    const Vec& t = g.points[i];
    Value base = f.eval(t);
    for (int j = 0; j < n; ++j) {
      if (axis >= 0 && j != axis) continue;
      for (int alpha = 0; alpha <= 1; ++alpha) {
        if (std::abs(t[size_t(j)] - alpha) > eps) continue;
        Vec clamped = t;
        clamped[size_t(j)] = alpha;
        if (!f.domain().contains(clamped, 1e-9)) continue;
        Value at = f.eval(clamped);
        double d;
        if (base.index() != at.index()) {
          d = 1.0;
        } else if (std::holds_alternative<Vec>(base)) {
          d = sup_dist(as_vec(base), as_vec(at));
        } else {
          const CWPoint& a = as_cw(base);
          const CWPoint& b = as_cw(at);
          d = a.cell == b.cell ? sup_dist(a.coords, b.coords) : 1.0;
        }
        std::lock_guard<std::mutex> lock(mu);
        rep.merge_violation(d, t);
      }
    }
  });
  return rep;
}

VerificationReport check_seam_smoothness(const CubeMap& f, int max_order,
                                         double h,
                                         const std::vector<Seam>* probes) {
  VerificationReport rep;
  rep.check = "seam_smoothness(orders<=" + std::to_string(max_order) + ")";
  rep.grid = "h=" + std::to_string(h);
  const std::vector<Seam>& seams = probes ? *probes : f.seams();
  if (seams.empty()) {
    rep.note = "no seams declared; vacuously consistent with smooth";
    return rep;
  }
  int n = f.domain().dim();
  // One-sided r-th divided differences from each side of the seam; for a
  // smooth map the left/right mismatch decays linearly in h, for a C^{r-1}
  // break it stalls.
  auto one_sided = [&](const Vec& base, int axis, double step, int order,
                       int dir) {
    // Newton forward differences at base + dir*k*step, k = 1..order+1.
    std::vector<Vec> vals;
    for (int k = 1; k <= order + 1; ++k) {
      Vec y = base;
      y[size_t(axis)] += dir * k * step;
      vals.push_back(f.eval_vec(y));
    }
    for (int r = 0; r < order; ++r)
      for (size_t i = 0; i + 1 < vals.size() - size_t(r); ++i)
        for (size_t c = 0; c < vals[i].size(); ++c)
          vals[i][c] = vals[i + 1][c] - vals[i][c];
    Vec d = vals[0];
    double denom = std::pow(step, order);
    if (dir < 0 && order % 2) denom = -denom;
    for (auto& x : d) x /= denom;
    return d;
  };
  for (const auto& s : seams) {
    // Stay inside the declared collar so flat-glued seams difference to
    // exactly zero on both sides.
    double he = h;
    if (s.collar > 0) he = std::min(he, s.collar / (max_order + 1));
    std::vector<AxisRange> axes(size_t(n), {0.0, 1.0});
    axes[size_t(s.axis)] = {s.value, s.value};
    SampleGrid plane = sample(CubeDomain::box(axes), n <= 2 ? 9 : 5);
    for (const Vec& x : plane.points) {
      if (!f.domain().contains(x, 1e-9)) continue;
      bool room = x[size_t(s.axis)] - (max_order + 1) * he >= -1e-12 &&
                  x[size_t(s.axis)] + (max_order + 1) * he <= 1 + 1e-12;
      if (!room) continue;
      for (int order = 1; order <= max_order; ++order) {
        double span = 0.0;
        {
          Vec l = one_sided(x, s.axis, he, order, -1);
          Vec r = one_sided(x, s.axis, he, order, +1);
          span = sup_dist(l, r);
        }
        Vec l2 = one_sided(x, s.axis, he / 2, order, -1);
        Vec r2 = one_sided(x, s.axis, he / 2, order, +1);
        double span2 = sup_dist(l2, r2);
        // Fitted linear-in-h decay plus a roundoff floor that grows with the
        // differencing order.
        double floor = 1e-10 / std::pow(he, order);
        rep.tol = floor;
        if (span2 > 0.75 * span + floor) {
          rep.merge_violation(span2, x);
          rep.pass = false;
          rep.note = "order " + std::to_string(order) + " mismatch stalls at seam";
        }
      }
    }
  }
  if (rep.pass && rep.note.empty()) rep.note = "consistent with smooth";
  return rep;
}

VerificationReport check_retraction(const CubeMap& r, double eps, int grid) {
  VerificationReport rep;
  rep.check = "retraction(eps=" + std::to_string(eps) + ")";
  rep.grid = "grid=" + std::to_string(grid);
  int n = r.domain().dim();
  CubeDomain horn = CubeDomain::horn_j(n);
  CubeDomain chamber = horn.chamber(eps);
  // Image membership to 1e-9 on the full grid.
  {
    SampleGrid g = sample(CubeDomain::full_cube(n), grid);
    rep.tol = 1e-9;
    std::mutex mu;
    parallel_for(g.points.size(), [&](size_t i) {
      Vec y = r.eval_vec(g.points[i]);
      double d = horn.contains(y, 1e-9) ? 0.0 : 1.0;
      if (d > 0) {
        std::lock_guard<std::mutex> lock(mu);
        rep.merge_violation(d, g.points[i]);
        rep.note = "image left J^{n-1}";
      }
    });
  }
  // Identity on the chamber to 1e-12.
  {
    SampleGrid g = sample(chamber, std::max(3, grid / 4));
    std::mutex mu;
    for (const Vec& x : g.points) {
      Vec y = r.eval_vec(x);
      double d = sup_dist(x, y);
      if (d > kAlgebraicTol) {
        std::lock_guard<std::mutex> lock(mu);
        rep.pass = false;
        rep.merge_violation(d, x);
        rep.note = "chamber identity violated";
      } else {
        rep.worst = std::max(rep.worst, d);
      }
    }
  }
  return rep;
}

VerificationReport check_homotopy_contracts(const CubeMap& H, const CubeMap& f0,
                                            const CubeMap* f1,
                                            const CubeDomain* relative,
                                            int grid, double tol) {
  VerificationReport rep;
  rep.check = "homotopy_contracts";
  rep.tol = tol;
  rep.grid = "grid=" + std::to_string(grid);
  int n = H.domain().dim() - 1;
  SampleGrid g = sample(CubeDomain::full_cube(n), grid);
  auto dist = [](const Value& a, const Value& b) {
    if (a.index() != b.index()) return 1.0;
    if (std::holds_alternative<Vec>(a)) return sup_dist(as_vec(a), as_vec(b));
    const CWPoint& p = as_cw(a);
    const CWPoint& q = as_cw(b);
    return p.cell == q.cell ? sup_dist(p.coords, q.coords) : 1.0;
  };
  for (const Vec& x : g.points) {
    Vec xt = x;
    xt.push_back(0.0);
    rep.merge_violation(dist(H.eval(xt), f0.eval(x)), x);
    if (f1) {
      xt.back() = 1.0;
      rep.merge_violation(dist(H.eval(xt), f1->eval(x)), x);
    }
    if (relative && relative->contains(x, 1e-9)) {
      Value base = f0.eval(x);
      for (double t : {0.2, 0.5, 0.8, 1.0}) {
        xt.back() = t;
        rep.merge_violation(dist(H.eval(xt), base), x);
      }
    }
  }
  return rep;
}

VerificationReport check_monotone(const SmoothFn1D& f, int grid, double lo,
                                  double hi) {
  VerificationReport rep;
  rep.check = "monotone";
  rep.tol = 1e-12;
  rep.grid = "grid=" + std::to_string(grid);
  double prev = f(lo);
  for (int i = 1; i < grid; ++i) {
    double t = lo + (hi - lo) * i / (grid - 1);
    double cur = f(t);
    double drop = prev - cur;
    rep.merge_violation(drop > 0 ? drop : 0.0, {t});
    prev = cur;
  }
  return rep;
}

namespace {
std::map<std::string, SuiteFn>& registry() {
  static std::map<std::string, SuiteFn> r;
  return r;
}
}  // namespace

void register_suite(const std::string& name, SuiteFn fn) {
  registry()[name] = std::move(fn);
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport out;
  out.name = name;
  if (name == "all") {
    for (const auto& [k, fn] : registry()) {
      SuiteReport sub = fn(cfg);
      for (auto& r : sub.reports) {
        r.check = k + "." + r.check;
        out.reports.push_back(std::move(r));
      }
    }
  } else {
    auto it = registry().find(name);
    if (it == registry().end()) fail("run_suite: unknown suite '" + name + "'");
    out = it->second(cfg);
    out.name = name;
  }
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace tamecell
