#include "tamecell/domains.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tamecell {

bool FaceBox::contains(const Vec& x, double tol) const {
  if (x.size() != axes.size()) return false;
  for (size_t i = 0; i < axes.size(); ++i) {
    if (x[i] < axes[i].lo - tol || x[i] > axes[i].hi + tol) return false;
  }
  return true;
}

namespace {

FaceBox cube_box(int n) {
  FaceBox b;
  b.axes.assign(n, {0.0, 1.0});
  return b;
}

std::vector<FaceBox> boundary_boxes(int n) {
  std::vector<FaceBox> out;
  for (int j = 0; j < n; ++j)
    for (int side = 0; side < 2; ++side) {
      FaceBox b = cube_box(n);
      b.axes[j] = {double(side), double(side)};
      out.push_back(b);
    }
  return out;
}

}  // namespace

CubeDomain CubeDomain::full_cube(int n) {
  if (n < 0) fail("full_cube: negative dimension");
  CubeDomain d(n, DomainKind::FullCube);
  d.boxes_ = {cube_box(n)};
  return d;
}

CubeDomain CubeDomain::boundary(int n) {
  if (n < 1) fail("boundary: need n >= 1");
  CubeDomain d(n, DomainKind::Boundary);
  d.boxes_ = boundary_boxes(n);
  return d;
}

CubeDomain CubeDomain::horn_j(int n) {
  if (n < 1) fail("horn_j: need ambient n >= 1");
  CubeDomain d(n, DomainKind::HornJ);
  for (int j = 0; j < n - 1; ++j)
    for (int side = 0; side < 2; ++side) {
      FaceBox b = cube_box(n);
      b.axes[j] = {double(side), double(side)};
      d.boxes_.push_back(b);
    }
  FaceBox top = cube_box(n);
  top.axes[n - 1] = {1.0, 1.0};
  d.boxes_.push_back(top);
  return d;
}

CubeDomain CubeDomain::horn_l(int n) {
  if (n < 1) fail("horn_l: need ambient n >= 1");
  CubeDomain d(n, DomainKind::HornL);
  for (int j = 0; j < n - 1; ++j)
    for (int side = 0; side < 2; ++side) {
      FaceBox b = cube_box(n);
      b.axes[j] = {double(side), double(side)};
      d.boxes_.push_back(b);
    }
  FaceBox bottom = cube_box(n);
  bottom.axes[n - 1] = {0.0, 0.0};
  d.boxes_.push_back(bottom);
  return d;
}

CubeDomain CubeDomain::subcube(int n, int k, const std::vector<int>& index) {
  if (k < 1 || int(index.size()) != n) fail("subcube: bad parameters");
  CubeDomain d(n, DomainKind::Subcube);
  FaceBox b;
  for (int j = 0; j < n; ++j) {
    if (index[j] < 1 || index[j] > k) fail("subcube: index out of range");
    b.axes.push_back({double(index[j] - 1) / k, double(index[j]) / k});
  }
  d.boxes_ = {b};
  return d;
}

CubeDomain CubeDomain::box(std::vector<AxisRange> axes) {
  CubeDomain d(int(axes.size()), DomainKind::Subcube);
  FaceBox b;
  b.axes = std::move(axes);
  d.boxes_ = {b};
  return d;
}

CubeDomain CubeDomain::product_with_interval(const CubeDomain& base) {
  CubeDomain d(base.dim_ + 1, DomainKind::ProductWithI);
  for (FaceBox b : base.boxes_) {
    b.axes.push_back({0.0, 1.0});
    d.boxes_.push_back(b);
  }
  return d;
}

CubeDomain CubeDomain::finite_union(std::vector<CubeDomain> parts) {
  if (parts.empty()) fail("finite_union: empty");
  CubeDomain d(parts[0].dim_, DomainKind::Union);
  for (const auto& p : parts) {
    if (p.dim_ != d.dim_) fail("finite_union: dimension mismatch");
    d.boxes_.insert(d.boxes_.end(), p.boxes_.begin(), p.boxes_.end());
  }
  return d;
}

CubeDomain CubeDomain::chamber(double eps) const {
  if (!(eps > 0.0 && eps <= 0.5)) fail("chamber: eps out of (0, 1/2]");
  CubeDomain d(dim_, DomainKind::Chamber);
  d.eps_ = eps;
  // Shrink the free axes of each maximal face relative to their length.
  for (FaceBox b : boxes_) {
    for (auto& a : b.axes) {
      if (!a.pinned()) {
        double len = a.hi - a.lo;
        a = {a.lo + eps * len, a.hi - eps * len};
      }
    }
    d.boxes_.push_back(b);
  }
  return d;
}

bool CubeDomain::contains(const Vec& x, double tol) const {
  if (int(x.size()) != dim_) fail("membership: dimension mismatch");
  for (const auto& b : boxes_)
    if (b.contains(x, tol)) return true;
  return false;
}

std::string CubeDomain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DomainKind::FullCube: os << "I^" << dim_; break;
    case DomainKind::Boundary: os << "dI^" << dim_; break;
    case DomainKind::HornJ: os << "J^" << (dim_ - 1); break;
    case DomainKind::HornL: os << "L^" << (dim_ - 1); break;
    case DomainKind::Chamber: os << "chamber(eps=" << eps_ << ")"; break;
    case DomainKind::Subcube: os << "subcube^" << dim_; break;
    case DomainKind::ProductWithI: os << "prod_I^" << dim_; break;
    case DomainKind::Union: os << "union^" << dim_; break;
  }
  return os.str();
}

SampleGrid sample(const CubeDomain& d, int resolution, unsigned jitter_seed) {
  if (resolution < 1) fail("sample: resolution >= 1 required");
  SampleGrid g;
  g.resolution = resolution;
  g.seed = jitter_seed;
  std::map<std::vector<long long>, bool> seen;  // dedupe on scaled coords
  unsigned rng = jitter_seed ? jitter_seed : 1u;
  auto next_unit = [&rng]() {
    rng = rng * 1664525u + 1013904223u;
    return double(rng >> 8) / double(1u << 24);
  };
  for (const auto& b : d.boxes()) {
    std::vector<int> free_axes;
    for (size_t j = 0; j < b.axes.size(); ++j)
      if (!b.axes[j].pinned()) free_axes.push_back(int(j));
    size_t count = 1;
    for (size_t i = 0; i < free_axes.size(); ++i) count *= size_t(resolution);
    for (size_t it = 0; it < count; ++it) {
      Vec x(b.axes.size());
      for (size_t j = 0; j < b.axes.size(); ++j) x[j] = b.axes[j].lo;
      size_t rem = it;
      for (int fa : free_axes) {
        int step = int(rem % size_t(resolution));
        rem /= size_t(resolution);
        const auto& a = b.axes[size_t(fa)];
        double t = resolution == 1 ? 0.5 : double(step) / (resolution - 1);
        x[size_t(fa)] = a.lo + t * (a.hi - a.lo);
      }
      std::vector<long long> key(x.size());
      for (size_t j = 0; j < x.size(); ++j)
        key[j] = llround(x[j] * 1e12);
      if (seen.emplace(key, true).second) {
        if (jitter_seed) {
          for (int fa : free_axes) {
            const auto& a = b.axes[size_t(fa)];
            double h = (a.hi - a.lo) / std::max(1, resolution - 1);
            double y = x[size_t(fa)] + (next_unit() - 0.5) * 0.5 * h;
            x[size_t(fa)] = std::clamp(y, a.lo, a.hi);
          }
        }
        g.points.push_back(std::move(x));
      }
    }
  }
  return g;
}

std::vector<FaceDescriptor> faces(int n) {
  std::vector<FaceDescriptor> out;
  for (int j = 0; j < n; ++j)
    for (int side = 0; side < 2; ++side) out.push_back({j, side});
  return out;
}

Vec SubcubeChart::to_global(const Vec& local) const {
  Vec g(local.size());
  for (size_t j = 0; j < local.size(); ++j)
    g[j] = (local[j] + index[j] - 1) / k;
  return g;
}

Vec SubcubeChart::to_local(const Vec& global) const {
  Vec l(global.size());
  for (size_t j = 0; j < global.size(); ++j)
    l[j] = global[j] * k - (index[j] - 1);
  return l;
}

std::vector<SubcubeChart> subcube_lattice(int n, int k) {
  if (n < 1 || k < 1) fail("subcube_lattice: need n, k >= 1");
  std::vector<SubcubeChart> out;
  std::vector<int> idx(n, 1);
  for (;;) {
    out.push_back({idx, k});
    int j = 0;
    for (; j < n; ++j) {
      if (idx[j] < k) {
        ++idx[j];
        break;
      }
      idx[j] = 1;
    }
    if (j == n) break;
  }
  return out;
}

}  // namespace tamecell
