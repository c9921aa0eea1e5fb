#include "wedgehull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wedgehull/errors.hpp"
#include "wedgehull/linalg.hpp"
#include "wedgehull/parallel.hpp"
#include "wedgehull/predicates.hpp"
#include "wedgehull/tolerances.hpp"

namespace wedge {

namespace {

constexpr std::size_t kAmbientCapHighDim = 120;

std::size_t count_vertices(const std::vector<Facet>& facets) {
  std::vector<std::uint32_t> all;
  for (const auto& f : facets) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

// Advances idx to the next k-subset of {0..n-1} with idx[0] fixed.
bool next_tail(std::vector<std::uint32_t>& idx, std::uint32_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 1) {
    --i;
    if (idx[i] < n - static_cast<std::uint32_t>(k - i)) {
      ++idx[i];
      for (std::size_t t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
      return true;
    }
  }
  return false;
}

struct AmbientPart {
  std::vector<Facet> facets;
  std::size_t ambiguous = 0;
};

AmbientPart scan_first_index(const SampleCloud& cloud, std::uint32_t first) {
  AmbientPart part;
  const std::size_t dim = cloud.dim();
  const std::size_t d = dim - 1;
  const auto n = static_cast<std::uint32_t>(cloud.size());
  if (first + d > n) return part;
  std::vector<std::uint32_t> idx(d);
  std::iota(idx.begin(), idx.end(), first);
  std::vector<double> rows(d * dim);
  std::vector<double> t(n);
  do {
    for (std::size_t r = 0; r < d; ++r) {
      const auto p = cloud.point(idx[r]);
      std::copy(p.begin(), p.end(), rows.begin() + static_cast<std::ptrdiff_t>(r * dim));
    }
    const std::vector<double> z = generalized_cross(rows, dim);
    double scale = 0.0;
    for (std::uint32_t y = 0; y < n; ++y) {
      t[y] = dot(z, cloud.point(y));
      scale = std::max(scale, std::fabs(t[y]));
    }
    const double cut = tol::facet_sign * scale;
    std::size_t pos = 0, neg = 0, small = 0;
    std::size_t r = 0;
    for (std::uint32_t y = 0; y < n; ++y) {
      if (r < d && idx[r] == y) {
        ++r;
        continue;
      }
      if (std::fabs(t[y]) <= cut) {
        ++small;
      } else if (t[y] > 0.0) {
        ++pos;
      } else {
        ++neg;
      }
      if (pos > 0 && neg > 0) break;
    }
    if (pos > 0 && neg > 0) continue;
    if (small > 0 || scale == 0.0) {
      ++part.ambiguous;
      continue;
    }
    part.facets.emplace_back(idx.begin(), idx.end());
  } while (next_tail(idx, n));
  return part;
}

FacetSet finish(std::vector<Facet> facets, std::size_t ambiguous) {
  for (auto& f : facets) std::sort(f.begin(), f.end());
  std::sort(facets.begin(), facets.end());
  FacetSet out;
  out.vertex_count = count_vertices(facets);
  out.facets = std::move(facets);
  out.ambiguous_subsets = ambiguous;
  out.degenerate_flag = ambiguous > 0;
  return out;
}

std::vector<double> project_cloud(const SampleCloud& cloud) {
  const AmbientVector& p = cloud.model().center();
  const TangentFrame frame(p);
  const std::size_t d = cloud.dim() - 1;
  std::vector<double> y(cloud.size() * d);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud.point(i);
    const double h = dot(p.coords(), x);
    if (h <= tol::half_sphere)
      throw HalfSphereViolation("point " + std::to_string(i) + " is not in front of the wedge center");
    frame.coordinates(x, c);
    for (std::size_t k = 0; k < d; ++k) y[i * d + k] = c[k] / h;
  }
  return y;
}

}  // namespace

FacetSet facets_ambient(const SampleCloud& cloud, int workers) {
  const std::size_t d = cloud.dim() - 1;
  const std::size_t n = cloud.size();
  if (n < d + 1) return {};
  if (d >= 4 && n > kAmbientCapHighDim)
    throw ResourceLimit("facets_ambient: d >= 4 is limited to 120 points, got " + std::to_string(n));
  std::vector<AmbientPart> parts(n - d + 1);
  parallel_for(parts.size(), workers,
               [&](std::size_t i) { parts[i] = scan_first_index(cloud, static_cast<std::uint32_t>(i)); });
  std::vector<Facet> facets;
  std::size_t ambiguous = 0;
  for (auto& part : parts) {
    ambiguous += part.ambiguous;
    std::move(part.facets.begin(), part.facets.end(), std::back_inserter(facets));
  }
  return finish(std::move(facets), ambiguous);
}

namespace {

// Akl–Toussaint: points strictly inside the polygon of the eight extreme
// points in the directions k·45° cannot be hull vertices.
std::vector<std::uint32_t> prefilter_2d(std::span<const double> xy, std::uint32_t n) {
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  if (n < 64) return all;
  static constexpr double kDir[8][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}};
  std::array<std::uint32_t, 8> ext{};
  std::array<double, 8> best;
  best.fill(-INFINITY);
  for (std::uint32_t i = 0; i < n; ++i)
    for (int k = 0; k < 8; ++k) {
      const double v = kDir[k][0] * xy[2 * i] + kDir[k][1] * xy[2 * i + 1];
      if (v > best[k]) {
        best[k] = v;
        ext[k] = i;
      }
    }
  std::vector<std::uint32_t> poly;
  for (std::uint32_t e : ext)
    if (poly.empty() || poly.back() != e) poly.push_back(e);
  while (poly.size() > 1 && poly.back() == poly.front()) poly.pop_back();
  if (poly.size() < 3) return all;
  std::vector<std::uint32_t> keep;
  for (std::uint32_t i = 0; i < n; ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < poly.size() && inside; ++k) {
      const std::uint32_t a = poly[k], b = poly[(k + 1) % poly.size()];
      inside = orient2d(&xy[2 * a], &xy[2 * b], &xy[2 * i]) > 0;
    }
    if (!inside) keep.push_back(i);
  }
  return keep;
}

}  // namespace

std::vector<std::uint32_t> convex_hull_2d(std::span<const double> xy) {
  std::vector<std::uint32_t> order = prefilter_2d(xy, static_cast<std::uint32_t>(xy.size() / 2));
  const auto n = static_cast<std::uint32_t>(order.size());
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return xy[2 * a] < xy[2 * b] || (xy[2 * a] == xy[2 * b] && xy[2 * a + 1] < xy[2 * b + 1]);
  });
  if (n < 3) return order;
  std::vector<std::uint32_t> hull(2 * static_cast<std::size_t>(n));
  std::size_t k = 0;
  auto turn = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    const int s = orient2d(&xy[2 * a], &xy[2 * b], &xy[2 * c]);
    if (s == 0) throw DegenerateInput("convex_hull_2d: exactly collinear triple");
    return s;
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], order[i]) < 0) --k;
    hull[k++] = order[i];
  }
  const std::size_t lower = k + 1;
  for (std::uint32_t i = n - 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], order[i]) < 0) --k;
    hull[k++] = order[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::array<std::uint32_t, 3>> convex_hull_3d(std::span<const double> xyz) {
  using Face = std::array<std::uint32_t, 3>;
  const auto n = static_cast<std::uint32_t>(xyz.size() / 3);
  if (n < 4) return {};
  auto pt = [&](std::uint32_t i) { return &xyz[3 * static_cast<std::size_t>(i)]; };

  std::uint32_t a = 0, b = 1, c = 2, apex = 3;
  int s = 0;
  for (; apex < n; ++apex) {
    s = orient3d(pt(a), pt(b), pt(c), pt(apex));
    if (s != 0) break;
  }
  if (s == 0) throw DegenerateInput("convex_hull_3d: no initial tetrahedron");
  if (s < 0) std::swap(b, c);

  std::vector<Face> faces{{a, b, c}, {a, apex, b}, {b, apex, c}, {c, apex, a}};
  std::vector<Face> kept;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (q == a || q == b || q == c || q == apex) continue;
    kept.clear();
    edges.clear();
    for (const Face& f : faces) {
      const int o = orient3d(pt(f[0]), pt(f[1]), pt(f[2]), pt(q));
      if (o == 0) throw DegenerateInput("convex_hull_3d: point coplanar with a hull face");
      if (o > 0) {
        kept.push_back(f);
      } else {
        edges.emplace_back(f[0], f[1]);
        edges.emplace_back(f[1], f[2]);
        edges.emplace_back(f[2], f[0]);
      }
    }
    if (edges.empty()) continue;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges)
      if (!std::binary_search(edges.begin(), edges.end(), std::make_pair(e.second, e.first)))
        kept.push_back({e.first, e.second, q});
    faces.swap(kept);
  }
  return faces;
}

FacetSet facets_projected(const SampleCloud& cloud) {
  const std::size_t d = cloud.dim() - 1;
  const std::size_t n = cloud.size();
  if (n < d + 1) return {};
  if (d >= 4) return facets_ambient(cloud);
  const std::vector<double> y = project_cloud(cloud);
  std::vector<Facet> facets;
  if (d == 2) {
    const auto ring = convex_hull_2d(y);
    for (std::size_t i = 0; i < ring.size(); ++i) facets.push_back({ring[i], ring[(i + 1) % ring.size()]});
  } else {
    for (const auto& f : convex_hull_3d(y)) facets.push_back({f[0], f[1], f[2]});
  }
  return finish(std::move(facets), 0);
}

FacetSet count_facets(const SampleCloud& cloud) {
  return cloud.dim() - 1 <= 3 ? facets_projected(cloud) : facets_ambient(cloud);
}

}  // namespace wedge
