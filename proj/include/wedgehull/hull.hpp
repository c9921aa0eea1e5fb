#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wedgehull/sampling.hpp"

namespace wedge {

using Facet = std::vector<std::uint32_t>;

struct FacetSet {
  // Sorted index tuples, in lexicographic order.
  std::vector<Facet> facets;
  std::size_t vertex_count = 0;
  // Set when some d-subset could not be classified and was left out.
  bool degenerate_flag = false;
  std::size_t ambiguous_subsets = 0;

  std::size_t facet_count() const noexcept { return facets.size(); }
};

// Exhaustive test over all d-subsets: a subset spans a facet iff every other
// point lies strictly on one side of the linear hyperplane through it.
// Clouds with fewer than d+1 points have no facets. For d >= 4 the cloud is
// limited to 120 points (ResourceLimit).
FacetSet facets_ambient(const SampleCloud& cloud, int workers = 1);

// Gnomonic projection at the wedge center followed by a Euclidean hull
// (monotone chain for d = 2, incremental for d = 3, facets_ambient above).
// Throws HalfSphereViolation for points not in front of the center and
// DegenerateInput for exactly collinear/coplanar configurations.
FacetSet facets_projected(const SampleCloud& cloud);

// Facets via facets_projected for d <= 3, facets_ambient otherwise.
FacetSet count_facets(const SampleCloud& cloud);

// Indices of the hull vertices of planar points (xy interleaved) in
// counter-clockwise order, collinear points excluded. Throws DegenerateInput
// if an exact collinearity decides the hull.
std::vector<std::uint32_t> convex_hull_2d(std::span<const double> xy);

// Triangular facets of the 3D hull of xyz-interleaved points, each as an
// ordered triple with outward counter-clockwise orientation.
std::vector<std::array<std::uint32_t, 3>> convex_hull_3d(std::span<const double> xyz);

}  // namespace wedge
