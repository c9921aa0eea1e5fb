#pragma once

// Numerical tolerances shared by all modules.

namespace wedge::tol {

// |‖v‖ - 1| bound for vectors treated as points of the sphere.
inline constexpr double unit_norm = 1e-12;

// |x·u| bound for the tangent-plane argument of the inverse projection.
inline constexpr double orthogonality = 1e-10;

// sin(psi) / sin(phi) below this are chart singularities.
inline constexpr double chart_singular = 1e-12;

// Minimum u·v accepted by the gnomonic projection.
inline constexpr double half_sphere = 1e-12;

// Slack for wedge membership tests (z·n >= -wedge_membership).
inline constexpr double wedge_membership = 1e-12;

// Facet sign test: |z·y| <= facet_sign * max|z·y| is ambiguous.
inline constexpr double facet_sign = 1e-10;

// Gram determinants closer than this to zero use the eigen fallback.
inline constexpr double gram_singular = 1e-14;

// Orthonormality of a normal list before the fold sampler is used.
inline constexpr double normals_orthogonal = 1e-12;

}  // namespace wedge::tol
