#pragma once

#include <utility>
#include <vector>

#include "wedgehull/linalg.hpp"

namespace wedge {

// S^d ∩ H_1^+ ∩ ... ∩ H_j^+ with H_i = n_i^perp. The standard right-angled
// wedge uses n_1 = e_d, n_2 = e_{d+1}; the center is the normalized sum of
// the normals.
class WedgeModel {
 public:
  static WedgeModel right_angle(int d);
  static WedgeModel half_sphere(int d);
  // j mutually orthogonal normals e_{d+2-j}, ..., e_{d+1}.
  static WedgeModel orthant(int d, int j);
  static WedgeModel with_normals(int d, std::vector<AmbientVector> normals);

  int d() const noexcept { return d_; }
  int j() const noexcept { return static_cast<int>(normals_.size()); }
  std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(d_) + 1; }
  const std::vector<AmbientVector>& normals() const noexcept { return normals_; }
  const AmbientVector& center() const noexcept { return center_; }
  bool orthogonal_normals() const noexcept { return orthogonal_; }
  // Normals are coordinate axes (e.g. right_angle, half_sphere, orthant).
  bool axis_aligned() const noexcept { return axis_aligned_; }

 private:
  WedgeModel(int d, std::vector<AmbientVector> normals);

  int d_;
  std::vector<AmbientVector> normals_;
  AmbientVector center_;
  bool orthogonal_ = false;
  bool axis_aligned_ = false;
};

// σ_d of the wedge, ω_{d+1}/2^j for orthogonal normals. Throws DomainError
// for other normal configurations (no closed form is used for them).
double wedge_measure(const WedgeModel& m);

bool wedge_contains(const WedgeModel& m, std::span<const double> z) noexcept;
inline bool wedge_contains(const WedgeModel& m, const AmbientVector& z) noexcept {
  return wedge_contains(m, z.coords());
}

// g_u(v) = v/(u·v) - u. Throws HalfSphereViolation when u·v <= 1e-12.
AmbientVector gnomonic_project(const AmbientVector& u, const AmbientVector& v);
// (x + u)/‖x + u‖ for x ⊥ u. Throws DomainError when |x·u| > 1e-10.
AmbientVector gnomonic_inverse(const AmbientVector& u, const AmbientVector& x);

// Coordinates (φ, ψ, u) of a normal direction
//   Z(φ,ψ,u) = sinφ sinψ u − cosφ sinψ e_d − cosψ e_{d+1},
// with u a unit vector of span{e_1, ..., e_{d-1}} (stored with d-1 entries).
struct WedgeCoords {
  double phi = 0.0;
  double psi = 0.0;
  AmbientVector u;
};

AmbientVector wedge_param(const WedgeCoords& c, int d);

enum class ChartPolicy { canonicalize, strict };

struct ChartPoint {
  WedgeCoords coords;
  // Set when φ or u is not determined by z (ψ = 0, or sinφ = 0).
  bool singular = false;
};

// Inverts wedge_param on the half z_{d+1} <= 0. At the singular points the
// free coordinates are set to φ = 0 (ψ = 0 only) and u = e_1; with
// ChartPolicy::strict a ChartSingular is thrown instead.
ChartPoint wedge_param_inverse(const AmbientVector& z,
                               ChartPolicy policy = ChartPolicy::canonicalize);

// Dihedral angle β ∈ [0, π] of the cross-section wedge ∩ H(Z(φ,ψ,u)):
// sinβ ∝ sinφ and cosβ ∝ cosφ cosψ with the common factor
// 1/sqrt(cos²ψ + sin²φ sin²ψ).
double opening_angle(double phi, double psi);

// Reflection of the chart across span{e_d + e_{d+1}} + (e_d, e_{d+1})^perp:
// (φ, ψ) ↦ (φ̃, ψ̃) with tanφ̃ = tanψ sinφ and tanφ = tanψ̃ sinφ̃.
// Defined on the open square (0, π/2)²; an involution.
std::pair<double, double> napier_reflect(double phi, double psi);

// |det ∇G| at (φ̃, ψ̃) for G(φ̃, ψ̃) = (φ, ψ), in closed form
// tanψ̃ / sqrt(1 + tan²ψ̃ sin²φ̃).
double napier_jacobian(double phi_t, double psi_t);

}  // namespace wedge
