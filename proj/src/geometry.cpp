#include "wedgehull/geometry.hpp"

#include <cmath>
#include <numbers>

#include "wedgehull/errors.hpp"
#include "wedgehull/formulas.hpp"

namespace wedge {

namespace {

void require_unit(const AmbientVector& v, const char* what) {
  if (!v.is_unit()) throw DomainError(std::string(what) + " must be a unit vector");
}

}  // namespace

WedgeModel::WedgeModel(int d, std::vector<AmbientVector> normals)
    : d_(d), normals_(std::move(normals)) {
  if (d_ < 2) throw DomainError("wedge dimension d must be >= 2");
  if (normals_.empty()) throw DomainError("wedge needs at least one normal");
  if (normals_.size() > ambient_dim()) throw DomainError("more normals than dimensions");
  const std::size_t n = ambient_dim();
  for (const auto& v : normals_) {
    if (v.dim() != n) throw DomainError("normal has wrong dimension");
    require_unit(v, "wedge normal");
  }

  // Linear independence of the whole list (general position).
  std::vector<double> rows;
  for (const auto& v : normals_) rows.insert(rows.end(), v.coords().begin(), v.coords().end());
  if (parallelotope_volume(rows, normals_.size(), n) < 1e-12)
    throw DomainError("wedge normals are linearly dependent");

  orthogonal_ = true;
  for (std::size_t a = 0; a < normals_.size(); ++a)
    for (std::size_t b = a + 1; b < normals_.size(); ++b)
      if (std::abs(dot(normals_[a], normals_[b])) > tol::normals_orthogonal) orthogonal_ = false;
  if (normals_.size() == 2 && !orthogonal_)
    throw DomainError("two-hyperplane wedges must be right-angled");

  axis_aligned_ = true;
  for (const auto& v : normals_) {
    int ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 1.0) ++ones;
      else if (v[i] != 0.0) axis_aligned_ = false;
    }
    if (ones != 1) axis_aligned_ = false;
  }

  AmbientVector sum(n);
  for (const auto& v : normals_) sum += v;
  center_ = sum.normalized();
  for (const auto& v : normals_)
    if (!(dot(center_, v) > 0.0)) throw DomainError("wedge center not inside every halfspace");
}

WedgeModel WedgeModel::right_angle(int d) { return orthant(d, 2); }

WedgeModel WedgeModel::half_sphere(int d) { return orthant(d, 1); }

WedgeModel WedgeModel::orthant(int d, int j) {
  if (d < 2) throw DomainError("wedge dimension d must be >= 2");
  if (j < 1 || j > d + 1) throw DomainError("number of hyperplanes out of range");
  const auto n = static_cast<std::size_t>(d) + 1;
  std::vector<AmbientVector> normals;
  // e_d, e_{d+1} for j = 2; generally the last j axes in increasing order.
  for (std::size_t k = n - static_cast<std::size_t>(j); k < n; ++k)
    normals.push_back(AmbientVector::axis(n, k));
  return WedgeModel(d, std::move(normals));
}

WedgeModel WedgeModel::with_normals(int d, std::vector<AmbientVector> normals) {
  return WedgeModel(d, std::move(normals));
}

double wedge_measure(const WedgeModel& m) {
  if (!m.orthogonal_normals())
    throw DomainError("wedge measure has no closed form for non-orthogonal normals");
  return omega(m.d() + 1) / std::ldexp(1.0, m.j());
}

bool wedge_contains(const WedgeModel& m, std::span<const double> z) noexcept {
  if (m.axis_aligned()) {
    for (const auto& n : m.normals())
      for (std::size_t i = 0; i < n.dim(); ++i)
        if (n[i] == 1.0 && z[i] < -tol::wedge_membership) return false;
    return true;
  }
  for (const auto& n : m.normals())
    if (dot(n.coords(), z) < -tol::wedge_membership) return false;
  return true;
}

AmbientVector gnomonic_project(const AmbientVector& u, const AmbientVector& v) {
  if (u.dim() != v.dim()) throw DomainError("dimension mismatch");
  const double uv = dot(u, v);
  if (!(uv > tol::half_sphere))
    throw HalfSphereViolation("gnomonic projection needs u·v > 0");
  AmbientVector out(v);
  out *= 1.0 / uv;
  out -= u;
  return out;
}

AmbientVector gnomonic_inverse(const AmbientVector& u, const AmbientVector& x) {
  if (u.dim() != x.dim()) throw DomainError("dimension mismatch");
  if (std::abs(dot(u, x)) > tol::orthogonality)
    throw DomainError("inverse gnomonic projection needs x ⊥ u");
  return (x + u).normalized();
}

AmbientVector wedge_param(const WedgeCoords& c, int d) {
  if (d < 2) throw DomainError("wedge dimension d must be >= 2");
  const auto n = static_cast<std::size_t>(d) + 1;
  if (c.u.dim() != n - 2) throw DomainError("u must live in span{e_1..e_{d-1}}");
  const double sphi = std::sin(c.phi), cphi = std::cos(c.phi);
  const double spsi = std::sin(c.psi), cpsi = std::cos(c.psi);
  AmbientVector z(n);
  for (std::size_t i = 0; i + 2 < n; ++i) z[i] = sphi * spsi * c.u[i];
  z[n - 2] = -cphi * spsi;
  z[n - 1] = -cpsi;
  return z;
}

ChartPoint wedge_param_inverse(const AmbientVector& z, ChartPolicy policy) {
  const std::size_t n = z.dim();
  if (n < 3) throw DomainError("wedge_param_inverse needs d + 1 >= 3");
  if (z[n - 1] > tol::unit_norm)
    throw DomainError("chart covers z_{d+1} <= 0; apply the antipodal map first");

  ChartPoint out;
  out.coords.u = AmbientVector::axis(n - 2, 0);
  double wnorm2 = 0.0;
  for (std::size_t i = 0; i + 2 < n; ++i) wnorm2 += z[i] * z[i];
  const double wnorm = std::sqrt(wnorm2);
  const double spsi = std::hypot(wnorm, z[n - 2]);
  out.coords.psi = std::atan2(spsi, -z[n - 1]);

  if (spsi < tol::chart_singular) {
    if (policy == ChartPolicy::strict) throw ChartSingular("pole of the chart (psi = 0)");
    out.coords.psi = 0.0;
    out.coords.phi = 0.0;
    out.singular = true;
    return out;
  }
  out.coords.phi = std::atan2(wnorm, -z[n - 2]);
  if (wnorm < tol::chart_singular * spsi) {
    if (policy == ChartPolicy::strict) throw ChartSingular("sin(phi) = 0, u undetermined");
    out.singular = true;
    return out;
  }
  for (std::size_t i = 0; i + 2 < n; ++i) out.coords.u[i] = z[i] / wnorm;
  return out;
}

double opening_angle(double phi, double psi) {
  return std::atan2(std::sin(phi), std::cos(phi) * std::cos(psi));
}

std::pair<double, double> napier_reflect(double phi, double psi) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(phi > 0.0 && phi < half_pi && psi > 0.0 && psi < half_pi))
    throw DomainError("napier_reflect is defined on (0, pi/2)^2");
  const double phi_t = std::atan(std::tan(psi) * std::sin(phi));
  const double psi_t = std::atan(std::tan(phi) / std::sin(phi_t));
  return {phi_t, psi_t};
}

double napier_jacobian(double phi_t, double psi_t) {
  const double tp = std::tan(psi_t);
  const double sp = std::sin(phi_t);
  return tp / std::sqrt(1.0 + tp * tp * sp * sp);
}

}  // namespace wedge
