#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "wedgehull/tolerances.hpp"

namespace wedge {

// A point of R^{d+1}. Most call sites treat it as a point of the unit
// sphere S^d; `is_unit` checks that tag.
class AmbientVector {
 public:
  AmbientVector() = default;
  explicit AmbientVector(std::size_t dim) : c_(dim, 0.0) {}
  explicit AmbientVector(std::vector<double> coords) : c_(std::move(coords)) {}
  explicit AmbientVector(std::span<const double> coords)
      : c_(coords.begin(), coords.end()) {}
  AmbientVector(std::initializer_list<double> coords) : c_(coords) {}

  // Standard basis vector; `index` is 0-based, so e_{d+1} is axis(d+1, d).
  static AmbientVector axis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return c_.size(); }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return c_; }
  std::span<double> coords() noexcept { return c_; }

  double norm() const noexcept;
  bool is_unit(double tolerance = tol::unit_norm) const noexcept;
  AmbientVector normalized() const;

  AmbientVector& operator+=(const AmbientVector& o);
  AmbientVector& operator-=(const AmbientVector& o);
  AmbientVector& operator*=(double s) noexcept;

  friend AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
  friend AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
  friend AmbientVector operator*(AmbientVector a, double s) { return a *= s; }
  friend AmbientVector operator*(double s, AmbientVector a) { return a *= s; }
  friend AmbientVector operator-(AmbientVector a) { return a *= -1.0; }
  friend bool operator==(const AmbientVector&, const AmbientVector&) = default;

 private:
  std::vector<double> c_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;
inline double dot(const AmbientVector& a, const AmbientVector& b) noexcept {
  return dot(a.coords(), b.coords());
}
double max_abs_diff(const AmbientVector& a, const AmbientVector& b) noexcept;

// Normal of the linear hyperplane spanned by `dim - 1` vectors of R^dim,
// stored row-major in `rows`. Component k is the signed (dim-1)-minor
// obtained by deleting column k, so the result vanishes iff the rows are
// linearly dependent.
std::vector<double> generalized_cross(std::span<const double> rows, std::size_t dim);

// k-dimensional volume of the parallelotope spanned by `count` vectors of
// R^dim (row-major): sqrt(det Gram). Near-singular Gram matrices are
// evaluated through their eigenvalues.
double parallelotope_volume(std::span<const double> rows, std::size_t count,
                            std::size_t dim);

// Orthonormal basis of the hyperplane orthogonal to a unit vector p, built
// from one Householder reflection.
class TangentFrame {
 public:
  explicit TangentFrame(const AmbientVector& p);

  std::size_t ambient_dim() const noexcept { return dim_; }
  const AmbientVector& pole() const noexcept { return pole_; }
  // i-th basis vector of p^perp, i < ambient_dim() - 1.
  std::span<const double> basis(std::size_t i) const noexcept {
    return {basis_.data() + i * dim_, dim_};
  }
  // Writes the ambient_dim()-1 frame coordinates of the vector x.
  void coordinates(std::span<const double> x, std::span<double> out) const noexcept;
  // Inverse of `coordinates`: sum_i c_i b_i.
  AmbientVector embed(std::span<const double> c) const;

 private:
  std::size_t dim_;
  AmbientVector pole_;
  std::vector<double> basis_;
};

}  // namespace wedge
