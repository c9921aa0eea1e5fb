#include "wedgehull/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "wedgehull/errors.hpp"

namespace wedge {

AmbientVector AmbientVector::axis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DomainError("axis index out of range");
  AmbientVector v(dim);
  v[index] = 1.0;
  return v;
}

double AmbientVector::norm() const noexcept { return std::sqrt(dot(c_, c_)); }

bool AmbientVector::is_unit(double tolerance) const noexcept {
  return std::abs(norm() - 1.0) <= tolerance;
}

AmbientVector AmbientVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero vector");
  AmbientVector out(*this);
  for (double& x : out.c_) x /= n;
  return out;
}

AmbientVector& AmbientVector::operator+=(const AmbientVector& o) {
  if (o.dim() != dim()) throw DomainError("dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& o) {
  if (o.dim() != dim()) throw DomainError("dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

AmbientVector& AmbientVector::operator*=(double s) noexcept {
  for (double& x : c_) x *= s;
  return *this;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const AmbientVector& a, const AmbientVector& b) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> generalized_cross(std::span<const double> rows, std::size_t dim) {
  if (dim < 2 || rows.size() != (dim - 1) * dim)
    throw DomainError("generalized_cross expects dim-1 rows of length dim");
  std::vector<double> z(dim);
  if (dim == 3) {
    const double* a = rows.data();
    const double* b = rows.data() + 3;
    z[0] = a[1] * b[2] - a[2] * b[1];
    z[1] = a[2] * b[0] - a[0] * b[2];
    z[2] = a[0] * b[1] - a[1] * b[0];
    return z;
  }
  const auto m = static_cast<Eigen::Index>(dim - 1);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      full(rows.data(), m, m + 1);
  Eigen::MatrixXd minor(m, m);
  for (Eigen::Index k = 0; k <= m; ++k) {
    if (k > 0) minor.leftCols(k) = full.leftCols(k);
    if (k < m) minor.rightCols(m - k) = full.rightCols(m - k);
    // Cofactor along an appended last row, so z·y = det[rows; y].
    const double sign = ((m + k) % 2 == 0) ? 1.0 : -1.0;
    z[static_cast<std::size_t>(k)] = sign * minor.determinant();
  }
  return z;
}

double parallelotope_volume(std::span<const double> rows, std::size_t count,
                            std::size_t dim) {
  if (rows.size() != count * dim) throw DomainError("parallelotope_volume: bad shape");
  if (count == 0) return 1.0;
  if (count > dim) return 0.0;

  constexpr std::size_t kStack = 16;
  std::array<double, kStack * kStack> stack_buf{};
  std::vector<double> heap_buf;
  double* g = stack_buf.data();
  if (count > kStack) {
    heap_buf.assign(count * count, 0.0);
    g = heap_buf.data();
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = dot(rows.subspan(i * dim, dim), rows.subspan(j * dim, dim));
      g[i * count + j] = v;
      g[j * count + i] = v;
    }
  }

  // Cholesky in place; the determinant is the product of squared pivots.
  std::vector<double> gram_copy(g, g + count * count);
  double det = 1.0;
  bool ok = true;
  for (std::size_t j = 0; j < count && ok; ++j) {
    double diag = g[j * count + j];
    for (std::size_t k = 0; k < j; ++k) diag -= g[j * count + k] * g[j * count + k];
    if (!(diag > 0.0)) {
      ok = false;
      break;
    }
    const double l = std::sqrt(diag);
    g[j * count + j] = l;
    det *= diag;
    for (std::size_t i = j + 1; i < count; ++i) {
      double s = g[i * count + j];
      for (std::size_t k = 0; k < j; ++k) s -= g[i * count + k] * g[j * count + k];
      g[i * count + j] = s / l;
    }
  }
  if (ok && det > tol::gram_singular) return std::sqrt(det);

  const auto n = static_cast<Eigen::Index>(count);
  Eigen::Map<const Eigen::MatrixXd> gram(gram_copy.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) prod *= std::max(es.eigenvalues()[i], 0.0);
  return std::sqrt(prod);
}

TangentFrame::TangentFrame(const AmbientVector& p) : dim_(p.dim()), pole_(p) {
  if (dim_ < 2) throw DomainError("TangentFrame needs dimension >= 2");
  if (!p.is_unit()) throw DomainError("TangentFrame pole must be a unit vector");
  std::size_t k = 0;
  for (std::size_t i = 1; i < dim_; ++i)
    if (std::abs(p[i]) > std::abs(p[k])) k = i;
  // v = p + sign(p_k) e_k; H = I - 2 v v^T / (v^T v) maps e_k onto -sign(p_k) p,
  // so the remaining columns of H span p^perp.
  AmbientVector v = p;
  const double s = p[k] >= 0.0 ? 1.0 : -1.0;
  v[k] += s;
  const double vv = dot(v, v);
  basis_.reserve((dim_ - 1) * dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    if (col == k) continue;
    for (std::size_t row = 0; row < dim_; ++row) {
      const double id = row == col ? 1.0 : 0.0;
      basis_.push_back(id - 2.0 * v[row] * v[col] / vv);
    }
  }
}

void TangentFrame::coordinates(std::span<const double> x, std::span<double> out) const noexcept {
  for (std::size_t i = 0; i + 1 < dim_; ++i) out[i] = dot(basis(i), x);
}

AmbientVector TangentFrame::embed(std::span<const double> c) const {
  AmbientVector x(dim_);
  for (std::size_t i = 0; i + 1 < dim_; ++i) {
    const auto b = basis(i);
    for (std::size_t r = 0; r < dim_; ++r) x[r] += c[i] * b[r];
  }
  return x;
}

}  // namespace wedge
