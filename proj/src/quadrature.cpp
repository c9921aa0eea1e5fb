#include "wedgehull/quadrature.hpp"

#include <cmath>
#include <functional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wedgehull/errors.hpp"

namespace wedge {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr double kRelTol = 1e-8;
constexpr unsigned kMaxDepth = 15;
// Below y = sε = kYMin the inner integral is y^d/d to relative O(y).
constexpr double kYMin = 1e-7;

// With w = st the inner integral becomes F(sε)/s, F(y) = ∫_0^y w^{d-1} k(w) dw,
// so the double integral reduces to ∫ F(sε)/s ds, taken over u = log s.
QuadratureResult reduce_and_integrate(int d, double upper_s, double epsilon, double cutoff_w,
                                      const std::function<double(double)>& log_kernel, const char* name) {
  if (d < 2) throw DomainError(std::string(name) + ": d must be >= 2");
  if (!(epsilon > 0.0) || !(upper_s > 0.0)) throw DomainError(std::string(name) + ": parameters must be positive");
  const double dm1 = d - 1.0;
  double inner_err_max = 0.0;
  // F(y) = top^d ∫_0^1 v^{d-1} k(top v) dv keeps the integrand O(1) for tiny y.
  auto F = [&](double y) {
    const double top = std::min(y, cutoff_w);
    auto g = [&](double v) { return v <= 0.0 ? 0.0 : std::exp(dm1 * std::log(v) + log_kernel(top * v)); };
    double err = 0.0;
    const double v = GK::integrate(g, 0.0, 1.0, kMaxDepth, kRelTol * 1e-2, &err);
    inner_err_max = std::max(inner_err_max, v > 0.0 ? err / v : 0.0);
    return std::pow(top, d) * v;
  };
  const double s_min = kYMin / epsilon;
  QuadratureResult out;
  if (upper_s <= s_min) {
    const double y = upper_s * epsilon;
    out.value = std::pow(y, d) / (static_cast<double>(d) * d);
    return out;
  }
  const double head = std::pow(kYMin, d) / (static_cast<double>(d) * d);
  double err = 0.0;
  const double body = GK::integrate([&](double u) { return F(epsilon * std::exp(u)); }, std::log(s_min),
                                    std::log(upper_s), kMaxDepth, kRelTol, &err);
  out.value = head + body;
  out.error_estimate = err + inner_err_max * body;
  if (!std::isfinite(out.value) || out.error_estimate > 10.0 * kRelTol * std::fabs(out.value))
    throw QuadratureError(std::string(name) + ": no convergence (error estimate " +
                          std::to_string(out.error_estimate) + ")");
  return out;
}

}  // namespace

QuadratureResult limit_lemma_H(int d, double alpha, double n, double epsilon) {
  if (!(n > d)) throw DomainError("limit_lemma_H: n must exceed d");
  if (!(alpha * epsilon < 1.0)) throw DomainError("limit_lemma_H: need alpha*epsilon < 1");
  const double rate = (n - d) / n;
  // (1 − w/n)^{n-d} <= e^{-w rate}; beyond the cutoff the weight is below 1e-30.
  const double cutoff = (70.0 + 10.0 * d) / rate;
  return reduce_and_integrate(
      d, n * alpha, epsilon, cutoff, [n, d](double w) { return (n - d) * std::log1p(-w / n); }, "limit_lemma_H");
}

QuadratureResult limit_lemma_G(int d, double alpha, double gamma, double epsilon) {
  return reduce_and_integrate(
      d, gamma * alpha, epsilon, 70.0 + 10.0 * d, [](double w) { return -w; }, "limit_lemma_G");
}

}  // namespace wedge
