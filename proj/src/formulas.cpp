#include "wedgehull/formulas.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "wedgehull/errors.hpp"
#include "wedgehull/linalg.hpp"
#include "wedgehull/parallel.hpp"
#include "wedgehull/sampling.hpp"

namespace wedge {

namespace {

using std::numbers::pi;

constexpr double kSeriesCutoff = 1e-3;
constexpr double kIdentityTol = 1e-12;

// x − arcsin(sin x cos y) without cancellation for x <= π/2, cos y >= 0.
double arc_gap(double x, double y) {
  const double sx = std::sin(x), cx = std::cos(x);
  const double sy = std::sin(y), cy = std::cos(y);
  if (cx < 0.0 || cy < 0.0) return x - std::asin(sx * cy);
  const double r = std::sqrt(cx * cx + sx * sx * sy * sy);
  const double den = r + cx * cy;
  return std::atan2(sx * sy * sy / den, cx * r + sx * sx * cy);
}

double f_series(double x, double y) {
  const double x2 = x * x, y2 = y * y;
  return 0.5 + x2 / 6.0 - y2 / 24.0 + x2 * x2 / 15.0 - 5.0 * x2 * y2 / 36.0 + y2 * y2 / 720.0 +
         17.0 * x2 * x2 * x2 / 630.0 - 47.0 * x2 * x2 * y2 / 360.0 + 91.0 * x2 * y2 * y2 / 2160.0 -
         y2 * y2 * y2 / 40320.0;
}

}  // namespace

double omega(int k) {
  if (k < 1) throw DomainError("omega: k must be >= 1");
  const double h = 0.5 * k;
  return 2.0 * std::pow(pi, h) / std::tgamma(h);
}

double i2_closed(int d, double phi, double psi) {
  return omega(d + 1) / (4.0 * pi) * arc_gap(psi, phi);
}

I2Bounds i2_bounds(int d, double phi, double psi) {
  const double w = omega(d + 1) * phi * phi * psi;
  return {w / (2.0 * pi * pi * pi), w / (8.0 * pi)};
}

double girard_area(double a, double b, double c) { return a + b + c - pi; }

std::size_t default_A_d_samples(int d) { return d <= 4 ? 10'000'000 : 1'000'000; }

EstimatorReport estimate_A_d(int d, std::size_t sample_count, SeedSpec seed, int workers) {
  if (d < 2) throw DomainError("estimate_A_d: d must be >= 2");
  if (sample_count < 1000) throw DomainError("estimate_A_d: at least 1000 samples required");
  const auto du = static_cast<std::size_t>(d);
  const double beta = 0.5 * (d + 1);
  const Moments m = chunked_moments(sample_count, workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
    Rng rng(seed.child(k));
    std::vector<double> rows(du * du);
    Moments local;
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < du; ++i) {
        double* row = rows.data() + i * du;
        row[0] = rng.uniform(-1.0, 1.0);
        draw_beta_prime(rng, beta, std::span<double>(row + 1, du - 2));
        row[du - 1] = 1.0;
      }
      local.add(parallelotope_volume(rows, du, du));
    }
    return local;
  });
  return {m.mean, m.std_error(), m.n, seed};
}

ModelConstants model_constants(int d, double A_d, double A_d_std_error) {
  if (d < 2) throw DomainError("model_constants: d must be >= 2");
  if (!(A_d > 0.0)) throw DomainError("model_constants: A_d must be positive");
  ModelConstants c;
  c.d = d;
  c.omega_d_minus_1 = omega(d - 1);
  c.omega_d_plus_1 = omega(d + 1);
  c.A_d = A_d;
  c.A_d_std_error = A_d_std_error;
  c.b_d = c.omega_d_plus_1 / (8.0 * pi);
  c.B_d = 0.5 * A_d * std::pow(c.omega_d_plus_1 / (4.0 * pi), d);
  c.c_d2 = std::pow(2.0, d - 1) * c.omega_d_minus_1 * A_d / d;
  const double via_b = c.omega_d_minus_1 * c.B_d / (d * std::pow(c.b_d, d));
  if (std::fabs(via_b - c.c_d2) > kIdentityTol * std::fabs(c.c_d2))
    throw InternalError("model_constants: identity check failed for d = " + std::to_string(d));
  return c;
}

double appendix_f(double x, double y) {
  if (x == 0.0) {
    const double h = std::sin(0.5 * y) / y;
    return 2.0 * h * h;
  }
  if (std::max(std::fabs(x), std::fabs(y)) < kSeriesCutoff) return f_series(x, y);
  return arc_gap(x, y) / (x * y * y);
}

AppendixReport verify_appendix_inequalities(int grid_resolution) {
  if (grid_resolution < 100) throw DomainError("verify_appendix_inequalities: resolution must be >= 100");
  AppendixReport report;
  report.grid_resolution = grid_resolution;
  const int n = grid_resolution;

  auto scan2 = [&](std::string name, double xmax, double ymax, const std::function<double(double, double)>& slack) {
    InequalityCheck c{std::move(name), INFINITY, {}, 0};
    for (int i = 0; i < n; ++i) {
      const double x = (i + 0.5) * xmax / n;
      for (int k = 0; k < n; ++k) {
        const double y = (k + 0.5) * ymax / n;
        const double s = slack(x, y);
        ++c.points;
        if (s < c.min_slack) {
          c.min_slack = s;
          c.argmin = {x, y};
        }
      }
    }
    return c;
  };
  auto scan1 = [&](std::string name, double lo, double hi, const std::function<double(double)>& slack) {
    InequalityCheck c{std::move(name), INFINITY, {}, 0};
    for (int i = 0; i < n; ++i) {
      const double z = lo + (i + 0.5) * (hi - lo) / n;
      const double s = slack(z);
      ++c.points;
      if (s < c.min_slack) {
        c.min_slack = s;
        c.argmin = {z};
      }
    }
    return c;
  };

  report.checks.push_back(scan2("f_lower_bound", pi / 2, pi,
                                [](double x, double y) { return appendix_f(x, y) - 2.0 / (pi * pi); }));
  report.checks.push_back(scan2("complement_lower_bound", pi / 2, pi, [](double x, double y) {
    return pi - x + std::asin(std::sin(x) * std::cos(y)) - ((pi / 2 - x) + (pi - y)) / 3.0;
  }));
  report.checks.push_back(scan1("arcsin_sqrt_bound", -1.0, 1.0,
                                [](double z) { return pi / 2 - std::asin(z) - std::sqrt(1.0 - z); }));
  report.checks.push_back(
      scan1("cosine_quadratic_bound", 0.0, pi, [](double z) { return 1.0 - z * z / 5.0 - std::cos(z); }));
  report.checks.push_back(scan2("sqrt_linear_bound", pi / 2, pi, [](double x, double y) {
    return x + 0.2 * std::sqrt(5.0 * (x * x + y * y) - x * x * y * y) - (x + y) / 3.0;
  }));

  for (const auto& c : report.checks)
    if (!(c.min_slack > 0.0))
      throw InequalityViolation(c.name + " violated (slack " + std::to_string(c.min_slack) + ")", c.argmin);
  return report;
}

}  // namespace wedge
