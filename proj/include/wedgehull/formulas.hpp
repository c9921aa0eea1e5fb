#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wedgehull/rng.hpp"

namespace wedge {

struct EstimatorReport {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t sample_count = 0;
  SeedSpec seed;
};

struct ModelConstants {
  int d = 0;
  double omega_d_minus_1 = 0.0;
  double omega_d_plus_1 = 0.0;
  double b_d = 0.0;
  double B_d = 0.0;
  double A_d = 0.0;
  // Zero when A_d is exact (d = 2).
  double A_d_std_error = 0.0;
  double c_d2 = 0.0;
};

// Surface measure of S^{k-1}: 2π^{k/2}/Γ(k/2).
double omega(int k);

// σ_d(wedge ∩ H^+(Z(φ,ψ,u))) = ω_{d+1}/(4π) (ψ − arcsin(cosφ sinψ)).
double i2_closed(int d, double phi, double psi);

struct I2Bounds {
  double lower;       // ω_{d+1} φ²ψ / (2π³)
  double asymptotic;  // ω_{d+1} φ²ψ / (8π)
};
I2Bounds i2_bounds(int d, double phi, double psi);

// Area of a spherical triangle with angles a, b, c on the unit sphere.
double girard_area(double a, double b, double c);

inline constexpr double kA2 = 2.0 / 3.0;

// E sqrt(det Gram((U_i, Z_i, 1))_{i<=d}) with U_i uniform on [-1, 1] and
// Z_i beta-prime on R^{d-2} with parameter (d+1)/2. Chunk k of the sample
// uses seed.child(k). Throws DomainError for fewer than 1000 samples.
EstimatorReport estimate_A_d(int d, std::size_t sample_count, SeedSpec seed, int workers = 1);
std::size_t default_A_d_samples(int d);

// Throws InternalError if ω_{d-1}B_d/(d b_d^d) and c_{d,2} differ by more
// than 1e-12 relative.
ModelConstants model_constants(int d, double A_d, double A_d_std_error = 0.0);

// f(x, y) = (x − arcsin(sin x cos y)) / (x y²), continued to x -> 0 by
// (1 − cos y)/y².
double appendix_f(double x, double y);

struct InequalityCheck {
  std::string name;
  double min_slack = 0.0;
  std::vector<double> argmin;
  std::size_t points = 0;
};

struct AppendixReport {
  int grid_resolution = 0;
  std::vector<InequalityCheck> checks;
};

// Evaluates the analytic inequalities on interior grids offset by half a
// step and throws InequalityViolation at the first non-positive slack.
AppendixReport verify_appendix_inequalities(int grid_resolution);

}  // namespace wedge
