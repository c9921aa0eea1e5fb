#pragma once

#include <cstddef>
#include <vector>

#include "wedgehull/formulas.hpp"
#include "wedgehull/geometry.hpp"
#include "wedgehull/rng.hpp"

namespace wedge {

// ω_{d+1} times the fraction of uniform sphere points in wedge ∩ {x·z >= 0}.
EstimatorReport mc_cap_measure(const WedgeModel& m, const AmbientVector& z, std::size_t sample_count,
                               SeedSpec seed, int workers = 1);

EstimatorReport mc_wedge_measure(const WedgeModel& m, std::size_t sample_count, SeedSpec seed, int workers = 1);

// I_1(Z(φ,ψ,e_1)) for the right-angled wedge: μ^d times the mean volume of
// d-tuples drawn uniformly from the cross-section wedge ∩ H(z), with
// μ = β ω_d/(2π). sample_count is the number of d-tuples. Throws
// SamplerStalled when the cross-section acceptance drops below 1e-4.
EstimatorReport mc_I1(int d, double phi, double psi, std::size_t sample_count, SeedSpec seed, int workers = 1);

// For d = 2: ∫∫ |a − b| (1+a²)^{-3/2} (1+b²)^{-3/2} da db over [−T, T]²,
// T = tan(β/2), i.e. I_1 written in gnomonic coordinates of the arc.
double i1_planar_quadrature(double phi, double psi);

struct LimitLemmaPoint {
  double n = 0.0;
  double H = 0.0;
  double error_estimate = 0.0;
  double ratio = 0.0;  // H / log n
};

struct LimitLemmaReport {
  int d = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double target = 0.0;  // (d-1)!
  std::vector<LimitLemmaPoint> points;
};

LimitLemmaReport mc_binomial_limit_lemma(int d, double alpha, const std::vector<double>& n_grid, double epsilon);

}  // namespace wedge
