#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wedgehull/geometry.hpp"
#include "wedgehull/rng.hpp"

namespace wedge {

enum class CloudKind { binomial, poisson };

// Points on the wedge, stored row-major with ambient_dim() entries per point.
class SampleCloud {
 public:
  SampleCloud(WedgeModel model, SeedSpec seed, CloudKind kind, double size_param)
      : model_(std::move(model)), seed_(seed), kind_(kind), size_param_(size_param) {}

  const WedgeModel& model() const noexcept { return model_; }
  const SeedSpec& seed() const noexcept { return seed_; }
  CloudKind kind() const noexcept { return kind_; }
  // n for binomial clouds, γ for Poisson clouds.
  double size_param() const noexcept { return size_param_; }

  std::size_t dim() const noexcept { return model_.ambient_dim(); }
  std::size_t size() const noexcept { return coords_.size() / dim(); }
  bool empty() const noexcept { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const noexcept { return {coords_.data() + i * dim(), dim()}; }
  std::span<const double> flat() const noexcept { return coords_; }

  void push_back(std::span<const double> x) { coords_.insert(coords_.end(), x.begin(), x.end()); }
  void reserve(std::size_t n) { coords_.reserve(n * dim()); }

 private:
  WedgeModel model_;
  SeedSpec seed_;
  CloudKind kind_;
  double size_param_;
  std::vector<double> coords_;
};

enum class WedgeSampler {
  automatic,  // fold when the normals are orthogonal, rejection otherwise
  fold,
  rejection,
};

// Writes one uniform point of S^{dim-1} to out (normalized Gaussian vector).
void draw_uniform_sphere(Rng& rng, std::span<double> out);

std::vector<AmbientVector> sample_uniform_sphere(int d, SeedSpec seed, std::size_t count);

// Throws SamplerStalled if rejection accepts fewer than 1e-6 of 1e7 proposals,
// DomainError if fold is requested for non-orthogonal normals.
SampleCloud sample_uniform_wedge(const WedgeModel& m, SeedSpec seed, std::size_t count,
                                 WedgeSampler method = WedgeSampler::automatic);

// Poisson process of intensity γ on the wedge. Throws ResourceLimit when
// γ·σ_d(wedge) > 1e8.
SampleCloud sample_poisson_wedge(const WedgeModel& m, double gamma, SeedSpec seed,
                                 WedgeSampler method = WedgeSampler::automatic);

// Density ∝ (1 + ‖x‖²)^{-β} on R^k, β > k/2. k = 0 yields empty vectors.
std::vector<std::vector<double>> sample_beta_prime(int k, double beta, SeedSpec seed, std::size_t count);
// Single draw into out (size k).
void draw_beta_prime(Rng& rng, double beta, std::span<double> out);

}  // namespace wedge
