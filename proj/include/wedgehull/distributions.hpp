#pragma once

#include <cstdint>

#include "wedgehull/rng.hpp"

namespace wedge {

// Gamma(shape, 1). Marsaglia–Tsang squeeze for shape >= 1, with the
// U^{1/a} boost below 1. Throws DomainError for shape <= 0.
double gamma_variate(Rng& rng, double shape);

// Beta(a, b) as G_a / (G_a + G_b).
double beta_variate(Rng& rng, double a, double b);

// Poisson(mean). Sequential inversion below mean 30, otherwise the
// transformed rejection method PTRS (Hörmann 1993).
std::uint64_t poisson_variate(Rng& rng, double mean);

}  // namespace wedge
