#include "wedgehull/sampling.hpp"

#include <cmath>
#include <string>

#include "wedgehull/distributions.hpp"
#include "wedgehull/errors.hpp"

namespace wedge {

namespace {

constexpr std::uint64_t kMaxProposals = 10'000'000;
constexpr double kMinAcceptance = 1e-6;
constexpr double kMaxPoissonMean = 1e8;

// Reflects z into the wedge across each violated hyperplane. For orthogonal
// normals the reflections commute and the map is 2^j-to-1 and measure
// preserving.
void fold_into(const WedgeModel& m, std::span<double> z) {
  if (m.axis_aligned()) {
    const std::size_t dim = z.size();
    for (std::size_t k = dim - static_cast<std::size_t>(m.j()); k < dim; ++k) z[k] = std::fabs(z[k]);
    return;
  }
  for (const auto& n : m.normals()) {
    const double t = dot(n.coords(), z);
    if (t < 0.0)
      for (std::size_t k = 0; k < z.size(); ++k) z[k] -= 2.0 * t * n[k];
  }
}

bool use_fold(const WedgeModel& m, WedgeSampler method) {
  switch (method) {
    case WedgeSampler::fold:
      if (!m.orthogonal_normals()) throw DomainError("fold sampler needs orthogonal normals");
      return true;
    case WedgeSampler::rejection:
      return false;
    case WedgeSampler::automatic:
      break;
  }
  return m.orthogonal_normals();
}

void fill_wedge(const WedgeModel& m, Rng& rng, std::size_t count, WedgeSampler method, SampleCloud& cloud) {
  std::vector<double> z(m.ambient_dim());
  cloud.reserve(cloud.size() + count);
  if (use_fold(m, method)) {
    for (std::size_t i = 0; i < count; ++i) {
      draw_uniform_sphere(rng, z);
      fold_into(m, z);
      cloud.push_back(z);
    }
    return;
  }
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  while (accepted < count) {
    draw_uniform_sphere(rng, z);
    ++proposals;
    if (wedge_contains(m, z)) {
      cloud.push_back(z);
      ++accepted;
    }
    if (proposals >= kMaxProposals &&
        static_cast<double>(accepted) < kMinAcceptance * static_cast<double>(proposals))
      throw SamplerStalled("rejection sampler accepted " + std::to_string(accepted) + " of " +
                           std::to_string(proposals) + " proposals");
  }
}

}  // namespace

void draw_uniform_sphere(Rng& rng, std::span<double> out) {
  double s;
  do {
    s = 0.0;
    for (double& x : out) {
      x = rng.normal();
      s += x * x;
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : out) x *= inv;
}

std::vector<AmbientVector> sample_uniform_sphere(int d, SeedSpec seed, std::size_t count) {
  if (d < 1) throw DomainError("sample_uniform_sphere: d must be >= 1");
  Rng rng(seed);
  std::vector<AmbientVector> out;
  out.reserve(count);
  std::vector<double> z(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < count; ++i) {
    draw_uniform_sphere(rng, z);
    out.emplace_back(std::span<const double>(z));
  }
  return out;
}

SampleCloud sample_uniform_wedge(const WedgeModel& m, SeedSpec seed, std::size_t count, WedgeSampler method) {
  SampleCloud cloud(m, seed, CloudKind::binomial, static_cast<double>(count));
  Rng rng(seed);
  fill_wedge(m, rng, count, method, cloud);
  return cloud;
}

SampleCloud sample_poisson_wedge(const WedgeModel& m, double gamma, SeedSpec seed, WedgeSampler method) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("sample_poisson_wedge: gamma must be >= 0");
  SampleCloud cloud(m, seed, CloudKind::poisson, gamma);
  if (gamma == 0.0) return cloud;
  const double mean = gamma * wedge_measure(m);
  if (mean > kMaxPoissonMean)
    throw ResourceLimit("Poisson mean " + std::to_string(mean) + " exceeds the 1e8 point limit");
  Rng rng(seed);
  const auto count = static_cast<std::size_t>(poisson_variate(rng, mean));
  fill_wedge(m, rng, count, method, cloud);
  return cloud;
}

void draw_beta_prime(Rng& rng, double beta, std::span<double> out) {
  const std::size_t k = out.size();
  if (k == 0) return;
  const double half_k = 0.5 * static_cast<double>(k);
  // r² = B/(1-B) with B ~ Beta(k/2, β-k/2), i.e. a ratio of Gammas.
  const double g1 = gamma_variate(rng, half_k);
  const double g2 = gamma_variate(rng, beta - half_k);
  const double r = std::sqrt(g1 / g2);
  draw_uniform_sphere(rng, out);
  for (double& x : out) x *= r;
}

std::vector<std::vector<double>> sample_beta_prime(int k, double beta, SeedSpec seed, std::size_t count) {
  if (k < 0) throw DomainError("sample_beta_prime: k must be >= 0");
  if (!(beta > 0.5 * k)) throw DomainError("sample_beta_prime: need beta > k/2");
  Rng rng(seed);
  std::vector<std::vector<double>> out(count, std::vector<double>(static_cast<std::size_t>(k)));
  for (auto& v : out) draw_beta_prime(rng, beta, v);
  return out;
}

}  // namespace wedge
