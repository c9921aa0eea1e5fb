#include "wedgehull/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wedgehull/errors.hpp"
#include "wedgehull/linalg.hpp"
#include "wedgehull/parallel.hpp"
#include "wedgehull/quadrature.hpp"
#include "wedgehull/sampling.hpp"

namespace wedge {

namespace {

using std::numbers::pi;

constexpr std::size_t kMinSamples = 10'000;
constexpr double kMinCrossAcceptance = 1e-4;
constexpr std::uint64_t kStallWindow = 1'000'000;

void require_samples(std::size_t n, const char* name) {
  if (n < kMinSamples) throw DomainError(std::string(name) + ": at least 10^4 samples required");
}

template <class Hit>
EstimatorReport hit_fraction(const WedgeModel& m, std::size_t count, SeedSpec seed, int workers, Hit&& hit) {
  const std::size_t dim = m.ambient_dim();
  const Moments mom = chunked_moments(count, workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
    Rng rng(seed.child(k));
    std::vector<double> x(dim);
    Moments local;
    for (std::size_t s = begin; s < end; ++s) {
      draw_uniform_sphere(rng, x);
      local.add(hit(x) ? 1.0 : 0.0);
    }
    return local;
  });
  const double w = omega(m.d() + 1);
  const double p = mom.mean;
  return {w * p, w * std::sqrt(p * (1.0 - p) / static_cast<double>(mom.n)), mom.n, seed};
}

}  // namespace

EstimatorReport mc_cap_measure(const WedgeModel& m, const AmbientVector& z, std::size_t sample_count,
                               SeedSpec seed, int workers) {
  require_samples(sample_count, "mc_cap_measure");
  if (z.dim() != m.ambient_dim()) throw DomainError("mc_cap_measure: dimension mismatch");
  return hit_fraction(m, sample_count, seed, workers,
                      [&](std::span<const double> x) { return wedge_contains(m, x) && dot(z.coords(), x) >= 0.0; });
}

EstimatorReport mc_wedge_measure(const WedgeModel& m, std::size_t sample_count, SeedSpec seed, int workers) {
  require_samples(sample_count, "mc_wedge_measure");
  return hit_fraction(m, sample_count, seed, workers, [&](std::span<const double> x) { return wedge_contains(m, x); });
}

EstimatorReport mc_I1(int d, double phi, double psi, std::size_t sample_count, SeedSpec seed, int workers) {
  require_samples(sample_count, "mc_I1");
  if (d < 2) throw DomainError("mc_I1: d must be >= 2");
  const WedgeModel m = WedgeModel::right_angle(d);
  const double beta = opening_angle(phi, psi);
  const double mu = beta * omega(d) / (2.0 * pi);
  if (mu == 0.0) return {0.0, 0.0, sample_count, seed};

  const AmbientVector z = wedge_param({phi, psi, AmbientVector::axis(static_cast<std::size_t>(d) - 1, 0)}, d);
  const TangentFrame frame(z);
  const auto du = static_cast<std::size_t>(d);
  const std::size_t dim = du + 1;
  const Moments mom = chunked_moments(sample_count, workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
    Rng rng(seed.child(k));
    std::vector<double> c(du);
    std::vector<double> rows(du * dim);
    std::uint64_t proposals = 0, accepted = 0;
    Moments local;
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t r = 0; r < du;) {
        draw_uniform_sphere(rng, c);
        ++proposals;
        double* x = rows.data() + r * dim;
        std::fill(x, x + dim, 0.0);
        for (std::size_t i = 0; i < du; ++i) {
          const auto b = frame.basis(i);
          for (std::size_t t = 0; t < dim; ++t) x[t] += c[i] * b[t];
        }
        if (wedge_contains(m, std::span<const double>(x, dim))) {
          ++r;
          ++accepted;
        }
        if (proposals % kStallWindow == 0 &&
            static_cast<double>(accepted) < kMinCrossAcceptance * static_cast<double>(proposals))
          throw SamplerStalled("mc_I1: cross-section acceptance below 1e-4");
      }
      local.add(parallelotope_volume(rows, du, dim));
    }
    return local;
  });
  const double scale = std::pow(mu, d);
  return {scale * mom.mean, scale * mom.std_error(), mom.n, seed};
}

double i1_planar_quadrature(double phi, double psi) {
  using boost::math::quadrature::gauss_kronrod;
  const double t = std::tan(0.5 * opening_angle(phi, psi));
  auto w = [](double a) { return std::pow(1.0 + a * a, -1.5); };
  // The inner integral of |a − b| w(b) has a kink at b = a; split there.
  auto inner = [&](double a) {
    auto g = [&](double b) { return std::fabs(a - b) * w(b); };
    return gauss_kronrod<double, 31>::integrate(g, -t, a, 15, 1e-12) +
           gauss_kronrod<double, 31>::integrate(g, a, t, 15, 1e-12);
  };
  return gauss_kronrod<double, 31>::integrate([&](double a) { return w(a) * inner(a); }, -t, t, 15, 1e-12);
}

LimitLemmaReport mc_binomial_limit_lemma(int d, double alpha, const std::vector<double>& n_grid, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("mc_binomial_limit_lemma: epsilon must lie in (0, 1/2)");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (!(n_grid[i] > n_grid[i - 1])) throw DomainError("mc_binomial_limit_lemma: n_grid must be increasing");
  LimitLemmaReport rep;
  rep.d = d;
  rep.alpha = alpha;
  rep.epsilon = epsilon;
  rep.target = std::tgamma(static_cast<double>(d));
  for (double n : n_grid) {
    const QuadratureResult q = limit_lemma_H(d, alpha, n, epsilon);
    rep.points.push_back({n, q.value, q.error_estimate, q.value / std::log(n)});
  }
  return rep;
}

}  // namespace wedge
