#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "wedgehull/errors.hpp"
#include "wedgehull/formulas.hpp"
#include "wedgehull/parallel.hpp"
#include "wedgehull/sampling.hpp"

using namespace wedge;
using std::numbers::pi;

namespace {

// One-sample Kolmogorov–Smirnov distance.
template <class Cdf>
double ks_distance(std::vector<double> x, Cdf cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Asymptotic 1% critical values.
double ks_critical(double n) { return 1.628 / std::sqrt(n); }
double ks_critical(double n, double m) { return 1.628 * std::sqrt((n + m) / (n * m)); }

}  // namespace

TEST_CASE("uniform sphere sampler") {
  CHECK(sample_uniform_sphere(3, SeedSpec{1, 1}, 0).empty());
  for (int d : {1, 2, 4}) {
    const std::size_t n = 1'000'000;
    const auto pts = sample_uniform_sphere(d, SeedSpec{1, static_cast<std::uint64_t>(d)}, n);
    const auto dim = static_cast<std::size_t>(d) + 1;
    std::vector<Moments> first(dim), second(dim);
    for (const auto& p : pts) {
      REQUIRE(std::fabs(p.norm() - 1.0) <= 1e-12);
      for (std::size_t k = 0; k < dim; ++k) {
        first[k].add(p[k]);
        second[k].add(p[k] * p[k]);
      }
    }
    const double sigma = 1.0 / std::sqrt(static_cast<double>(n) * dim);
    for (std::size_t k = 0; k < dim; ++k) {
      CHECK(std::fabs(first[k].mean) <= 4 * sigma);
      CHECK(std::fabs(second[k].mean - 1.0 / dim) <= 3 * second[k].std_error());
    }
  }
}

TEST_CASE("wedge sampler membership, norm and determinism") {
  for (int d : {2, 3, 5}) {
    const WedgeModel m = WedgeModel::right_angle(d);
    for (auto method : {WedgeSampler::fold, WedgeSampler::rejection}) {
      const SampleCloud c = sample_uniform_wedge(m, SeedSpec{2, 1}, 20000, method);
      REQUIRE(c.size() == 20000);
      for (std::size_t i = 0; i < c.size(); ++i) {
        REQUIRE(wedge_contains(m, c.point(i)));
        REQUIRE(std::fabs(std::sqrt(dot(c.point(i), c.point(i))) - 1.0) <= 1e-12);
      }
      const SampleCloud again = sample_uniform_wedge(m, SeedSpec{2, 1}, 20000, method);
      CHECK(std::equal(c.flat().begin(), c.flat().end(), again.flat().begin()));
    }
  }
  const WedgeModel skew = WedgeModel::with_normals(
      3, {AmbientVector{0.0, 0.0, 0.0, 1.0}, AmbientVector{0.0, 0.0, 0.6, 0.8}, AmbientVector{1.0, 0.0, 0.0, 0.0}});
  CHECK_THROWS_AS(sample_uniform_wedge(skew, SeedSpec{2, 2}, 10, WedgeSampler::fold), DomainError);
  const SampleCloud c = sample_uniform_wedge(skew, SeedSpec{2, 2}, 1000);
  for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(wedge_contains(skew, c.point(i)));
}

TEST_CASE("octant height") {
  const SampleCloud c = sample_uniform_wedge(WedgeModel::right_angle(2), SeedSpec{2, 3}, 1'000'000);
  Moments z3;
  for (std::size_t i = 0; i < c.size(); ++i) z3.add(c.point(i)[2]);
  CHECK(std::fabs(z3.mean - 0.5) <= 3 * z3.std_error());
}

TEST_CASE("fold and rejection samplers agree") {
  const WedgeModel m = WedgeModel::right_angle(3);
  const std::size_t n = 1'000'000;
  const SampleCloud f = sample_uniform_wedge(m, SeedSpec{2, 4}, n, WedgeSampler::fold);
  const SampleCloud r = sample_uniform_wedge(m, SeedSpec{2, 5}, n, WedgeSampler::rejection);
  Moments mf, mr;
  std::vector<std::vector<double>> cf(3), cr(3);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = f.point(i), b = r.point(i);
    mf.add(a[2]);
    mr.add(b[2]);
    if (i < 100000) {
      cf[0].push_back(a[2]);
      cf[1].push_back(a[3]);
      cf[2].push_back(a[2] * a[3]);
      cr[0].push_back(b[2]);
      cr[1].push_back(b[3]);
      cr[2].push_back(b[2] * b[3]);
    }
  }
  const double se = std::hypot(mf.std_error(), mr.std_error());
  CHECK(std::fabs(mf.mean - mr.mean) <= 4 * se);
  for (int k = 0; k < 3; ++k) CHECK(ks_two_sample(cf[k], cr[k]) < ks_critical(1e5, 1e5));
}

TEST_CASE("rejection sampler stalls on a sliver") {
  // Two nearly antipodal normals: dihedral angle 1e-7, acceptance ~8e-9.
  const double t = 1e-7;
  const WedgeModel sliver = WedgeModel::with_normals(
      3, {AmbientVector{0.0, 0.0, 0.0, 1.0}, AmbientVector{0.0, 0.0, std::sin(t), -std::cos(t)},
          AmbientVector{1.0, 0.0, 0.0, 0.0}});
  CHECK_THROWS_AS(sample_uniform_wedge(sliver, SeedSpec{2, 6}, 100), SamplerStalled);
}

TEST_CASE("Poisson wedge clouds") {
  const WedgeModel m = WedgeModel::right_angle(2);
  CHECK(sample_poisson_wedge(m, 0.0, SeedSpec{3, 1}).empty());
  CHECK_THROWS_AS(sample_poisson_wedge(m, -1.0, SeedSpec{3, 1}), DomainError);
  CHECK_THROWS_AS(sample_poisson_wedge(m, 1e9, SeedSpec{3, 1}), ResourceLimit);
  Moments count;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    const SampleCloud c = sample_poisson_wedge(m, 10.0, SeedSpec{3, s});
    count.add(static_cast<double>(c.size()));
  }
  CHECK(std::fabs(count.mean - 10 * pi) <= 3 * count.std_error());
  const double ratio = count.variance() / count.mean;
  CHECK(ratio >= 0.97);
  CHECK(ratio <= 1.03);
  const SampleCloud c = sample_poisson_wedge(m, 50.0, SeedSpec{3, 7});
  for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(wedge_contains(m, c.point(i)));
  CHECK(c.kind() == CloudKind::poisson);
}

TEST_CASE("beta-prime samples") {
  const auto empty = sample_beta_prime(0, 1.5, SeedSpec{4, 1}, 10);
  CHECK(empty.size() == 10);
  for (const auto& v : empty) CHECK(v.empty());
  CHECK_THROWS_AS(sample_beta_prime(2, 1.0, SeedSpec{4, 1}, 10), DomainError);

  // k = 1, β = 2: E Z² = (2/π)∫ z²(1+z²)^{-2} dz = 1.
  const auto z = sample_beta_prime(1, 2.0, SeedSpec{4, 2}, 1'000'000);
  Moments z2;
  for (const auto& v : z) z2.add(v[0] * v[0]);
  CHECK(std::fabs(z2.mean - 1.0) <= 3 * z2.std_error());

  for (auto [k, beta] : {std::pair{1, 2.0}, std::pair{2, 2.5}, std::pair{3, 3.0}}) {
    const auto s = sample_beta_prime(k, beta, SeedSpec{4, 3 + static_cast<std::uint64_t>(k)}, 100000);
    std::vector<double> b;
    for (const auto& v : s) {
      double r2 = 0.0;
      for (double x : v) r2 += x * x;
      b.push_back(r2 / (1 + r2));
    }
    const double a1 = 0.5 * k, a2 = beta - 0.5 * k;
    CHECK(ks_distance(b, [&](double x) { return boost::math::ibeta(a1, a2, x); }) < ks_critical(1e5));
  }
}

TEST_CASE("beta-prime projection drops half a unit of shape") {
  const auto s = sample_beta_prime(3, 3.0, SeedSpec{4, 9}, 100000);
  std::vector<double> b;
  for (const auto& v : s) {
    const double r2 = v[0] * v[0] + v[1] * v[1];
    b.push_back(r2 / (1 + r2));
  }
  // (k, β) = (2, 5/2): B ~ Beta(1, 3/2).
  CHECK(ks_distance(b, [](double x) { return boost::math::ibeta(1.0, 1.5, x); }) < ks_critical(1e5));
}
