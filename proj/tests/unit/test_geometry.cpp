#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wedgehull/errors.hpp"
#include "wedgehull/formulas.hpp"
#include "wedgehull/geometry.hpp"
#include "wedgehull/oracles.hpp"
#include "wedgehull/sampling.hpp"

using namespace wedge;
using std::numbers::pi;

namespace {

AmbientVector random_unit(Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  draw_uniform_sphere(rng, x);
  return AmbientVector(std::span<const double>(x));
}

}  // namespace

TEST_CASE("wedge model construction") {
  const WedgeModel m = WedgeModel::right_angle(3);
  CHECK(m.j() == 2);
  CHECK(m.ambient_dim() == 4);
  CHECK(m.center()[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(m.center()[3] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(m.orthogonal_normals());
  CHECK(WedgeModel::half_sphere(2).center()[2] == 1.0);
  CHECK_THROWS_AS(WedgeModel::right_angle(1), DomainError);
  // j = 2 must be a right angle.
  const AmbientVector a{0.0, 0.0, 1.0};
  const AmbientVector b = AmbientVector{0.0, 0.6, 0.8};
  CHECK_THROWS_AS(WedgeModel::with_normals(2, {a, b}), DomainError);
  CHECK_THROWS_AS(WedgeModel::with_normals(2, {a, a}), DomainError);
  CHECK_THROWS_AS(WedgeModel::with_normals(2, {AmbientVector{0.0, 0.0, 2.0}}), DomainError);
}

TEST_CASE("wedge measure and membership") {
  CHECK(wedge_measure(WedgeModel::right_angle(2)) == doctest::Approx(pi));
  CHECK(wedge_measure(WedgeModel::right_angle(3)) == doctest::Approx(pi * pi / 2));
  CHECK(wedge_measure(WedgeModel::half_sphere(2)) == doctest::Approx(2 * pi));
  for (int d : {2, 3, 5}) {
    const WedgeModel m = WedgeModel::right_angle(d);
    CHECK(wedge_contains(m, m.center()));
    CHECK_FALSE(wedge_contains(m, -m.center()));
  }
  const WedgeModel m = WedgeModel::right_angle(2);
  const EstimatorReport r = mc_wedge_measure(m, 1'000'000, SeedSpec{11, 1});
  // Quarter sphere.
  CHECK(std::fabs(r.value / omega(3) - 0.25) <= 3.0 * r.std_error / omega(3));
}

TEST_CASE("gnomonic projection") {
  const AmbientVector u = AmbientVector::axis(3, 2);
  CHECK(gnomonic_project(u, u).norm() == 0.0);
  const double th = 0.4;
  const AmbientVector g = gnomonic_project(u, AmbientVector{std::sin(th), 0.0, std::cos(th)});
  CHECK(g[0] == doctest::Approx(std::tan(th)));
  CHECK(std::fabs(g[2]) < 1e-15);
  CHECK_THROWS_AS(gnomonic_project(u, AmbientVector{1.0, 0.0, 0.0}), HalfSphereViolation);
  CHECK_THROWS_AS(gnomonic_project(u, -u), HalfSphereViolation);

  CHECK(max_abs_diff(gnomonic_inverse(u, AmbientVector(3)), u) == 0.0);
  const double t = 1.7;
  const AmbientVector x = gnomonic_inverse(u, AmbientVector{t, 0.0, 0.0});
  CHECK(x[0] == doctest::Approx(t / std::sqrt(1 + t * t)));
  CHECK(x[2] == doctest::Approx(1 / std::sqrt(1 + t * t)));
  CHECK_THROWS_AS(gnomonic_inverse(u, AmbientVector{0.0, 0.0, 1e-6}), DomainError);

  Rng rng(SeedSpec{3, 3});
  for (int d : {2, 3, 6}) {
    const auto dim = static_cast<std::size_t>(d) + 1;
    const AmbientVector p = random_unit(rng, dim);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      AmbientVector v = random_unit(rng, dim);
      if (dot(v, p) < 0) v = -v;
      if (dot(v, p) < 1e-3) continue;
      const AmbientVector y = gnomonic_project(p, v);
      CHECK(std::fabs(dot(y, p)) < 1e-10);
      worst = std::max(worst, max_abs_diff(gnomonic_inverse(p, y), v));
      AmbientVector w = random_unit(rng, dim);
      w -= p * dot(w, p);
      worst = std::max(worst, max_abs_diff(gnomonic_project(p, gnomonic_inverse(p, w)), w));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("wedge parametrization") {
  const AmbientVector e1 = AmbientVector::axis(2, 0);
  const AmbientVector z0 = wedge_param({0.7, 0.0, e1}, 3);
  CHECK(z0[3] == -1.0);
  CHECK(z0.norm() == doctest::Approx(1.0));
  const AmbientVector u{0.6, -0.8};
  const AmbientVector zu = wedge_param({pi / 2, pi / 2, u}, 3);
  CHECK(zu[0] == doctest::Approx(0.6));
  CHECK(zu[1] == doctest::Approx(-0.8));
  CHECK(std::fabs(zu[2]) < 1e-15);
  CHECK(std::fabs(zu[3]) < 1e-15);

  Rng rng(SeedSpec{3, 4});
  for (int d : {2, 3, 4}) {
    const auto dim = static_cast<std::size_t>(d) + 1;
    for (int i = 0; i < 1000; ++i) {
      const WedgeCoords c{rng.uniform(0.0, pi), rng.uniform(0.0, pi / 2), random_unit(rng, dim - 2)};
      const AmbientVector z = wedge_param(c, d);
      CHECK(std::fabs(z.norm() - 1.0) <= 1e-14);
      // The antipode of a chart normal lies in the closed wedge's half z_{d+1} >= 0.
      CHECK((-z)[dim - 1] >= 0.0);
    }
    for (int i = 0; i < 1000; ++i) {
      AmbientVector z = random_unit(rng, dim);
      if (z[dim - 1] > 0) z = -z;
      const ChartPoint cp = wedge_param_inverse(z);
      CHECK_FALSE(cp.singular);
      CHECK(max_abs_diff(wedge_param(cp.coords, d), z) <= 1e-10);
    }
  }
}

TEST_CASE("chart singularities canonicalize or throw") {
  const AmbientVector pole{0.0, 0.0, 0.0, -1.0};
  const ChartPoint cp = wedge_param_inverse(pole);
  CHECK(cp.singular);
  CHECK(cp.coords.psi == 0.0);
  CHECK(cp.coords.phi == 0.0);
  CHECK(cp.coords.u[0] == 1.0);
  CHECK_THROWS_AS(wedge_param_inverse(pole, ChartPolicy::strict), ChartSingular);
  // sinφ = 0 with sinψ > 0: u is free.
  const AmbientVector edge{0.0, 0.0, -std::sin(0.3), -std::cos(0.3)};
  CHECK(wedge_param_inverse(edge).singular);
  CHECK_THROWS_AS(wedge_param_inverse(edge, ChartPolicy::strict), ChartSingular);
  const AmbientVector u{0.6, 0.8, 0.0, 0.0};
  const ChartPoint cu = wedge_param_inverse(u);
  CHECK(cu.coords.phi == doctest::Approx(pi / 2));
  CHECK(cu.coords.psi == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(wedge_param_inverse(AmbientVector{0.0, 0.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("opening angle") {
  for (double phi : {0.1, 0.9, 2.0}) CHECK(opening_angle(phi, 0.0) == doctest::Approx(phi).epsilon(1e-14));
  for (double psi : {0.0, 0.4, 1.2, pi / 2}) CHECK(opening_angle(pi / 2, psi) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(opening_angle(0.1, 0.1) == doctest::Approx(0.10049872625066593).epsilon(1e-15));
  // φ <= tanβ <= (1+4ε)φ for small φ, ψ <= ε.
  const double eps = 0.1;
  for (double phi : {0.01, 0.05, 0.1})
    for (double psi : {0.01, 0.05, 0.1}) {
      const double t = std::tan(opening_angle(phi, psi));
      CHECK(t >= phi);
      CHECK(t <= (1 + 4 * eps) * phi);
    }
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double b = opening_angle(i * (pi / 2) / 100, 0.7);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("Napier reflection") {
  const auto [pt, st] = napier_reflect(0.8, 1e-9);
  CHECK(pt < 1e-8);
  CHECK(pt > 0.0);
  CHECK(st > 0.0);
  CHECK_THROWS_AS(napier_reflect(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(napier_reflect(0.5, pi / 2), DomainError);

  Rng rng(SeedSpec{3, 5});
  for (int i = 0; i < 1000; ++i) {
    const double phi = rng.uniform(0.01, pi / 2 - 0.01), psi = rng.uniform(0.01, pi / 2 - 0.01);
    const auto [a, b] = napier_reflect(phi, psi);
    CHECK(std::tan(a) == doctest::Approx(std::tan(psi) * std::sin(phi)).epsilon(1e-12));
    CHECK(std::tan(phi) == doctest::Approx(std::tan(b) * std::sin(a)).epsilon(1e-12));
    const auto [p2, s2] = napier_reflect(a, b);
    CHECK(std::fabs(p2 - phi) <= 1e-10);
    CHECK(std::fabs(s2 - psi) <= 1e-10);
  }
}

TEST_CASE("Napier Jacobian against central differences") {
  Rng rng(SeedSpec{3, 6});
  for (int d : {2, 3, 4, 5}) {
    for (int i = 0; i < 2500; ++i) {
      const double pt = rng.uniform(0.05, pi / 2 - 0.05), st = rng.uniform(0.05, pi / 2 - 0.05);
      const auto [phi, psi] = napier_reflect(pt, st);
      const double h = 1e-6;
      const auto a = napier_reflect(pt + h, st), b = napier_reflect(pt - h, st);
      const auto c = napier_reflect(pt, st + h), e = napier_reflect(pt, st - h);
      const double fd = std::fabs((a.first - b.first) * (c.second - e.second) -
                                  (c.first - e.first) * (a.second - b.second)) / (4 * h * h);
      const double closed = napier_jacobian(pt, st);
      CHECK(fd == doctest::Approx(closed).epsilon(1e-6));
      const double lhs = std::pow(std::sin(phi), d - 2) * std::pow(std::sin(psi), d - 1) * closed;
      const double rhs = std::pow(std::sin(pt), d - 2) * std::pow(std::sin(st), d - 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}
