#include "wedgehull/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wedgehull/errors.hpp"
#include "wedgehull/formulas.hpp"
#include "wedgehull/geometry.hpp"
#include "wedgehull/hull.hpp"
#include "wedgehull/oracles.hpp"
#include "wedgehull/sampling.hpp"

namespace wedge {

namespace {

using std::numbers::pi;

constexpr std::size_t kCapSamples = 1'000'000;
constexpr std::size_t kI1Samples = 20'000;
constexpr int kRandomPoints = 1000;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

class Suite {
 public:
  Suite(std::string name, VerifyReport& report) : name_(std::move(name)), report_(report) {}

  void check(std::string name, bool ok, std::string detail, nlohmann::json witness = nullptr) {
    report_.checks.push_back({name_, std::move(name), ok, std::move(detail), std::move(witness)});
  }

 private:
  std::string name_;
  VerifyReport& report_;
};

AmbientVector random_unit(Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  draw_uniform_sphere(rng, x);
  return AmbientVector(std::span<const double>(x));
}

void suite_geometry(const VerifyOptions& o, VerifyReport& report) {
  Suite s("geometry", report);
  Rng rng(SeedSpec{o.seed, 101});
  for (int d : {2, 3, 4}) {
    const auto dim = static_cast<std::size_t>(d) + 1;
    const AmbientVector u = random_unit(rng, dim);
    double worst_proj = 0.0, worst_inv = 0.0;
    for (int i = 0; i < kRandomPoints; ++i) {
      AmbientVector v = random_unit(rng, dim);
      if (dot(u, v) < 0.05) v = -v;
      if (dot(u, v) < 0.05) continue;
      worst_proj = std::max(worst_proj, max_abs_diff(gnomonic_inverse(u, gnomonic_project(u, v)), v));
      AmbientVector x = random_unit(rng, dim);
      x -= u * dot(x, u);
      x *= 3.0;
      worst_inv = std::max(worst_inv, max_abs_diff(gnomonic_project(u, gnomonic_inverse(u, x)), x));
    }
    s.check("gnomonic_round_trip_d" + std::to_string(d), worst_proj <= 1e-12 && worst_inv <= 1e-12,
            "max error " + fmt(std::max(worst_proj, worst_inv)));

    double worst_norm = 0.0, worst_chart = 0.0;
    for (int i = 0; i < kRandomPoints; ++i) {
      const WedgeCoords c{rng.uniform(0.0, pi), rng.uniform(0.0, pi / 2), random_unit(rng, dim - 2)};
      const AmbientVector z = wedge_param(c, d);
      worst_norm = std::max(worst_norm, std::fabs(z.norm() - 1.0));
      const ChartPoint back = wedge_param_inverse(z);
      worst_chart = std::max(worst_chart, max_abs_diff(wedge_param(back.coords, d), z));
    }
    s.check("chart_unit_norm_d" + std::to_string(d), worst_norm <= 1e-14, "max |‖Z‖-1| " + fmt(worst_norm));
    s.check("chart_round_trip_d" + std::to_string(d), worst_chart <= 1e-10, "max error " + fmt(worst_chart));
  }

  double worst_beta = 0.0;
  bool monotone = true;
  for (int i = 0; i < kRandomPoints; ++i) {
    const double phi = rng.uniform(0.0, pi / 2), psi = rng.uniform(0.0, pi / 2);
    worst_beta = std::max(worst_beta, std::fabs(std::tan(opening_angle(phi, psi)) * std::cos(psi) - std::tan(phi)) /
                                          std::max(1.0, std::fabs(std::tan(phi))));
    if (opening_angle(phi + 1e-3, psi) < opening_angle(phi, psi)) monotone = false;
  }
  s.check("opening_angle_tangent_identity", worst_beta <= 1e-12, "max relative error " + fmt(worst_beta));
  s.check("opening_angle_monotone", monotone, "beta increasing in phi on [0, pi/2]");

  double worst_inv = 0.0, worst_jac = 0.0;
  nlohmann::json jac_witness = nullptr;
  for (int d : {2, 3, 4}) {
    for (int i = 0; i < kRandomPoints; ++i) {
      const double phi = rng.uniform(0.05, pi / 2 - 0.05), psi = rng.uniform(0.05, pi / 2 - 0.05);
      const auto [pt, st] = napier_reflect(phi, psi);
      const auto [p2, s2] = napier_reflect(pt, st);
      worst_inv = std::max({worst_inv, std::fabs(p2 - phi), std::fabs(s2 - psi)});
      // (φ, ψ) = G(φ̃, ψ̃); compare the closed-form Jacobian with central differences.
      const double h = 1e-6;
      const auto a = napier_reflect(pt + h, st), b = napier_reflect(pt - h, st);
      const auto c = napier_reflect(pt, st + h), e = napier_reflect(pt, st - h);
      const double j11 = (a.first - b.first) / (2 * h), j21 = (a.second - b.second) / (2 * h);
      const double j12 = (c.first - e.first) / (2 * h), j22 = (c.second - e.second) / (2 * h);
      const double fd = std::fabs(j11 * j22 - j12 * j21);
      const double closed = napier_jacobian(pt, st);
      const double lhs = std::pow(std::sin(phi), d - 2) * std::pow(std::sin(psi), d - 1) * closed;
      const double rhs = std::pow(std::sin(pt), d - 2) * std::pow(std::sin(st), d - 1);
      const double err = std::max(std::fabs(fd - closed) / closed, std::fabs(lhs - rhs) / rhs);
      if (err > worst_jac) {
        worst_jac = err;
        jac_witness = {phi, psi};
      }
    }
  }
  s.check("napier_involution", worst_inv <= 1e-10, "max error " + fmt(worst_inv));
  s.check("napier_jacobian_identity", worst_jac <= 1e-6, "max relative error " + fmt(worst_jac), jac_witness);

  for (int d : {2, 3}) {
    const WedgeModel m = WedgeModel::right_angle(d);
    const EstimatorReport r = mc_wedge_measure(m, kCapSamples, SeedSpec{o.seed, 200u + static_cast<unsigned>(d)}, o.workers);
    const double exact = omega(d + 1) / 4.0;
    s.check("wedge_measure_d" + std::to_string(d), std::fabs(r.value - exact) <= 3.0 * r.std_error,
            "estimate " + fmt(r.value) + " +- " + fmt(r.std_error) + ", exact " + fmt(exact));
  }
}

std::vector<int> dims_or(const VerifyOptions& o, std::vector<int> defaults) {
  if (o.dim) return {*o.dim};
  return defaults;
}

void suite_i2(const VerifyOptions& o, VerifyReport& report) {
  Suite s("i2", report);
  for (int d : dims_or(o, {2, 3})) {
    const WedgeModel m = WedgeModel::right_angle(d);
    Rng rng(SeedSpec{o.seed, 300u + static_cast<unsigned>(d)});
    int failures = 0;
    nlohmann::json worst = nullptr;
    double worst_z = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double phi = rng.uniform(0.0, pi), psi = rng.uniform(0.0, pi / 2);
      const AmbientVector u = random_unit(rng, static_cast<std::size_t>(d) - 1);
      const AmbientVector z = wedge_param({phi, psi, u}, d);
      const EstimatorReport r = mc_cap_measure(m, z, kCapSamples, SeedSpec{o.seed, rng.next_u64()}, o.workers);
      const double exact = i2_closed(d, phi, psi);
      // Binomial SE under the closed-form hit probability; stays positive for tiny caps.
      const double p0 = exact / omega(d + 1);
      const double se0 = omega(d + 1) * std::sqrt(p0 * (1.0 - p0) / static_cast<double>(r.sample_count));
      const double zscore = se0 > 0 ? std::fabs(r.value - exact) / se0 : (r.value == exact ? 0.0 : INFINITY);
      if (zscore > 3.0) ++failures;
      if (zscore > worst_z) {
        worst_z = zscore;
        worst = {{"phi", phi}, {"psi", psi}, {"estimate", r.value}, {"se", se0}, {"closed", exact}};
      }
    }
    s.check("closed_form_vs_mc_d" + std::to_string(d), failures == 0,
            std::to_string(failures) + " of 20 beyond 3 SE, worst z " + fmt(worst_z), worst);

    double min_gap = INFINITY, worst_complement = 0.0;
    nlohmann::json gap_witness = nullptr;
    for (int i = 0; i < 200; ++i)
      for (int k = 0; k < 200; ++k) {
        const double phi = (i + 0.5) * pi / 200, psi = (k + 0.5) * (pi / 2) / 200;
        const double v = i2_closed(d, phi, psi);
        const double gap = v - i2_bounds(d, phi, psi).lower;
        if (gap < min_gap) {
          min_gap = gap;
          gap_witness = {phi, psi};
        }
        const double comp = omega(d + 1) / (4 * pi) * (pi - psi + std::asin(std::cos(phi) * std::sin(psi)));
        worst_complement = std::max(worst_complement, std::fabs(omega(d + 1) / 4 - v - comp));
      }
    s.check("lower_bound_grid_d" + std::to_string(d), min_gap >= 0.0, "min slack " + fmt(min_gap), gap_witness);
    s.check("complement_identity_d" + std::to_string(d), worst_complement <= 1e-12, "max error " + fmt(worst_complement));
    const double ratio = i2_closed(d, 1e-2, 1e-2) / i2_bounds(d, 1e-2, 1e-2).asymptotic;
    s.check("asymptotic_ratio_d" + std::to_string(d), ratio >= 0.95 && ratio <= 1.05, "ratio " + fmt(ratio));
  }
}

void suite_i1(const VerifyOptions& o, VerifyReport& report) {
  Suite s("i1", report);
  for (int d : dims_or(o, {2, 3})) {
    const double cap = std::pow(omega(d) / 2.0, d);
    Rng rng(SeedSpec{o.seed, 400u + static_cast<unsigned>(d)});
    bool below = true;
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double phi = rng.uniform(0.2, pi / 2), psi = rng.uniform(0.2, pi / 2 - 0.1);
      const EstimatorReport r = mc_I1(d, phi, psi, kI1Samples, SeedSpec{o.seed, rng.next_u64()}, o.workers);
      worst = std::max(worst, r.value / cap);
      if (r.value > cap) below = false;
    }
    s.check("upper_bound_d" + std::to_string(d), below, "max I1/(omega_d/2)^d " + fmt(worst));

    const double A = d == 2 ? kA2 : estimate_A_d(d, 1'000'000, SeedSpec{o.seed, 410}, o.workers).value;
    const ModelConstants mc = model_constants(d, A);
    const double phi = 1e-2;
    const EstimatorReport r = mc_I1(d, phi, phi, kI1Samples, SeedSpec{o.seed, 420u + static_cast<unsigned>(d)}, o.workers);
    const double ratio = r.value / (mc.B_d * std::pow(phi, d + 1));
    s.check("asymptotic_ratio_d" + std::to_string(d), ratio >= 0.9 && ratio <= 1.1,
            "ratio " + fmt(ratio) + " (SE " + fmt(r.std_error / (mc.B_d * std::pow(phi, d + 1))) + ")");
    if (d == 2) {
      const double q = i1_planar_quadrature(0.05, 0.05);
      const EstimatorReport e = mc_I1(2, 0.05, 0.05, 200'000, SeedSpec{o.seed, 430}, o.workers);
      s.check("planar_quadrature_d2", std::fabs(e.value - q) <= 3.0 * e.std_error,
              "mc " + fmt(e.value) + " +- " + fmt(e.std_error) + ", quadrature " + fmt(q));
    }
  }
}

void suite_appendix(const VerifyOptions&, VerifyReport& report) {
  Suite s("appendix", report);
  try {
    const AppendixReport r = verify_appendix_inequalities(200);
    for (const auto& c : r.checks) s.check(c.name, c.min_slack > 0.0, "min slack " + fmt(c.min_slack), c.argmin);
  } catch (const InequalityViolation& e) {
    s.check("grid_inequalities", false, e.what(), e.witness());
  }
  const double f0 = appendix_f(0.01, 0.01);
  s.check("f_near_origin", std::fabs(f0 - 0.5) <= 1e-3, "f(0.01, 0.01) = " + fmt(f0));
  double worst_edge = 0.0, worst_limit = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double y = i * pi / 100;
    worst_edge = std::max(worst_edge, std::fabs(appendix_f(pi / 2, y) - 2.0 / (pi * y)));
    worst_limit = std::max(worst_limit, std::fabs(appendix_f(1e-9, y) - (1.0 - std::cos(y)) / (y * y)));
  }
  s.check("edge_identity", worst_edge <= 1e-12, "max |f(pi/2,y) - 2/(pi y)| " + fmt(worst_edge));
  s.check("x_to_zero_limit", worst_limit <= 1e-6, "max error " + fmt(worst_limit));
}

void suite_limits(const VerifyOptions&, VerifyReport& report) {
  Suite s("limits", report);
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
  const double eps = 0.3;
  for (int d : {2, 3}) {
    const double tol = d == 2 ? 0.10 : 0.15;
    const LimitLemmaReport r1 = mc_binomial_limit_lemma(d, 1.0, grid, eps);
    const LimitLemmaReport r2 = mc_binomial_limit_lemma(d, 2.0, grid, eps);
    nlohmann::json seq = nlohmann::json::array();
    for (const auto& p : r1.points) seq.push_back({{"n", p.n}, {"H", p.H}, {"ratio", p.ratio}});
    const double last = r1.points.back().ratio;
    s.check("ratio_at_1e6_d" + std::to_string(d), std::fabs(last / r1.target - 1.0) <= tol,
            "H/log n = " + fmt(last) + ", target " + fmt(r1.target), seq);
    const double last2 = r2.points.back().ratio;
    s.check("alpha_independence_d" + std::to_string(d), std::fabs(last2 / last - 1.0) <= 0.05,
            "alpha=1: " + fmt(last) + ", alpha=2: " + fmt(last2));
  }
}

void suite_hull(const VerifyOptions& o, VerifyReport& report) {
  Suite s("hull", report);
  for (int d : {2, 3}) {
    const WedgeModel m = WedgeModel::right_angle(d);
    int mismatches = 0, euler = 0, flagged = 0;
    nlohmann::json witness = nullptr;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (std::size_t n = static_cast<std::size_t>(d) + 1; n <= 30; ++n) {
        const SampleCloud c = sample_uniform_wedge(m, SeedSpec{o.seed, hash_combine(seed, n)}, n);
        const FacetSet a = facets_ambient(c);
        const FacetSet p = facets_projected(c);
        if (a.degenerate_flag) {
          ++flagged;
          continue;
        }
        if (a.facets != p.facets) {
          ++mismatches;
          if (witness.is_null()) witness = {{"seed", seed}, {"n", n}, {"ambient", a.facet_count()}, {"projected", p.facet_count()}};
        }
        if (d == 3 && p.facet_count() != 2 * p.vertex_count - 4) ++euler;
      }
    }
    s.check("ambient_equals_projected_d" + std::to_string(d), mismatches == 0,
            std::to_string(mismatches) + " mismatches, " + std::to_string(flagged) + " flagged", witness);
    if (d == 3) s.check("euler_relation_d3", euler == 0, std::to_string(euler) + " violations");
  }
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"witness", c.witness}});
  return {{"passed", all_passed()}, {"checks", arr}};
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"geometry", "i2", "i1", "appendix", "limits", "hull", "all"};
  return names;
}

VerifyReport run_verify(const VerifyOptions& o) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw DomainError("unknown suite '" + o.suite + "'");
  VerifyReport report;
  const bool all = o.suite == "all";
  if (all || o.suite == "geometry") suite_geometry(o, report);
  if (all || o.suite == "i2") suite_i2(o, report);
  if (all || o.suite == "i1") suite_i1(o, report);
  if (all || o.suite == "appendix") suite_appendix(o, report);
  if (all || o.suite == "limits") suite_limits(o, report);
  if (all || o.suite == "hull") suite_hull(o, report);
  return report;
}

}  // namespace wedge
