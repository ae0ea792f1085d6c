#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "superconc/bounds.hpp"
#include "superconc/distributions.hpp"
#include "superconc/functionals.hpp"
#include "superconc/quadrature.hpp"
#include "superconc/rng.hpp"
#include "superconc/stats.hpp"
#include "superconc/transport.hpp"

using namespace superconc;

namespace {

double joint_se(double a, double b) { return std::hypot(a, b); }

// Empirical variance of f under mu^n.
SummaryStats functional_variance(const Functional& f, const DistributionSpec& mu,
                                 std::int64_t samples, RngStream& stream) {
  MomentAccumulator acc;
  Eigen::ArrayXd x(f.dimension());
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    acc.add(f(x));
  }
  return acc.summary();
}

}  // namespace

TEST_CASE("weighted poincare: identity transports hit the Poincare equality cases") {
  // nu = mu = symmetric exponential, f(x) = x: C_nu E[t'^2] = 4 >= Var = 2.
  const TransportMap sym_id(DistributionSpec::sym_exponential(),
                            DistributionSpec::sym_exponential());
  RngStream s0(101, 0);
  const BoundReport r =
      weighted_poincare_rhs(Functional::max(1), sym_id, 20000, s0);
  CHECK(r.estimate == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(r.constant_convention == "includes C_nu");
  CHECK(r.estimate >= 2.0);  // Var of the symmetric exponential

  // nu = mu = Gaussian, f(x) = x: the bound collapses to Var = 1 exactly.
  const TransportMap gauss_id(DistributionSpec::std_gaussian(),
                              DistributionSpec::std_gaussian());
  RngStream s1(101, 1);
  const BoundReport g = weighted_poincare_rhs(Functional::max(1), gauss_id, 20000, s1);
  CHECK(g.estimate == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("weighted poincare dominates the variance of the Gaussian max") {
  const std::int64_t n = 1000, reps = 30000;
  const TransportMap map(DistributionSpec::sym_exponential(),
                         DistributionSpec::std_gaussian());
  RngStream s0(102, 0);
  const BoundReport bound =
      weighted_poincare_rhs(Functional::max(n), map, reps, s0);
  RngStream s1(102, 1);
  const SummaryStats var =
      functional_variance(Functional::max(n), DistributionSpec::std_gaussian(), reps, s1);
  CHECK(bound.estimate >=
        var.variance - 3.0 * joint_se(bound.standard_error, var.se_variance));
}

TEST_CASE("weighted poincare requires a known Poincare constant") {
  const TransportMap map(DistributionSpec::uniform01(),
                         DistributionSpec::std_gaussian());
  RngStream s(103, 0);
  CHECK_THROWS_AS(weighted_poincare_rhs(Functional::max(1), map, 1000, s),
                  std::invalid_argument);
}

TEST_CASE("exp weight rhs: uniform closed forms 8/((n+1)(n+2))") {
  // n = 1: 4 E[(1-U)^2] = 4/3.
  RngStream s0(104, 0);
  const BoundReport r1 =
      exp_weight_rhs(Functional::max(1), DistributionSpec::uniform01(), 50000, s0);
  CHECK(std::abs(r1.estimate - 4.0 / 3.0) <= 3.0 * r1.standard_error);

  // n = 10: 8/132.
  RngStream s1(104, 1);
  const BoundReport r10 =
      exp_weight_rhs(Functional::max(10), DistributionSpec::uniform01(), 50000, s1);
  CHECK(std::abs(r10.estimate - 8.0 / 132.0) <= 3.0 * r10.standard_error);

  // kappa = 1 for the standard exponential: the estimate is exactly 4.
  RngStream s2(104, 2);
  const BoundReport re =
      exp_weight_rhs(Functional::max(1), DistributionSpec::std_exponential(), 5000, s2);
  CHECK(re.estimate == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(re.estimate >= 1.0);  // Var of Exp(1)
}

TEST_CASE("gaussian weight rhs collapses to the max-weight expectation exactly") {
  const std::int64_t n = 50, reps = 4000;
  RngStream op_stream(105, 9);
  const BoundReport op = gaussian_weight_rhs(Functional::max(n), reps, op_stream);

  // Same stream lineage, same draws: the n-term gradient sum must equal the
  // single max-weight term sample by sample, hence identical estimates.
  RngStream manual_stream(105, 9);
  const Functional f = Functional::max(n);
  MomentAccumulator manual;
  const DistributionSpec mu = DistributionSpec::std_gaussian();
  Eigen::ArrayXd x(n), grad(n);
  for (std::int64_t s = 0; s < reps; ++s) {
    sample_fill(mu, manual_stream, x);
    f.gradient(x, grad);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = 1.0 / (1.0 + std::abs(x[i]));
      total += grad[i] * grad[i] * w * w;
    }
    manual.add(total);
  }
  CHECK(op.estimate == manual.mean());
  CHECK(op.constant_convention == "excludes C");
}

TEST_CASE("gaussian weight rhs at n = 1 matches the quadrature oracle") {
  const double oracle = integrate(
      [](double x) {
        const double w = 1.0 / (1.0 + std::abs(x));
        return w * w * pdf(DistributionSpec::std_gaussian(), x);
      },
      -40.0, 40.0, 1e-12);
  RngStream s(106, 0);
  const BoundReport r = gaussian_weight_rhs(Functional::max(1), 100000, s);
  CHECK(std::abs(r.estimate - oracle) <= 3.0 * r.standard_error);
}

TEST_CASE("gaussian weight estimate decays like 1/(1+log n)") {
  const std::int64_t grid[] = {16, 256, 4096};
  std::vector<double> scaled;
  for (const std::int64_t n : grid) {
    RngStream s(107, static_cast<std::uint64_t>(n));
    const BoundReport r =
        gaussian_weight_rhs(Functional::max(n), 5000, s);
    scaled.push_back(r.estimate * (1.0 + std::log(static_cast<double>(n))));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK(*hi / *lo <= 2.0);
}

TEST_CASE("logconcave weight at alpha = 2 agrees with the gaussian weight") {
  const std::int64_t n = 64, reps = 40000;
  RngStream s0(108, 0);
  const BoundReport lc = logconcave_weight_rhs(Functional::max(n), 2.0, reps, s0);
  RngStream s1(108, 1);
  const BoundReport gw = gaussian_weight_rhs(Functional::max(n), reps, s1);
  CHECK(std::abs(lc.estimate - gw.estimate) <=
        3.0 * joint_se(lc.standard_error, gw.standard_error));

  // n = 1, alpha = 2: quadrature oracle under the Gaussian.
  const double oracle = integrate(
      [](double x) {
        const double w = 1.0 / (1.0 + std::abs(x));
        return w * w * pdf(DistributionSpec::std_gaussian(), x);
      },
      -40.0, 40.0, 1e-12);
  RngStream s2(108, 2);
  const BoundReport one = logconcave_weight_rhs(Functional::max(1), 2.0, 100000, s2);
  CHECK(std::abs(one.estimate - oracle) <= 3.0 * one.standard_error);
}

TEST_CASE("logconcave weight estimate decays at the (log n)^{2(a-1)/a} rate") {
  const double alpha = 3.0;
  const double q = 2.0 * (alpha - 1.0) / alpha;
  const std::int64_t grid[] = {16, 256, 4096};
  std::vector<double> scaled;
  for (const std::int64_t n : grid) {
    RngStream s(115, static_cast<std::uint64_t>(n));
    const BoundReport r = logconcave_weight_rhs(Functional::max(n), alpha, 5000, s);
    scaled.push_back(r.estimate * std::pow(std::log(static_cast<double>(n)), q));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK(*hi / *lo <= 2.0);  // fit constant stable across the grid
}

TEST_CASE("talagrand and the gaussian weight bound both dominate at n = 1e4") {
  const std::int64_t n = 10000, reps = 10000;
  const Functional f = Functional::max(n);
  RngStream sv(116, 0);
  const SummaryStats var =
      functional_variance(f, DistributionSpec::std_gaussian(), reps, sv);

  RngStream st(116, 1);
  const BoundReport tal = talagrand_l1l2_rhs(f, reps, st);
  CHECK(tal.estimate >=
        var.variance - 3.0 * joint_se(tal.standard_error, var.se_variance));

  const TransportMap map(DistributionSpec::sym_exponential(),
                         DistributionSpec::std_gaussian());
  const double k_psi =
      psi_majorant_sup(map, [](double y) { return 1.0 + std::abs(y); }, -10.0, 10.0);
  const double c_fit = 4.0 * k_psi * k_psi;
  RngStream sg(116, 2);
  const BoundReport gw = gaussian_weight_rhs(f, reps, sg);
  CHECK(c_fit * gw.estimate >=
        var.variance - 3.0 * joint_se(c_fit * gw.standard_error, var.se_variance));
}

TEST_CASE("talagrand L1-L2 bound") {
  // f(x) = x_1: both norms are 1, the term is exactly 1.
  RngStream s0(109, 0);
  const BoundReport lin = talagrand_l1l2_rhs(Functional::max(1), 2000, s0);
  CHECK(lin.estimate == doctest::Approx(1.0).epsilon(1e-12));

  // Exchangeable max: every coordinate has P(A_i) = 1/n, total 1/(1 + log n / 2).
  const std::int64_t n = 100;
  RngStream s1(109, 1);
  const BoundReport mx = talagrand_l1l2_rhs(Functional::max(n), 40000, s1);
  const double closed = 1.0 / (1.0 + 0.5 * std::log(static_cast<double>(n)));
  CHECK(mx.estimate == doctest::Approx(closed).epsilon(0.05));

  // More coordinates than samples: the never-achieving coordinates have a
  // zero L1 norm and are skipped, leaving a finite estimate.
  RngStream s2(109, 2);
  const BoundReport sparse = talagrand_l1l2_rhs(Functional::max(200), 100, s2);
  CHECK(std::isfinite(sparse.estimate));
  CHECK(sparse.estimate > 0.0);
}

TEST_CASE("dominance: every bound sits above the empirical variance") {
  const TransportMap sym_to_gauss(DistributionSpec::sym_exponential(),
                                  DistributionSpec::std_gaussian());
  const double k_psi = psi_majorant_sup(
      sym_to_gauss, [](double y) { return 1.0 + std::abs(y); }, -10.0, 10.0);
  const double c_fit = 4.0 * k_psi * k_psi;

  const std::int64_t reps = 20000;
  std::uint64_t id = 0;
  for (const std::int64_t n : {10, 100, 1000}) {
    const Functional f = Functional::max(n);
    RngStream sv(110, id++);
    const SummaryStats var =
        functional_variance(f, DistributionSpec::std_gaussian(), reps, sv);

    RngStream st(110, id++);
    const BoundReport tal = talagrand_l1l2_rhs(f, reps, st);
    CHECK(tal.estimate >=
          var.variance - 3.0 * joint_se(tal.standard_error, var.se_variance));

    RngStream sg(110, id++);
    const BoundReport gw = gaussian_weight_rhs(f, reps, sg);
    CHECK(c_fit * gw.estimate >=
          var.variance - 3.0 * joint_se(c_fit * gw.standard_error, var.se_variance));

    RngStream sw(110, id++);
    const BoundReport wp = weighted_poincare_rhs(f, sym_to_gauss, reps, sw);
    CHECK(wp.estimate >=
          var.variance - 3.0 * joint_se(wp.standard_error, var.se_variance));

    RngStream se(110, id++);
    const BoundReport ew = exp_weight_rhs(f, DistributionSpec::std_gaussian(), reps, se);
    CHECK(ew.estimate >=
          var.variance - 3.0 * joint_se(ew.standard_error, var.se_variance));
  }
}

TEST_CASE("estimator consistency: doubling samples shrinks the SE like 1/sqrt(2)") {
  const Functional f = Functional::max(10);
  RngStream s0(111, 0);
  const BoundReport half = gaussian_weight_rhs(f, 40000, s0);
  RngStream s1(111, 1);
  const BoundReport full = gaussian_weight_rhs(f, 80000, s1);
  const double ratio = full.standard_error / half.standard_error;
  CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("laplace hypothesis check") {
  RngStream s(112, 0);
  const Eigen::ArrayXd xs = sample(DistributionSpec::std_gaussian(), s, 100000);

  // K = 1: Var(e^{tX/2}) = e^{t^2/4}(e^{t^2/4}-1) <= (t^2/4) e^{t^2/2} holds.
  const double grid[] = {0.05, 0.1, 0.2, 0.3, 0.45};
  for (const auto& check : laplace_hypothesis_check(xs, 1.0, grid)) CHECK(check.pass);

  // K below the variance fails at the small-theta end (both sides ~ t^2/4 * {Var vs K}).
  const double small[] = {0.05, 0.1};
  const auto failing = laplace_hypothesis_check(xs, 0.5, small);
  CHECK_FALSE(failing[0].pass);
  CHECK_FALSE(failing[1].pass);

  // Constant samples: the left side is zero, any K works.
  const Eigen::ArrayXd constant = Eigen::ArrayXd::Constant(1000, 2.0);
  for (const auto& check : laplace_hypothesis_check(constant, 0.01, small))
    CHECK(check.pass);

  // Range and argument validation.
  const double out_of_range[] = {0.6};
  CHECK_THROWS_AS(laplace_hypothesis_check(xs, 1.0, out_of_range), std::domain_error);
  CHECK_THROWS_AS(laplace_hypothesis_check(xs, 1.0, std::span<const double>{}),
                  std::invalid_argument);
}

TEST_CASE("epsilon_n estimate") {
  // Uniform target with exponential source: psi(y) = 1-y, so
  // eps_n = E[(1-M_n)^2] = 2/((n+1)(n+2)).
  const TransportMap eu(DistributionSpec::std_exponential(),
                        DistributionSpec::uniform01());
  RngStream s0(113, 0);
  const BoundReport e10 = epsilon_n_estimate(eu, 10, 50000, s0);
  CHECK(std::abs(e10.estimate - 2.0 / 132.0) <= 3.0 * e10.standard_error);

  // Gaussian target: strictly decreasing in n with 3-SE separation, and
  // eps_n * log n stays bounded.
  const TransportMap sg(DistributionSpec::sym_exponential(),
                        DistributionSpec::std_gaussian());
  std::vector<BoundReport> eps;
  std::uint64_t id = 1;
  for (const std::int64_t n : {100, 1000, 10000}) {
    RngStream sn(113, id++);
    eps.push_back(epsilon_n_estimate(sg, n, 20000, sn));
  }
  for (std::size_t i = 0; i + 1 < eps.size(); ++i)
    CHECK(eps[i].estimate - eps[i + 1].estimate >
          3.0 * joint_se(eps[i].standard_error, eps[i + 1].standard_error));
  std::vector<double> scaled;
  const std::int64_t grid[] = {100, 1000, 10000};
  for (std::size_t i = 0; i < eps.size(); ++i)
    scaled.push_back(eps[i].estimate * std::log(static_cast<double>(grid[i])));
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK(*hi / *lo <= 2.0);

  // Increasing weight (uniform source onto the exponential) violates the
  // monotone-majorant hypothesis.
  const TransportMap bad(DistributionSpec::uniform01(),
                         DistributionSpec::std_exponential());
  RngStream sb(113, 99);
  CHECK_THROWS_AS(epsilon_n_estimate(bad, 10, 1000, sb), std::runtime_error);
}

TEST_CASE("harris negative association") {
  RngStream s0(114, 0);
  const HarrisReport r = harris_check(DistributionSpec::std_gaussian(), 64, 30000, s0);
  CHECK(r.pass);
  CHECK(r.margin >= -3.0 * r.margin_se);

  // n = 1 with f = x, g = -x: the margin is the (nonnegative) variance.
  RngStream s1(114, 1);
  const HarrisReport lin = harris_check(DistributionSpec::std_gaussian(), 1, 20000, s1);
  CHECK(lin.margin >= 0.0);
  CHECK(lin.pass);
}
