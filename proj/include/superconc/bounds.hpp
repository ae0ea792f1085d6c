#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "superconc/distributions.hpp"
#include "superconc/functionals.hpp"
#include "superconc/rng.hpp"
#include "superconc/transport.hpp"

namespace superconc {

/// Monte Carlo estimate of one inequality's right-hand side. The
/// constant_convention tag records whether the value already carries the
/// outer constant of the inequality (the source Poincare constant, the
/// exponential-transport 4) or deliberately excludes the unfitted "C".
struct BoundReport {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t sample_count = 0;
  std::string constant_convention;
};

/// C_nu * sum_i E[(d_i f)^2 o T(Y) * t'(Y_i)^2] with Y ~ nu^n.
/// Requires the source law to carry a known Poincare constant.
BoundReport weighted_poincare_rhs(const Functional& f, const TransportMap& map,
                                  std::int64_t samples, RngStream& stream);

/// 4 * sum_i E[(d_i f(X))^2 / kappa_mu(X_i)^2] with X ~ mu^n (exponential
/// transport; the 4 is the exponential Poincare constant, so this is a true
/// bound as reported).
BoundReport exp_weight_rhs(const Functional& f, const DistributionSpec& mu,
                           std::int64_t samples, RngStream& stream);

/// sum_i E[(d_i f)^2 (1+|X_i|)^{-2}] under the standard Gaussian product
/// measure; excludes the inequality's absolute constant.
BoundReport gaussian_weight_rhs(const Functional& f, std::int64_t samples,
                                RngStream& stream);

/// sum_i E[(d_i f)^2 (1+|X_i|^{alpha-1})^{-2}] under the alpha-potential
/// product measure; excludes the absolute constant.
BoundReport logconcave_weight_rhs(const Functional& f, double alpha,
                                  std::int64_t samples, RngStream& stream);

/// sum_i ||d_i f||_2^2 / (1 + log(||d_i f||_2 / ||d_i f||_1)) under the
/// Gaussian product measure; coordinates with vanishing L1 norm contribute 0.
BoundReport talagrand_l1l2_rhs(const Functional& f, std::int64_t samples,
                               RngStream& stream);

struct LaplaceCheck {
  double theta;
  double lhs_variance;  // Var(e^{theta X / 2})
  double rhs;           // (theta^2/4) K E[e^{theta X}]
  double margin;        // rhs - lhs
  double margin_se;
  bool pass;            // margin >= -3 se
};

/// Empirical check of Var(e^{theta X/2}) <= (theta^2/4) K E[e^{theta X}]
/// per theta. Samples are centered by their mean; every theta must lie in
/// (0, 1/(2 sqrt K)).
std::vector<LaplaceCheck> laplace_hypothesis_check(
    Eigen::Ref<const Eigen::ArrayXd> samples, double k_constant,
    std::span<const double> theta_grid);

/// E[psi(M_n)^2] with M_n the max of n i.i.d. draws from the map's target.
/// Validates that psi is non-increasing on a right-half-support grid first
/// and throws if the hypothesis fails.
BoundReport epsilon_n_estimate(const TransportMap& map, std::int64_t n,
                               std::int64_t samples, RngStream& stream);

struct HarrisReport {
  double e_fg;
  double e_f;
  double e_g;
  double margin;  // E[f]E[g] - E[fg], nonnegative up to MC error
  double margin_se;
  bool pass;
};

/// Harris negative association on the test pair f = max (non-decreasing),
/// g = -coordinate mean (non-increasing), under mu^n.
HarrisReport harris_check(const DistributionSpec& mu, std::int64_t n,
                          std::int64_t samples, RngStream& stream);

}  // namespace superconc
