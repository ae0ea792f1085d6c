#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

#include "superconc/rng.hpp"

namespace superconc {

enum class Family {
  StdGaussian,
  StdExponential,
  SymExponential,
  Uniform01,
  Beta,
  AlphaPotential,  // density Z^{-1} exp(-|x|^alpha / alpha), alpha > 1
  Gamma,           // shape k, rate 1
  CoulombRadius,   // density proportional to t^{2k-1} exp(-n t^alpha) on (0,inf)
};

struct Interval {
  double lo;
  double hi;
};

/// A one-dimensional law: family tag plus parameters. Normalizing constants
/// of the non-closed-form families are computed once at construction (by
/// adaptive quadrature in the log domain), so every evaluation operation is
/// pure and safe to call from concurrent workers.
class DistributionSpec {
 public:
  static DistributionSpec std_gaussian();
  static DistributionSpec std_exponential();
  static DistributionSpec sym_exponential();
  static DistributionSpec uniform01();
  static DistributionSpec beta(double a, double b);
  static DistributionSpec alpha_potential(double alpha);
  static DistributionSpec gamma(double shape);
  static DistributionSpec coulomb_radius(std::int64_t k, std::int64_t n, double alpha);

  Family family() const { return family_; }
  Interval support() const;
  std::optional<double> poincare_constant() const { return poincare_; }
  std::string name() const;

  double beta_a() const { return beta_a_; }
  double beta_b() const { return beta_b_; }
  double alpha() const { return alpha_; }
  double gamma_shape() const { return gamma_shape_; }
  std::int64_t coulomb_k() const { return coulomb_k_; }
  std::int64_t coulomb_n() const { return coulomb_n_; }

  friend double log_normalizer(const DistributionSpec& spec);

 private:
  explicit DistributionSpec(Family f) : family_(f) {}

  Family family_;
  double beta_a_ = 0.0, beta_b_ = 0.0;
  double alpha_ = 0.0;
  double gamma_shape_ = 0.0;
  std::int64_t coulomb_k_ = 0, coulomb_n_ = 0;
  std::optional<double> poincare_;
  double log_z_ = 0.0;  // AlphaPotential / CoulombRadius only
};

double pdf(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);

/// 1 - cdf, computed without cancellation in the right tail.
double survival(const DistributionSpec& spec, double x);

/// Inverse cdf; |cdf(result) - p| <= 1e-12 and the iteration is run to
/// convergence in x, so quantile(cdf(x)) recovers x itself.
double quantile(const DistributionSpec& spec, double p);

/// Inverse survival function, accurate for small q (deep right tail).
double cquantile(const DistributionSpec& spec, double q);

/// h(x) / (1 - H(x)). When the survival underflows below 1e-300 the value
/// switches to the tail asymptote (the derivative of -log pdf, i.e. V' for
/// the log-concave families). Throws outside the support interior.
double hazard(const DistributionSpec& spec, double x);

/// log of the normalizing constant Z; AlphaPotential / CoulombRadius only.
double log_normalizer(const DistributionSpec& spec);

double sample_one(const DistributionSpec& spec, RngStream& stream);
void sample_fill(const DistributionSpec& spec, RngStream& stream,
                 Eigen::Ref<Eigen::ArrayXd> out);
Eigen::ArrayXd sample(const DistributionSpec& spec, RngStream& stream,
                      Eigen::Index count);

/// The closed-form majorant of 1/kappa for the Beta(a,b) law,
/// min((1-x^a)/(a x^{a-1}), (1-x)/(b x^{a-1})). Exposed as a separate check;
/// the hazard itself uses the regularized incomplete beta function.
double beta_inverse_hazard_majorant(double a, double b, double x);

}  // namespace superconc
