#pragma once

#include <unsupported/Eigen/SpecialFunctions>

#include <cmath>

namespace superconc::special {

inline constexpr double sqrt_2pi = 2.5066282746310005024;
inline constexpr double inv_sqrt_2pi = 0.3989422804014326779;
inline constexpr double inv_sqrt2 = 0.7071067811865475244;

inline double norm_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * inv_sqrt2); }
inline double norm_survival(double x) { return 0.5 * std::erfc(x * inv_sqrt2); }

/// Regularized lower/upper incomplete gamma P(a,x), Q(a,x).
inline double gamma_p(double a, double x) { return Eigen::numext::igamma(a, x); }
inline double gamma_q(double a, double x) { return Eigen::numext::igammac(a, x); }

/// Regularized incomplete beta I_x(a,b).
inline double beta_inc(double a, double b, double x) {
  return Eigen::numext::betainc(a, b, x);
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Inverse standard normal cdf, |Phi(x) - p| well below 1e-12.
double norm_quantile(double p);
inline double norm_cquantile(double q) { return -norm_quantile(q); }

/// Solve P(a,x) = p (resp. Q(a,x) = q) for x, converged in x to machine scale.
double gamma_quantile(double a, double p);
double gamma_cquantile(double a, double q);

/// Solve I_x(a,b) = p for x in (0,1).
double beta_quantile(double a, double b, double p);

}  // namespace superconc::special
