#include "superconc/special.hpp"

#include <limits>
#include <stdexcept>

namespace superconc::special {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool converged(double step, double x) {
  return std::abs(step) <= 1e-14 * std::max(std::abs(x), 1e-300);
}

}  // namespace

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("norm_quantile: p must lie in (0,1)");
  double x = Eigen::numext::ndtri(p);
  // One guarded Newton step; ndtri is already ~1 ulp in the bulk.
  if (std::abs(x) < 8.0) {
    const double d = norm_pdf(x);
    if (d > 0.0) x -= (norm_cdf(x) - p) / d;
  }
  return x;
}

double gamma_quantile(double a, double p) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_quantile: a must be > 0");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("gamma_quantile: p must lie in (0,1)");

  const double lg = std::lgamma(a);
  double x;
  const double z = Eigen::numext::ndtri(p);
  if (z < -3.0) {
    // Left-tail series P(a,x) ~ x^a / (a Gamma(a)).
    x = std::exp((std::log(p) + std::log(a) + lg) / a);
  } else {
    // Wilson-Hilferty.
    const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    x = t > 0.0 ? a * t * t * t : a * 1e-3;
  }
  if (!(x > 0.0) || !std::isfinite(x)) x = a;

  double lo = 0.0, hi = inf;
  for (int it = 0; it < 200; ++it) {
    const double f = gamma_p(a, x) - p;
    if (f > 0.0)
      hi = std::min(hi, x);
    else
      lo = std::max(lo, x);
    const double dens = std::exp((a - 1.0) * std::log(x) - x - lg);
    double step;
    if (dens > 0.0 && std::isfinite(dens)) {
      step = f / dens;
    } else {
      step = std::isfinite(hi) ? -(0.5 * (lo + hi) - x) : -x;  // bisect / double
    }
    double xn = x - step;
    if (!(xn > lo && xn < hi) || !std::isfinite(xn))
      xn = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
    const double moved = xn - x;
    x = xn;
    if (converged(moved, x)) break;
  }
  return x;
}

double gamma_cquantile(double a, double q) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_cquantile: a must be > 0");
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("gamma_cquantile: q must lie in (0,1)");
  if (q > 0.5) return gamma_quantile(a, 1.0 - q);

  const double lg = std::lgamma(a);
  // Right-tail start: solve x = -ln q + (a-1) ln x - lg by fixed point.
  double x = std::max(-std::log(q) - lg, a + 1.0);
  for (int i = 0; i < 4; ++i)
    x = std::max(-std::log(q) - lg + (a - 1.0) * std::log(x), a * 0.5 + 0.5);

  double lo = 0.0, hi = inf;
  for (int it = 0; it < 200; ++it) {
    const double f = gamma_q(a, x) - q;  // decreasing in x
    if (f > 0.0)
      lo = std::max(lo, x);
    else
      hi = std::min(hi, x);
    const double dens = std::exp((a - 1.0) * std::log(x) - x - lg);
    double step;
    if (dens > 0.0 && std::isfinite(dens)) {
      step = -f / dens;
    } else {
      step = std::isfinite(hi) ? (0.5 * (lo + hi) - x) : x;
    }
    double xn = x + step;
    if (!(xn > lo && xn < hi) || !std::isfinite(xn))
      xn = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
    const double moved = xn - x;
    x = xn;
    if (converged(moved, x)) break;
  }
  return x;
}

double beta_quantile(double a, double b, double p) {
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("beta_quantile: parameters must be > 0");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("beta_quantile: p must lie in (0,1)");

  const double lb = log_beta(a, b);
  double x = a / (a + b);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 300; ++it) {
    const double f = beta_inc(a, b, x) - p;
    if (f > 0.0)
      hi = std::min(hi, x);
    else
      lo = std::max(lo, x);
    const double dens =
        std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
    double xn;
    if (dens > 0.0 && std::isfinite(dens)) {
      xn = x - f / dens;
    } else {
      xn = 0.5 * (lo + hi);
    }
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    const double moved = xn - x;
    x = xn;
    if (converged(moved, x)) break;
  }
  return x;
}

}  // namespace superconc::special
