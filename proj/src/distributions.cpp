#include "superconc/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "superconc/quadrature.hpp"
#include "superconc/special.hpp"

namespace superconc {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double tail_switch = 1e-300;  // survival below this -> asymptotic hazard

double alpha_potential_log_z(double alpha) {
  // Z = 2 * integral_0^inf exp(-x^alpha/alpha) dx.
  const double hi = std::pow(750.0 * alpha, 1.0 / alpha);
  auto f = [alpha](double x) { return std::exp(-std::pow(x, alpha) / alpha); };
  return std::log(2.0 * integrate(f, 0.0, hi, 1e-13));
}

double coulomb_log_z(std::int64_t k, std::int64_t n, double alpha) {
  // Z = integral_0^inf t^{2k-1} exp(-n t^alpha) dt, via the shifted log domain.
  const double p = 2.0 * static_cast<double>(k) - 1.0;
  const double nn = static_cast<double>(n);
  auto log_f = [p, nn, alpha](double t) {
    return t > 0.0 ? p * std::log(t) - nn * std::pow(t, alpha) : -inf;
  };
  const double peak = std::pow(p / (nn * alpha), 1.0 / alpha);
  // Bracket where the shifted integrand is negligible.
  const double m = log_f(peak);
  double lo = peak;
  while (lo > 1e-300 && log_f(lo) > m - 750.0) lo *= 0.5;
  double hi = peak;
  while (log_f(hi) > m - 750.0) hi *= 2.0;
  return log_integrate_exp(log_f, lo, hi, peak);
}

[[noreturn]] void support_error(const char* op) {
  throw std::domain_error(std::string(op) + ": x outside the support interior");
}

}  // namespace

DistributionSpec DistributionSpec::std_gaussian() {
  DistributionSpec s(Family::StdGaussian);
  s.poincare_ = 1.0;
  return s;
}

DistributionSpec DistributionSpec::std_exponential() {
  DistributionSpec s(Family::StdExponential);
  s.poincare_ = 4.0;
  return s;
}

DistributionSpec DistributionSpec::sym_exponential() {
  DistributionSpec s(Family::SymExponential);
  s.poincare_ = 4.0;
  return s;
}

DistributionSpec DistributionSpec::uniform01() {
  return DistributionSpec(Family::Uniform01);
}

DistributionSpec DistributionSpec::beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("Beta: parameters must be positive");
  DistributionSpec s(Family::Beta);
  s.beta_a_ = a;
  s.beta_b_ = b;
  return s;
}

DistributionSpec DistributionSpec::alpha_potential(double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("AlphaPotential: alpha must exceed 1");
  DistributionSpec s(Family::AlphaPotential);
  s.alpha_ = alpha;
  s.log_z_ = alpha_potential_log_z(alpha);
  return s;
}

DistributionSpec DistributionSpec::gamma(double shape) {
  if (!(shape > 0.0))
    throw std::invalid_argument("Gamma: shape must be positive");
  DistributionSpec s(Family::Gamma);
  s.gamma_shape_ = shape;
  return s;
}

DistributionSpec DistributionSpec::coulomb_radius(std::int64_t k, std::int64_t n,
                                                  double alpha) {
  if (k < 1 || n < 1)
    throw std::invalid_argument("CoulombRadius: k and n must be positive integers");
  if (!(alpha >= 1.0))
    throw std::invalid_argument("CoulombRadius: alpha must be >= 1");
  DistributionSpec s(Family::CoulombRadius);
  s.coulomb_k_ = k;
  s.coulomb_n_ = n;
  s.alpha_ = alpha;
  s.log_z_ = coulomb_log_z(k, n, alpha);
  return s;
}

Interval DistributionSpec::support() const {
  switch (family_) {
    case Family::StdGaussian:
    case Family::SymExponential:
    case Family::AlphaPotential:
      return {-inf, inf};
    case Family::StdExponential:
    case Family::Gamma:
    case Family::CoulombRadius:
      return {0.0, inf};
    case Family::Uniform01:
    case Family::Beta:
      return {0.0, 1.0};
  }
  return {-inf, inf};
}

std::string DistributionSpec::name() const {
  switch (family_) {
    case Family::StdGaussian: return "std-gaussian";
    case Family::StdExponential: return "std-exponential";
    case Family::SymExponential: return "sym-exponential";
    case Family::Uniform01: return "uniform01";
    case Family::Beta:
      return "beta(" + std::to_string(beta_a_) + "," + std::to_string(beta_b_) + ")";
    case Family::AlphaPotential:
      return "alpha-potential(" + std::to_string(alpha_) + ")";
    case Family::Gamma: return "gamma(" + std::to_string(gamma_shape_) + ")";
    case Family::CoulombRadius:
      return "coulomb-radius(k=" + std::to_string(coulomb_k_) +
             ",n=" + std::to_string(coulomb_n_) + "," + std::to_string(alpha_) + ")";
  }
  return "?";
}

double pdf(const DistributionSpec& spec, double x) {
  switch (spec.family()) {
    case Family::StdGaussian:
      return special::norm_pdf(x);
    case Family::StdExponential:
      return x < 0.0 ? 0.0 : std::exp(-x);
    case Family::SymExponential:
      return 0.5 * std::exp(-std::abs(x));
    case Family::Uniform01:
      return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    case Family::Beta: {
      if (x < 0.0 || x > 1.0) return 0.0;
      const double a = spec.beta_a(), b = spec.beta_b();
      const double ta = (a == 1.0) ? 0.0 : (a - 1.0) * std::log(x);
      const double tb = (b == 1.0) ? 0.0 : (b - 1.0) * std::log1p(-x);
      return std::exp(ta + tb - special::log_beta(a, b));
    }
    case Family::AlphaPotential:
      return std::exp(-std::pow(std::abs(x), spec.alpha()) / spec.alpha() -
                      log_normalizer(spec));
    case Family::Gamma: {
      if (x < 0.0) return 0.0;
      const double k = spec.gamma_shape();
      const double tk = (k == 1.0) ? 0.0 : (k - 1.0) * std::log(x);
      return std::exp(tk - x - std::lgamma(k));
    }
    case Family::CoulombRadius: {
      if (x <= 0.0) return 0.0;
      const double p = 2.0 * static_cast<double>(spec.coulomb_k()) - 1.0;
      return std::exp(p * std::log(x) -
                      static_cast<double>(spec.coulomb_n()) * std::pow(x, spec.alpha()) -
                      log_normalizer(spec));
    }
  }
  return 0.0;
}

double cdf(const DistributionSpec& spec, double x) {
  switch (spec.family()) {
    case Family::StdGaussian:
      return special::norm_cdf(x);
    case Family::StdExponential:
      return x < 0.0 ? 0.0 : -std::expm1(-x);
    case Family::SymExponential:
      return x <= 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    case Family::Uniform01:
      return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
    case Family::Beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return special::beta_inc(spec.beta_a(), spec.beta_b(), x);
    case Family::AlphaPotential: {
      const double a = spec.alpha();
      const double u = std::pow(std::abs(x), a) / a;
      return x >= 0.0 ? 0.5 * (1.0 + special::gamma_p(1.0 / a, u))
                      : 0.5 * special::gamma_q(1.0 / a, u);
    }
    case Family::Gamma:
      return x <= 0.0 ? 0.0 : special::gamma_p(spec.gamma_shape(), x);
    case Family::CoulombRadius:
      if (x <= 0.0) return 0.0;
      return special::gamma_p(2.0 * spec.coulomb_k() / spec.alpha(),
                              spec.coulomb_n() * std::pow(x, spec.alpha()));
  }
  return 0.0;
}

double survival(const DistributionSpec& spec, double x) {
  switch (spec.family()) {
    case Family::StdGaussian:
      return special::norm_survival(x);
    case Family::StdExponential:
      return x < 0.0 ? 1.0 : std::exp(-x);
    case Family::SymExponential:
      return x <= 0.0 ? 1.0 - 0.5 * std::exp(x) : 0.5 * std::exp(-x);
    case Family::Uniform01:
      return x < 0.0 ? 1.0 : (x > 1.0 ? 0.0 : 1.0 - x);
    case Family::Beta:
      if (x <= 0.0) return 1.0;
      if (x >= 1.0) return 0.0;
      return special::beta_inc(spec.beta_b(), spec.beta_a(), 1.0 - x);
    case Family::AlphaPotential: {
      const double a = spec.alpha();
      const double u = std::pow(std::abs(x), a) / a;
      return x >= 0.0 ? 0.5 * special::gamma_q(1.0 / a, u)
                      : 1.0 - 0.5 * special::gamma_q(1.0 / a, u);
    }
    case Family::Gamma:
      return x <= 0.0 ? 1.0 : special::gamma_q(spec.gamma_shape(), x);
    case Family::CoulombRadius:
      if (x <= 0.0) return 1.0;
      return special::gamma_q(2.0 * spec.coulomb_k() / spec.alpha(),
                              spec.coulomb_n() * std::pow(x, spec.alpha()));
  }
  return 0.0;
}

double quantile(const DistributionSpec& spec, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p must lie in (0,1)");
  switch (spec.family()) {
    case Family::StdGaussian:
      return special::norm_quantile(p);
    case Family::StdExponential:
      return -std::log1p(-p);
    case Family::SymExponential:
      return p <= 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case Family::Uniform01:
      return p;
    case Family::Beta:
      return special::beta_quantile(spec.beta_a(), spec.beta_b(), p);
    case Family::AlphaPotential: {
      const double a = spec.alpha();
      if (p == 0.5) return 0.0;
      const double tail = p > 0.5 ? 2.0 * p - 1.0 : 1.0 - 2.0 * p;
      const double u = special::gamma_quantile(1.0 / a, tail);
      const double mag = std::pow(a * u, 1.0 / a);
      return p > 0.5 ? mag : -mag;
    }
    case Family::Gamma:
      return special::gamma_quantile(spec.gamma_shape(), p);
    case Family::CoulombRadius: {
      const double u = special::gamma_quantile(2.0 * spec.coulomb_k() / spec.alpha(), p);
      return std::pow(u / spec.coulomb_n(), 1.0 / spec.alpha());
    }
  }
  return 0.0;
}

double cquantile(const DistributionSpec& spec, double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("cquantile: q must lie in (0,1)");
  switch (spec.family()) {
    case Family::StdGaussian:
      return special::norm_cquantile(q);
    case Family::StdExponential:
      return -std::log(q);
    case Family::SymExponential:
      return q <= 0.5 ? -std::log(2.0 * q) : std::log(2.0 * (1.0 - q));
    case Family::Uniform01:
      return 1.0 - q;
    case Family::Beta:
      return 1.0 - special::beta_quantile(spec.beta_b(), spec.beta_a(), q);
    case Family::AlphaPotential: {
      const double a = spec.alpha();
      if (q == 0.5) return 0.0;
      const double tail = q < 0.5 ? 2.0 * q : 2.0 * (1.0 - q);
      const double u = special::gamma_cquantile(1.0 / a, tail);
      const double mag = std::pow(a * u, 1.0 / a);
      return q < 0.5 ? mag : -mag;
    }
    case Family::Gamma:
      return special::gamma_cquantile(spec.gamma_shape(), q);
    case Family::CoulombRadius: {
      const double u = special::gamma_cquantile(2.0 * spec.coulomb_k() / spec.alpha(), q);
      return std::pow(u / spec.coulomb_n(), 1.0 / spec.alpha());
    }
  }
  return 0.0;
}

namespace {

// Tail asymptote of the hazard once the survival underflows: the derivative
// of -log pdf for the unbounded families, b/(1-x) for Beta (from the exact
// survival asymptotics at the right endpoint).
double hazard_asymptote(const DistributionSpec& spec, double x) {
  switch (spec.family()) {
    case Family::StdGaussian:
      return x;
    case Family::StdExponential:
    case Family::SymExponential:
      return 1.0;
    case Family::Uniform01:
      return 1.0 / (1.0 - x);
    case Family::Beta:
      return spec.beta_b() / (1.0 - x);
    case Family::AlphaPotential:
      return std::pow(std::abs(x), spec.alpha() - 1.0);
    case Family::Gamma:
      return 1.0 - (spec.gamma_shape() - 1.0) / x;
    case Family::CoulombRadius:
      return spec.coulomb_n() * spec.alpha() * std::pow(x, spec.alpha() - 1.0) -
             (2.0 * spec.coulomb_k() - 1.0) / x;
  }
  return 0.0;
}

}  // namespace

double hazard(const DistributionSpec& spec, double x) {
  const Interval sup = spec.support();
  if (!(x < sup.hi)) support_error("hazard");
  if (x < sup.lo) support_error("hazard");
  const double s = survival(spec, x);
  if (s < tail_switch) return hazard_asymptote(spec, x);
  return pdf(spec, x) / s;
}

double log_normalizer(const DistributionSpec& spec) {
  if (spec.family() != Family::AlphaPotential &&
      spec.family() != Family::CoulombRadius)
    throw std::domain_error("log_normalizer: not applicable to " + spec.name());
  return spec.log_z_;
}

double sample_one(const DistributionSpec& spec, RngStream& stream) {
  switch (spec.family()) {
    case Family::StdGaussian:
      return stream.gaussian();
    case Family::StdExponential:
      return stream.exponential();
    case Family::SymExponential:
      return stream.sym_exponential();
    case Family::Uniform01:
      return stream.uniform();
    case Family::Beta:
      return stream.beta(spec.beta_a(), spec.beta_b());
    case Family::AlphaPotential: {
      // |X|^alpha / alpha is Gamma(1/alpha); attach a symmetric sign.
      const double a = spec.alpha();
      const double mag = std::pow(a * stream.gamma(1.0 / a), 1.0 / a);
      return stream.uniform() < 0.5 ? -mag : mag;
    }
    case Family::Gamma:
      return stream.gamma(spec.gamma_shape());
    case Family::CoulombRadius: {
      // u = n t^alpha maps the law to Gamma(2k/alpha).
      const double g = stream.gamma(2.0 * spec.coulomb_k() / spec.alpha());
      return std::pow(g / spec.coulomb_n(), 1.0 / spec.alpha());
    }
  }
  return 0.0;
}

void sample_fill(const DistributionSpec& spec, RngStream& stream,
                 Eigen::Ref<Eigen::ArrayXd> out) {
  const Eigen::Index count = out.size();
  switch (spec.family()) {
    case Family::StdGaussian:
      for (Eigen::Index i = 0; i < count; ++i) out[i] = stream.gaussian();
      return;
    case Family::StdExponential:
      for (Eigen::Index i = 0; i < count; ++i) out[i] = stream.exponential();
      return;
    case Family::SymExponential:
      for (Eigen::Index i = 0; i < count; ++i) out[i] = stream.sym_exponential();
      return;
    case Family::Uniform01:
      for (Eigen::Index i = 0; i < count; ++i) out[i] = stream.uniform();
      return;
    default:
      for (Eigen::Index i = 0; i < count; ++i) out[i] = sample_one(spec, stream);
      return;
  }
}

Eigen::ArrayXd sample(const DistributionSpec& spec, RngStream& stream,
                      Eigen::Index count) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  Eigen::ArrayXd out(count);
  sample_fill(spec, stream, out);
  return out;
}

double beta_inverse_hazard_majorant(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("beta majorant: parameters must be positive");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("beta majorant: x must lie in (0,1)");
  const double xa1 = std::pow(x, a - 1.0);
  const double m1 = (1.0 - std::pow(x, a)) / (a * xa1);
  const double m2 = (1.0 - x) / (b * xa1);
  return std::min(m1, m2);
}

}  // namespace superconc
