#include "superconc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "superconc/distributions.hpp"

namespace superconc {

namespace dd {

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD add(DD x, double y) {
  DD s = two_sum(x.hi, y);
  s.lo += x.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD add(DD x, DD y) {
  DD s = two_sum(x.hi, y.hi);
  DD t = two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD sub(DD x, DD y) { return add(x, DD{-y.hi, -y.lo}); }

DD mul(DD x, double y) {
  DD p = two_prod(x.hi, y);
  p.lo += x.lo * y;
  return quick_two_sum(p.hi, p.lo);
}

DD mul(DD x, DD y) {
  DD p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

DD div(DD x, double y) {
  const double q1 = x.hi / y;
  const DD p = two_prod(q1, y);
  const double r = ((x.hi - p.hi) - p.lo + x.lo) / y;
  return quick_two_sum(q1, r);
}

}  // namespace dd

void MomentAccumulator::add(double x) {
  ++n_;
  const double x2 = x * x;
  s1_ = dd::add(s1_, x);
  s2_ = dd::add(s2_, x2);
  s3_ = dd::add(s3_, x2 * x);
  s4_ = dd::add(s4_, x2 * x2);
  min_ = std::min(min_, x);
  max_ = std::max(max_, x);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  n_ += other.n_;
  s1_ = dd::add(s1_, other.s1_);
  s2_ = dd::add(s2_, other.s2_);
  s3_ = dd::add(s3_, other.s3_);
  s4_ = dd::add(s4_, other.s4_);
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

double MomentAccumulator::mean() const {
  if (n_ < 1) throw std::invalid_argument("moments: need at least one sample");
  return dd::value(dd::div(s1_, static_cast<double>(n_)));
}

double MomentAccumulator::variance() const {
  if (n_ < 2) throw std::invalid_argument("moments: need at least two samples");
  const double n = static_cast<double>(n_);
  const dd::DD cm2 = dd::sub(s2_, dd::div(dd::mul(s1_, s1_), n));
  return std::max(0.0, dd::value(cm2) / (n - 1.0));
}

SummaryStats MomentAccumulator::summary() const {
  if (n_ < 2) throw std::invalid_argument("moments: need at least two samples");
  const double n = static_cast<double>(n_);
  const dd::DD m = dd::div(s1_, n);
  const dd::DD m2 = dd::mul(m, m);
  const dd::DD cm2 = dd::sub(s2_, dd::div(dd::mul(s1_, s1_), n));
  // cm4 = s4 - 4 m s3 + 6 m^2 s2 - 3 n m^4
  dd::DD cm4 = dd::sub(s4_, dd::mul(dd::mul(s3_, 4.0), m));
  cm4 = dd::add(cm4, dd::mul(dd::mul(s2_, 6.0), m2));
  cm4 = dd::sub(cm4, dd::mul(dd::mul(m2, m2), 3.0 * n));

  SummaryStats out;
  out.count = n_;
  out.mean = dd::value(m);
  out.variance = std::max(0.0, dd::value(cm2) / (n - 1.0));
  out.se_mean = std::sqrt(out.variance / n);
  const double mu2 = std::max(0.0, dd::value(cm2) / n);
  const double mu4 = dd::value(cm4) / n;
  const double var_of_var = mu4 / n - mu2 * mu2 * (n - 3.0) / (n * (n - 1.0));
  const double kurt = mu2 > 0.0 ? mu4 / (mu2 * mu2) : 0.0;
  out.se_variance_stable =
      n_ >= 4 && var_of_var > 0.0 && std::isfinite(var_of_var) && kurt < 200.0;
  out.se_variance = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
  return out;
}

SummaryStats mean_var_se(Eigen::Ref<const Eigen::ArrayXd> xs) {
  if (xs.size() < 2)
    throw std::invalid_argument("mean_var_se: need at least two samples");
  MomentAccumulator acc;
  for (Eigen::Index i = 0; i < xs.size(); ++i) acc.add(xs[i]);
  return acc.summary();
}

double bootstrap_variance_se(Eigen::Ref<const Eigen::ArrayXd> xs, int resamples,
                             RngStream& stream) {
  const Eigen::Index n = xs.size();
  if (n < 2 || resamples < 2)
    throw std::invalid_argument("bootstrap_variance_se: degenerate input");
  MomentAccumulator outer;
  for (int r = 0; r < resamples; ++r) {
    MomentAccumulator inner;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<Eigen::Index>(stream.next_u64() % n);
      inner.add(xs[j]);
    }
    outer.add(inner.variance());
  }
  return std::sqrt(outer.variance());
}

std::vector<TailPoint> empirical_tail(Eigen::Ref<const Eigen::ArrayXd> xs,
                                      std::span<const double> thresholds) {
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 1) throw std::invalid_argument("empirical_tail: empty sample");
  std::vector<double> sorted(xs.data(), xs.data() + xs.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<TailPoint> out;
  out.reserve(thresholds.size());
  for (const double t : thresholds) {
    const auto lower = std::lower_bound(sorted.begin(), sorted.end(), t);
    const double count = static_cast<double>(sorted.end() - lower);
    const double p = count / n;
    out.push_back({t, p, std::sqrt(p * (1.0 - p) / n)});
  }
  return out;
}

double ks_statistic(Eigen::Ref<const Eigen::ArrayXd> xs,
                    const std::function<double(double)>& cdf) {
  if (xs.size() < 1) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sorted(xs.data(), xs.data() + xs.size());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

RenormConstants gumbel_constants(ExtremeKind kind, std::int64_t n, double alpha) {
  if (n < 2) throw std::domain_error("gumbel_constants: n too small");
  const double logn = std::log(static_cast<double>(n));
  switch (kind) {
    case ExtremeKind::GaussianMax: {
      const double loglogn = std::log(logn);
      if (!(loglogn > 0.0))
        throw std::domain_error("gumbel_constants: n too small for GaussianMax (need n >= 3)");
      const double a = std::sqrt(2.0 * logn);
      const double b = a - (std::log(4.0 * M_PI) + loglogn) / (2.0 * a);
      return {a, b, std::nullopt};
    }
    case ExtremeKind::AlphaMax: {
      if (!(alpha > 1.0))
        throw std::invalid_argument("gumbel_constants: AlphaMax needs alpha > 1");
      const double loglogn = std::log(logn);
      if (!(loglogn > 0.0))
        throw std::domain_error("gumbel_constants: n too small for AlphaMax (need n >= 3)");
      const double r = (alpha - 1.0) / alpha;
      const double a = std::sqrt(alpha * std::pow(logn, 2.0 * r));
      const double z =
          std::exp(log_normalizer(DistributionSpec::alpha_potential(alpha)));
      const double b = std::pow(logn, 1.0 / alpha) -
                       (std::log(alpha * z) + r * loglogn) / std::pow(logn, r);
      return {a, b, std::nullopt};
    }
    case ExtremeKind::CoulombMax: {
      if (!(alpha >= 1.0))
        throw std::invalid_argument("gumbel_constants: CoulombMax needs alpha >= 1");
      const double c = logn - 2.0 * std::log(logn) - std::log(2.0 * M_PI);
      if (!(c > 0.0))
        throw std::domain_error("gumbel_constants: n too small for CoulombMax (c_n <= 0)");
      const double nn = static_cast<double>(n);
      const double a =
          2.0 * std::pow(alpha / 2.0, 1.0 / alpha + 0.5) * std::sqrt(nn * c);
      const double b = std::pow(2.0 / alpha, 1.0 / alpha) *
                       (1.0 + 0.5 * std::sqrt(2.0 * c / (alpha * nn)));
      return {a, b, c};
    }
  }
  throw std::invalid_argument("gumbel_constants: unknown kind");
}

RateFit rate_fit(std::span<const std::int64_t> ns,
                 std::span<const double> estimates, RateModel model,
                 double log_power_q) {
  if (ns.size() != estimates.size() || ns.size() < 3)
    throw std::invalid_argument("rate_fit: need >= 3 grid points");
  for (const double e : estimates)
    if (!(e > 0.0)) throw std::invalid_argument("rate_fit: estimates must be positive");

  const auto m = static_cast<double>(ns.size());
  auto log_model = [&](double n) -> double {
    switch (model) {
      case RateModel::InverseLog: return -std::log(std::log(n));
      case RateModel::InverseNLogN: return -std::log(n * std::log(n));
      case RateModel::InverseLogPower: return -log_power_q * std::log(std::log(n));
      case RateModel::PowerLaw: return 0.0;  // handled below
    }
    return 0.0;
  };

  RateFit out{0.0, 0.0, 0.0};
  if (model == RateModel::PowerLaw) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double x = std::log(static_cast<double>(ns[i]));
      const double y = std::log(estimates[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("rate_fit: degenerate grid");
    out.exponent = (m * sxy - sx * sy) / denom;
    out.constant = std::exp((sy - out.exponent * sx) / m);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double fit = out.constant * std::pow(static_cast<double>(ns[i]), out.exponent);
      out.max_rel_residual = std::max(out.max_rel_residual,
                                      std::abs(estimates[i] / fit - 1.0));
    }
    return out;
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i)
    acc += std::log(estimates[i]) - log_model(static_cast<double>(ns[i]));
  out.constant = std::exp(acc / m);
  out.exponent = model == RateModel::InverseLogPower ? -log_power_q : -1.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double fit =
        out.constant * std::exp(log_model(static_cast<double>(ns[i])));
    out.max_rel_residual =
        std::max(out.max_rel_residual, std::abs(estimates[i] / fit - 1.0));
  }
  return out;
}

std::vector<TailPoint> tail_profile(Eigen::Ref<const Eigen::ArrayXd> xs,
                                    double s_upper, double s_lower, int points) {
  const auto n = xs.size();
  if (n < 10) throw std::invalid_argument("tail_profile: too few samples");
  if (!(s_upper > s_lower && s_lower > 0.0 && s_upper < 1.0))
    throw std::invalid_argument("tail_profile: need 0 < s_lower < s_upper < 1");
  std::vector<double> sorted(xs.data(), xs.data() + n);
  std::sort(sorted.begin(), sorted.end());
  auto threshold_at = [&](double s) {
    auto idx = static_cast<std::ptrdiff_t>(std::ceil((1.0 - s) * static_cast<double>(n)));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, n - 1);
    return sorted[static_cast<std::size_t>(idx)];
  };
  const double t0 = threshold_at(s_upper);
  const double t1 = threshold_at(s_lower);
  if (!(t1 > t0)) throw std::invalid_argument("tail_profile: degenerate tail window");

  std::vector<TailPoint> out;
  out.reserve(points);
  const double nn = static_cast<double>(n);
  for (int j = 0; j < points; ++j) {
    const double t = t0 + (t1 - t0) * j / (points - 1);
    const auto lower = std::lower_bound(sorted.begin(), sorted.end(), t);
    const double p = static_cast<double>(sorted.end() - lower) / nn;
    if (p <= 0.0 || p >= 1.0) continue;
    out.push_back({t, p, std::sqrt(p * (1.0 - p) / nn)});
  }
  return out;
}

namespace {

TailFitResult weighted_line_fit(const std::vector<double>& t,
                                const std::vector<double>& y,
                                const std::vector<double>& w) {
  TailFitResult out;
  double sw = 0, st = 0, sy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sw += w[i]; st += w[i] * t[i]; sy += w[i] * y[i];
  }
  const double tbar = st / sw, ybar = sy / sw;
  double stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += w[i] * (t[i] - tbar) * (t[i] - tbar);
    sty += w[i] * (t[i] - tbar) * (y[i] - ybar);
  }
  if (stt == 0.0) throw std::invalid_argument("tail fit: degenerate thresholds");
  const double slope = sty / stt;
  const double intercept = ybar - slope * tbar;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (intercept + slope * t[i]);
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  out.rate = slope;
  out.intercept = intercept;
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  const auto dof = static_cast<double>(t.size()) - 2.0;
  out.rate_se = dof > 0.0 ? std::sqrt((ss_res / dof) / stt) : 0.0;
  out.points = static_cast<int>(t.size());
  return out;
}

}  // namespace

TailFitResult fit_exponential_tail(const std::vector<TailPoint>& profile) {
  std::vector<double> t, y, w;
  for (const auto& pt : profile) {
    if (pt.survival <= 0.0 || pt.survival >= 1.0) continue;
    t.push_back(pt.threshold);
    y.push_back(std::log(pt.survival));
    w.push_back(pt.survival);  // inverse variance of log survival, up to 1/N
  }
  if (t.size() < 3) throw std::invalid_argument("fit_exponential_tail: too few points");
  TailFitResult out = weighted_line_fit(t, y, w);
  out.rate = -out.rate;  // report the decay rate as positive
  return out;
}

TailFitResult fit_double_exponential_tail(const std::vector<TailPoint>& profile) {
  std::vector<double> t, y, w;
  for (const auto& pt : profile) {
    if (pt.survival <= 0.0 || pt.survival >= 0.99) continue;
    const double l = -std::log(pt.survival);
    if (!(l > 0.0)) continue;
    t.push_back(pt.threshold);
    y.push_back(std::log(l));
    w.push_back(pt.survival * l * l);  // delta-method weight for log(-log S)
  }
  if (t.size() < 3)
    throw std::invalid_argument("fit_double_exponential_tail: too few points");
  return weighted_line_fit(t, y, w);
}

}  // namespace superconc
