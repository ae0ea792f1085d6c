#include "superconc/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "superconc/stats.hpp"

namespace superconc {

namespace {

BoundReport report_from(const MomentAccumulator& acc, double scale,
                        std::string convention) {
  const SummaryStats s = acc.summary();
  return {scale * s.mean, scale * s.se_mean, s.count, std::move(convention)};
}

// Rank order is preserved by a strictly increasing map, so for the pure
// order-statistic kinds the achieving index of f o T can be read off the
// pre-image sample directly. AbsMax mixes signs and needs the image.
bool rank_fast_path(const Functional& f) {
  using K = Functional::Kind;
  return f.kind() == K::Max || f.kind() == K::OrderStat || f.kind() == K::Median;
}

}  // namespace

BoundReport weighted_poincare_rhs(const Functional& f, const TransportMap& map,
                                  std::int64_t samples, RngStream& stream) {
  if (!map.source().poincare_constant())
    throw std::invalid_argument(
        "weighted_poincare_rhs: source law has no known Poincare constant");
  const double c_nu = *map.source().poincare_constant();
  const Eigen::Index n = f.dimension();

  MomentAccumulator acc;
  Eigen::ArrayXd y(n), x(n), grad(n);
  const bool fast = rank_fast_path(f);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(map.source(), stream, y);
    double contrib = 0.0;
    if (fast) {
      const Eigen::Index i = f.achieving_index(y);
      const double tp = map.derivative(y[i]);
      contrib = tp * tp;
    } else {
      for (Eigen::Index i = 0; i < n; ++i) x[i] = map.forward(y[i]);
      f.gradient(x, grad);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (grad[i] == 0.0) continue;
        const double tp = map.derivative(y[i]);
        contrib += grad[i] * grad[i] * tp * tp;
      }
    }
    acc.add(contrib);
  }
  return report_from(acc, c_nu, "includes C_nu");
}

BoundReport exp_weight_rhs(const Functional& f, const DistributionSpec& mu,
                           std::int64_t samples, RngStream& stream) {
  const Eigen::Index n = f.dimension();
  MomentAccumulator acc;
  Eigen::ArrayXd x(n), grad(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    double contrib = 0.0;
    if (f.is_indicator()) {
      const double k = hazard(mu, x[f.achieving_index(x)]);
      contrib = 1.0 / (k * k);
    } else {
      f.gradient(x, grad);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (grad[i] == 0.0) continue;
        const double k = hazard(mu, x[i]);
        contrib += grad[i] * grad[i] / (k * k);
      }
    }
    acc.add(contrib);
  }
  return report_from(acc, 4.0, "includes C_nu(=4)");
}

namespace {

template <class Weight>
BoundReport weight_rhs_impl(const Functional& f, const DistributionSpec& mu,
                            Weight&& w, std::int64_t samples, RngStream& stream) {
  const Eigen::Index n = f.dimension();
  MomentAccumulator acc;
  Eigen::ArrayXd x(n), grad(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    double contrib = 0.0;
    if (f.is_indicator()) {
      const double wi = w(x[f.achieving_index(x)]);
      contrib = wi * wi;
    } else {
      f.gradient(x, grad);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (grad[i] == 0.0) continue;
        const double wi = w(x[i]);
        contrib += grad[i] * grad[i] * wi * wi;
      }
    }
    acc.add(contrib);
  }
  return report_from(acc, 1.0, "excludes C");
}

}  // namespace

BoundReport gaussian_weight_rhs(const Functional& f, std::int64_t samples,
                                RngStream& stream) {
  return weight_rhs_impl(
      f, DistributionSpec::std_gaussian(),
      [](double x) { return 1.0 / (1.0 + std::abs(x)); }, samples, stream);
}

BoundReport logconcave_weight_rhs(const Functional& f, double alpha,
                                  std::int64_t samples, RngStream& stream) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("logconcave_weight_rhs: alpha must exceed 1");
  return weight_rhs_impl(
      f, DistributionSpec::alpha_potential(alpha),
      [alpha](double x) { return 1.0 / (1.0 + std::pow(std::abs(x), alpha - 1.0)); },
      samples, stream);
}

BoundReport talagrand_l1l2_rhs(const Functional& f, std::int64_t samples,
                               RngStream& stream) {
  const Eigen::Index n = f.dimension();
  const DistributionSpec mu = DistributionSpec::std_gaussian();

  // Per-coordinate running sums of |g_i|, g_i^2 and their squares/products
  // for the delta-method error.
  Eigen::ArrayXd s_abs = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd s_sq = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd s_abs2 = Eigen::ArrayXd::Zero(n);   // sum g^2  (== s_sq, kept for clarity)
  Eigen::ArrayXd s_sq2 = Eigen::ArrayXd::Zero(n);    // sum g^4
  Eigen::ArrayXd s_cross = Eigen::ArrayXd::Zero(n);  // sum |g|^3

  Eigen::ArrayXd x(n), grad(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    if (f.is_indicator()) {
      const Eigen::Index i = f.achieving_index(x);
      s_abs[i] += 1.0;
      s_sq[i] += 1.0;
      s_abs2[i] += 1.0;
      s_sq2[i] += 1.0;
      s_cross[i] += 1.0;
    } else {
      f.gradient(x, grad);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(grad[i]);
        const double q = a * a;
        s_abs[i] += a;
        s_sq[i] += q;
        s_abs2[i] += q;
        s_sq2[i] += q * q;
        s_cross[i] += a * q;
      }
    }
  }

  const double m = static_cast<double>(samples);
  double total = 0.0;
  double var_total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m1 = s_abs[i] / m;
    const double m2 = s_sq[i] / m;
    if (!(m1 > 0.0)) continue;  // degenerate coordinate: contributes 0
    const double ratio_log = std::log(std::sqrt(m2) / m1);
    const double denom = 1.0 + ratio_log;
    total += m2 / denom;
    // Delta method on (m1, m2).
    const double d1 = m2 / (m1 * denom * denom);
    const double d2 = 1.0 / denom - 0.5 / (denom * denom);
    const double v11 = s_abs2[i] / m - m1 * m1;
    const double v22 = s_sq2[i] / m - m2 * m2;
    const double v12 = s_cross[i] / m - m1 * m2;
    var_total += (d1 * d1 * v11 + d2 * d2 * v22 + 2.0 * d1 * d2 * v12) / m;
  }
  return {total, std::sqrt(std::max(0.0, var_total)), samples, "excludes C"};
}

std::vector<LaplaceCheck> laplace_hypothesis_check(
    Eigen::Ref<const Eigen::ArrayXd> samples, double k_constant,
    std::span<const double> theta_grid) {
  if (theta_grid.empty())
    throw std::invalid_argument("laplace_hypothesis_check: empty theta grid");
  if (!(k_constant > 0.0))
    throw std::invalid_argument("laplace_hypothesis_check: K must be positive");
  const double theta_max = 1.0 / (2.0 * std::sqrt(k_constant));
  for (const double t : theta_grid)
    if (!(t > 0.0 && t < theta_max))
      throw std::domain_error(
          "laplace_hypothesis_check: theta outside (0, 1/(2 sqrt K))");

  const Eigen::Index n = samples.size();
  if (n < 2) throw std::invalid_argument("laplace_hypothesis_check: too few samples");
  const Eigen::ArrayXd centered = samples - samples.mean();
  const double nn = static_cast<double>(n);

  std::vector<LaplaceCheck> out;
  out.reserve(theta_grid.size());
  for (const double theta : theta_grid) {
    const Eigen::ArrayXd y = (0.5 * theta * centered).exp();
    const Eigen::ArrayXd y2 = y * y;  // e^{theta X}
    const double m1 = y.mean();
    const double m2 = y2.mean();
    const double unbias = nn / (nn - 1.0);
    const double lhs = unbias * (m2 - m1 * m1);
    const double rhs = 0.25 * theta * theta * k_constant * m2;
    const double margin = rhs - lhs;
    // Delta method in (m1, m2): margin = (theta^2 K/4 - unbias) m2 + unbias m1^2.
    const double d1 = 2.0 * unbias * m1;
    const double d2 = 0.25 * theta * theta * k_constant - unbias;
    const double v11 = (y * y).mean() - m1 * m1;
    const double v22 = (y2 * y2).mean() - m2 * m2;
    const double v12 = (y * y2).mean() - m1 * m2;
    const double var_margin =
        (d1 * d1 * v11 + d2 * d2 * v22 + 2.0 * d1 * d2 * v12) / nn;
    const double se = std::sqrt(std::max(0.0, var_margin));
    out.push_back({theta, lhs, rhs, margin, se, margin >= -3.0 * se});
  }
  return out;
}

BoundReport epsilon_n_estimate(const TransportMap& map, std::int64_t n,
                               std::int64_t samples, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("epsilon_n_estimate: n must be >= 1");
  const DistributionSpec& mu = map.target();

  // The deviation argument needs a non-increasing weight where the max
  // lives. Checked on a quantile grid over the right half of the support.
  const int grid_points = 400;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= grid_points; ++j) {
    const double p = 0.5 + (0.5 - 1e-7) * j / grid_points;
    const double y = quantile(mu, p);
    const double w = map.weight(y);
    if (w > prev * (1.0 + 1e-9))
      throw std::runtime_error(
          "epsilon_n_estimate: hypothesis violated, psi is not non-increasing");
    prev = w;
  }

  MomentAccumulator acc;
  Eigen::ArrayXd x(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    const double w = map.weight(x.maxCoeff());
    acc.add(w * w);
  }
  return report_from(acc, 1.0, "raw E[psi(M_n)^2]");
}

HarrisReport harris_check(const DistributionSpec& mu, std::int64_t n,
                          std::int64_t samples, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("harris_check: n must be >= 1");
  MomentAccumulator af, ag, afg;
  double s_ff = 0, s_gg = 0, s_fg2 = 0, s_f_fg = 0, s_g_fg = 0, s_f_g = 0;
  Eigen::ArrayXd x(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    sample_fill(mu, stream, x);
    const double fv = x.maxCoeff();
    const double gv = -x.mean();
    const double fg = fv * gv;
    af.add(fv);
    ag.add(gv);
    afg.add(fg);
    s_ff += fv * fv;
    s_gg += gv * gv;
    s_fg2 += fg * fg;
    s_f_fg += fv * fg;
    s_g_fg += gv * fg;
    s_f_g += fv * gv;
  }
  const double m = static_cast<double>(samples);
  const double mf = af.mean(), mg = ag.mean(), mfg = afg.mean();
  const double margin = mf * mg - mfg;
  // Delta method on (mf, mg, mfg) with gradient (mg, mf, -1).
  const double vff = s_ff / m - mf * mf;
  const double vgg = s_gg / m - mg * mg;
  const double vgg2 = s_fg2 / m - mfg * mfg;
  const double cf_g = s_f_g / m - mf * mg;
  const double cf_fg = s_f_fg / m - mf * mfg;
  const double cg_fg = s_g_fg / m - mg * mfg;
  const double var_margin =
      (mg * mg * vff + mf * mf * vgg + vgg2 + 2.0 * mg * mf * cf_g -
       2.0 * mg * cf_fg - 2.0 * mf * cg_fg) /
      m;
  const double se = std::sqrt(std::max(0.0, var_margin));
  return {mfg, mf, mg, margin, se, margin >= -3.0 * se};
}

}  // namespace superconc
