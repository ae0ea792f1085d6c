#include "superconc/coulomb.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "superconc/distributions.hpp"
#include "superconc/parallel.hpp"

namespace superconc {

CoulombSpec::CoulombSpec(std::int64_t n, double alpha, double beta)
    : n_(n), alpha_(alpha) {
  if (beta != 2.0)
    throw std::invalid_argument(
        "CoulombSpec: the independent-radii representation holds only at beta = 2");
  if (n < 1) throw std::invalid_argument("CoulombSpec: n must be >= 1");
  if (!(alpha >= 1.0)) throw std::invalid_argument("CoulombSpec: alpha must be >= 1");
}

Eigen::ArrayXd sample_radii(const CoulombSpec& spec, RngStream& stream) {
  const std::int64_t n = spec.n();
  const double alpha = spec.alpha();
  const double inv_alpha = 1.0 / alpha;
  const double nn = static_cast<double>(n);
  Eigen::ArrayXd out(n);
  for (std::int64_t k = 1; k <= n; ++k) {
    const double g = stream.gamma(2.0 * static_cast<double>(k) / alpha);
    out[k - 1] = std::pow(g / nn, inv_alpha);
  }
  return out;
}

double sample_max_modulus_one(const CoulombSpec& spec, RngStream& stream) {
  const std::int64_t n = spec.n();
  const double alpha = spec.alpha();
  const double nn = static_cast<double>(n);
  // x -> (x/n)^{1/alpha} is increasing, so the max commutes with it.
  double gmax = 0.0;
  for (std::int64_t k = 1; k <= n; ++k)
    gmax = std::max(gmax, stream.gamma(2.0 * static_cast<double>(k) / alpha));
  return std::pow(gmax / nn, 1.0 / alpha);
}

Eigen::ArrayXd sample_max_modulus(const CoulombSpec& spec, std::int64_t reps,
                                  RngStream& stream, int workers) {
  if (reps < 1) throw std::invalid_argument("sample_max_modulus: reps must be >= 1");
  Eigen::ArrayXd out(reps);
  std::array<std::int64_t, kLogicalShards> offset{};
  std::int64_t acc = 0;
  for (int s = 0; s < kLogicalShards; ++s) {
    offset[s] = acc;
    acc += shard_size(reps, s);
  }
  for_each_shard(workers, [&](int s) {
    RngStream local = stream.derive(static_cast<std::uint64_t>(s));
    const std::int64_t count = shard_size(reps, s);
    for (std::int64_t r = 0; r < count; ++r)
      out[offset[s] + r] = sample_max_modulus_one(spec, local);
  });
  return out;
}

MajorantFit radius_hazard_majorant_check(const CoulombSpec& spec, std::int64_t k,
                                         std::span<const double> grid) {
  if (k < 1 || k > spec.n())
    throw std::invalid_argument("radius_hazard_majorant_check: k out of range");
  const DistributionSpec mu =
      DistributionSpec::coulomb_radius(k, spec.n(), spec.alpha());
  const double nn = static_cast<double>(spec.n());
  auto fit_on = [&](const std::vector<double>& xs) {
    double best = 0.0;
    for (const double x : xs) {
      if (!(x > 0.0)) throw std::domain_error("majorant grid must be positive");
      const double inv_kappa = 1.0 / hazard(mu, x);
      best = std::max(best, inv_kappa * (nn * std::pow(x, spec.alpha() - 1.0) + 1.0));
    }
    return best;
  };

  std::vector<double> base(grid.begin(), grid.end());
  std::vector<double> refined;
  refined.reserve(2 * base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    refined.push_back(base[i]);
    if (i + 1 < base.size()) refined.push_back(0.5 * (base[i] + base[i + 1]));
  }
  const double c0 = fit_on(base);
  const double c1 = fit_on(refined);
  const bool pass = std::isfinite(c0) && std::isfinite(c1) &&
                    std::abs(c1 - c0) <= 0.05 * std::max(c0, 1e-300);
  return {c0, c1, pass};
}

std::vector<CoulombRow> coulomb_variance_experiment(
    double alpha, std::span<const std::int64_t> n_grid, std::int64_t reps,
    std::uint64_t seed, int workers) {
  std::vector<CoulombRow> rows;
  rows.reserve(n_grid.size());
  std::uint64_t row_id = 0;
  for (const std::int64_t n : n_grid) {
    const CoulombSpec spec(n, alpha);
    RngStream row_stream(seed, 1000 + row_id++);
    const Eigen::ArrayXd maxima = sample_max_modulus(spec, reps, row_stream, workers);
    CoulombRow row;
    row.n = n;
    row.max_stats = mean_var_se(maxima);
    const double logn = std::log(static_cast<double>(n));
    row.var_n_logn = row.max_stats.variance * static_cast<double>(n) * logn;

    try {
      const RenormConstants rc = gumbel_constants(ExtremeKind::CoulombMax, n, alpha);
      const Eigen::ArrayXd scaled = rc.a_n * (maxima - rc.b_n);
      row.ks_gumbel = ks_statistic(scaled, [](double x) { return gumbel_cdf(x); });
    } catch (const std::domain_error&) {
      row.ks_gumbel = std::nullopt;  // c_n <= 0 at this n
    }

    const double dev_scale = std::sqrt(static_cast<double>(n) * logn);
    const Eigen::ArrayXd deviations =
        dev_scale * (maxima - row.max_stats.mean);
    const double s_lower =
        std::max(10.0 / static_cast<double>(reps), 1e-6);
    row.deviation = fit_exponential_tail(tail_profile(deviations, 0.3, s_lower, 25));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace superconc
