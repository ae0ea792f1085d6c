#pragma once

#include <cstdint>

#include "superconc/distributions.hpp"
#include "superconc/rng.hpp"

namespace superconc {

/// Monotone rearrangement t pushing the source law nu onto the target law mu:
/// t = H^{-1} o G with G, H the cdfs. Immutable after construction; every
/// evaluation is pure, so maps can be shared freely across workers.
class TransportMap {
 public:
  TransportMap(DistributionSpec source, DistributionSpec target);

  const DistributionSpec& source() const { return source_; }
  const DistributionSpec& target() const { return target_; }

  /// t(x) = quantile_mu(cdf_nu(x)); routed through the survival function on
  /// the right half so both tails keep full precision.
  double forward(double x) const;

  /// t'(x) = kappa_nu(x) / kappa_mu(t(x)).
  double derivative(double x) const;

  /// t^{-1}(y) = quantile_nu(cdf_mu(y)).
  double inverse(double y) const;

  /// psi(y) = kappa_nu(t^{-1}(y)) / kappa_mu(y) = t' o t^{-1}(y), the exact
  /// transport weight; compare against closed-form majorants separately.
  double weight(double y) const;

 private:
  DistributionSpec source_;
  DistributionSpec target_;
};

struct KsReport {
  double statistic;
  double threshold;
  std::int64_t sample_count;
  bool pass;
};

/// Draws count samples from the source, applies t, and tests the result
/// against the target cdf at the 1.95/sqrt(count) level.
KsReport pushforward_validate(const TransportMap& map, std::int64_t count,
                              RngStream& stream);

/// sup over a uniform grid on [lo,hi] of psi(y) * inverse_weight(y); the
/// fitted constant that turns a closed-form weight majorant into a bound.
template <class W>
double psi_majorant_sup(const TransportMap& map, W&& inverse_weight, double lo,
                        double hi, int points = 2001) {
  double best = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double y = lo + (hi - lo) * i / points;
    const double v = map.weight(y) * inverse_weight(y);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace superconc
