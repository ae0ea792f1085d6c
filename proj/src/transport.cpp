#include "superconc/transport.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "superconc/stats.hpp"

namespace superconc {

namespace {

// A closed, finite left endpoint with positive density (exponential at 0,
// uniform at 0) is admitted; everything else outside the open support is not.
void require_in_support(const DistributionSpec& spec, double x, const char* what) {
  const Interval sup = spec.support();
  if (!(x >= sup.lo && x < sup.hi))
    throw std::domain_error(std::string(what) + ": point outside the support of " +
                            spec.name());
}

}  // namespace

TransportMap::TransportMap(DistributionSpec source, DistributionSpec target)
    : source_(std::move(source)), target_(std::move(target)) {}

double TransportMap::forward(double x) const {
  require_in_support(source_, x, "transport forward");
  const double p = cdf(source_, x);
  if (p <= 0.5) {
    if (p <= 0.0) {
      const double lo = target_.support().lo;
      if (std::isfinite(lo)) return lo;  // continuous extension at the endpoint
      throw std::domain_error("transport forward: cdf vanishes at x");
    }
    return quantile(target_, p);
  }
  const double q = survival(source_, x);
  if (q <= 0.0) throw std::domain_error("transport forward: survival underflow");
  return cquantile(target_, q);
}

double TransportMap::derivative(double x) const {
  const double y = forward(x);
  const double km = hazard(target_, y);
  if (!(km > 0.0) || !std::isfinite(km))
    throw std::runtime_error("transport derivative: singular at t(x), target density vanishes");
  return hazard(source_, x) / km;
}

double TransportMap::inverse(double y) const {
  require_in_support(target_, y, "transport inverse");
  const double p = cdf(target_, y);
  if (p <= 0.5) {
    if (p <= 0.0) {
      const double lo = source_.support().lo;
      if (std::isfinite(lo)) return lo;
      throw std::domain_error("transport inverse: cdf vanishes at y");
    }
    return quantile(source_, p);
  }
  const double q = survival(target_, y);
  if (q <= 0.0) throw std::domain_error("transport inverse: survival underflow");
  return cquantile(source_, q);
}

double TransportMap::weight(double y) const {
  const double x = inverse(y);
  const double km = hazard(target_, y);
  if (!(km > 0.0) || !std::isfinite(km))
    throw std::runtime_error("transport weight: target hazard vanishes");
  return hazard(source_, x) / km;
}

KsReport pushforward_validate(const TransportMap& map, std::int64_t count,
                              RngStream& stream) {
  if (count < 1000)
    throw std::invalid_argument("pushforward_validate: count must be >= 1000");
  Eigen::ArrayXd xs = sample(map.source(), stream, count);
  for (Eigen::Index i = 0; i < xs.size(); ++i) xs[i] = map.forward(xs[i]);
  const DistributionSpec& mu = map.target();
  const double d =
      ks_statistic(xs, [&mu](double y) { return cdf(mu, y); });
  const double threshold = 1.95 / std::sqrt(static_cast<double>(count));
  return {d, threshold, count, d <= threshold};
}

}  // namespace superconc
