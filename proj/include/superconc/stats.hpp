#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "superconc/rng.hpp"

namespace superconc {

namespace dd {

/// Unevaluated double-double sum; keeps ~32 significant digits so that
/// shard merges reproduce single-pass accumulation after final rounding.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD two_sum(double a, double b);
DD quick_two_sum(double a, double b);
DD two_prod(double a, double b);
DD add(DD x, double y);
DD add(DD x, DD y);
DD sub(DD x, DD y);
DD mul(DD x, double y);
DD mul(DD x, DD y);
DD div(DD x, double y);
inline double value(DD x) { return x.hi + x.lo; }

}  // namespace dd

struct SummaryStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;  // fourth-central-moment formula
  bool se_variance_stable = true;
};

/// Streaming moments with an associative merge. Raw power sums are held in
/// compensated double-double arithmetic, so merging per-shard accumulators in
/// any grouping reproduces the single-pass result.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::int64_t count() const { return n_; }
  double mean() const;
  double variance() const;  // unbiased
  double min() const { return min_; }
  double max() const { return max_; }
  SummaryStats summary() const;

 private:
  std::int64_t n_ = 0;
  dd::DD s1_, s2_, s3_, s4_;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

SummaryStats mean_var_se(Eigen::Ref<const Eigen::ArrayXd> xs);

/// Standard error of the sample variance by resampling; fallback for samples
/// whose kurtosis estimate is too unstable for the moment formula.
double bootstrap_variance_se(Eigen::Ref<const Eigen::ArrayXd> xs, int resamples,
                             RngStream& stream);

struct TailPoint {
  double threshold;
  double survival;
  double se;  // binomial
};

std::vector<TailPoint> empirical_tail(Eigen::Ref<const Eigen::ArrayXd> xs,
                                      std::span<const double> thresholds);

/// sup distance between the empirical cdf of xs and the reference cdf,
/// evaluated with both one-sided gaps at every sample point.
double ks_statistic(Eigen::Ref<const Eigen::ArrayXd> xs,
                    const std::function<double(double)>& cdf);

enum class ExtremeKind { GaussianMax, AlphaMax, CoulombMax };

struct RenormConstants {
  double a_n;                    // scale
  double b_n;                    // location
  std::optional<double> c_n;     // Coulomb auxiliary
};

/// Renormalizing constants making max statistics converge to the Gumbel law.
/// alpha parameterizes AlphaMax / CoulombMax and is ignored for GaussianMax.
/// Throws when n is too small for the logs involved to be positive.
RenormConstants gumbel_constants(ExtremeKind kind, std::int64_t n,
                                 double alpha = 2.0);

inline double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

enum class RateModel { InverseLog, PowerLaw, InverseNLogN, InverseLogPower };

struct RateFit {
  double constant;
  double exponent;  // PowerLaw only; otherwise the fixed model exponent/power
  double max_rel_residual;
};

/// Least-squares fit of estimate ~ c * model(n) in log space; PowerLaw fits
/// the exponent as well. Needs >= 3 grid points and positive estimates.
RateFit rate_fit(std::span<const std::int64_t> ns,
                 std::span<const double> estimates, RateModel model,
                 double log_power_q = 1.0);

/// (threshold, survival) profile of the upper tail of xs between the
/// survival levels s_upper and s_lower (s_upper > s_lower).
std::vector<TailPoint> tail_profile(Eigen::Ref<const Eigen::ArrayXd> xs,
                                    double s_upper, double s_lower, int points);

struct TailFitResult {
  double rate = 0.0;       // slope magnitude
  double intercept = 0.0;
  double r_squared = 0.0;
  double rate_se = 0.0;
  int points = 0;
};

/// Weighted LS of log survival ~ intercept - rate * t (exponential tail).
TailFitResult fit_exponential_tail(const std::vector<TailPoint>& profile);

/// Weighted LS of log(-log survival) ~ intercept + rate * t (double
/// exponential signature; positive rate means the tail decays like e^{-e^t}).
TailFitResult fit_double_exponential_tail(const std::vector<TailPoint>& profile);

}  // namespace superconc
