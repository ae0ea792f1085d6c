#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace superconc {

/// n-variate functional with an almost-everywhere gradient. The indicator
/// kinds (max, |max|, order statistic, median) have 0/1 gradients supported
/// on the single achieving coordinate; ties break to the lowest index.
class Functional {
 public:
  enum class Kind { Max, AbsMax, OrderStat, Median, LpNorm };

  static Functional max(Eigen::Index n);
  static Functional abs_max(Eigen::Index n);
  /// k-th largest coordinate, 1-based from the top (order_stat(n,1) == max).
  static Functional order_stat(Eigen::Index n, Eigen::Index k);
  /// Middle order statistic for odd n, the lower median for even n.
  static Functional median(Eigen::Index n);
  static Functional lp_norm(Eigen::Index n, double p);

  Kind kind() const { return kind_; }
  Eigen::Index dimension() const { return n_; }
  double p() const { return p_; }
  Eigen::Index order() const { return k_; }
  bool is_indicator() const { return kind_ != Kind::LpNorm; }

  double operator()(Eigen::Ref<const Eigen::ArrayXd> x) const;

  /// For indicator kinds: the coordinate carrying the gradient.
  Eigen::Index achieving_index(Eigen::Ref<const Eigen::ArrayXd> x) const;

  Eigen::ArrayXd gradient(Eigen::Ref<const Eigen::ArrayXd> x) const;
  void gradient(Eigen::Ref<const Eigen::ArrayXd> x, Eigen::ArrayXd& out) const;

 private:
  Functional(Kind kind, Eigen::Index n, Eigen::Index k, double p);

  Kind kind_;
  Eigen::Index n_;
  Eigen::Index k_ = 0;  // OrderStat / Median rank from the top
  double p_ = 0.0;      // LpNorm exponent
};

}  // namespace superconc
