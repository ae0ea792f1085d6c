#include "superconc/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace superconc {

namespace {

void check_dimension(Eigen::Index expected, Eigen::Index got) {
  if (expected != got)
    throw std::invalid_argument("functional: dimension mismatch");
}

// Value of the k-th largest entry (1-based).
double kth_largest(Eigen::Ref<const Eigen::ArrayXd> x, Eigen::Index k) {
  std::vector<double> buf(x.data(), x.data() + x.size());
  std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end(),
                   std::greater<double>());
  return buf[k - 1];
}

}  // namespace

Functional::Functional(Kind kind, Eigen::Index n, Eigen::Index k, double p)
    : kind_(kind), n_(n), k_(k), p_(p) {
  if (n < 1) throw std::invalid_argument("functional: dimension must be >= 1");
}

Functional Functional::max(Eigen::Index n) { return {Kind::Max, n, 1, 0.0}; }

Functional Functional::abs_max(Eigen::Index n) {
  return {Kind::AbsMax, n, 1, 0.0};
}

Functional Functional::order_stat(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("order_stat: rank must lie in [1, n]");
  return {Kind::OrderStat, n, k, 0.0};
}

Functional Functional::median(Eigen::Index n) {
  const Eigen::Index k = (n % 2 == 1) ? (n + 1) / 2 : n / 2 + 1;
  return {Kind::Median, n, k, 0.0};
}

Functional Functional::lp_norm(Eigen::Index n, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  return {Kind::LpNorm, n, 0, p};
}

double Functional::operator()(Eigen::Ref<const Eigen::ArrayXd> x) const {
  check_dimension(n_, x.size());
  switch (kind_) {
    case Kind::Max:
      return x.maxCoeff();
    case Kind::AbsMax:
      return x.abs().maxCoeff();
    case Kind::OrderStat:
    case Kind::Median:
      return kth_largest(x, k_);
    case Kind::LpNorm: {
      const double m = x.abs().maxCoeff();
      if (m == 0.0) return 0.0;
      return m * std::pow((x.abs() / m).pow(p_).sum(), 1.0 / p_);
    }
  }
  return 0.0;
}

Eigen::Index Functional::achieving_index(Eigen::Ref<const Eigen::ArrayXd> x) const {
  check_dimension(n_, x.size());
  switch (kind_) {
    case Kind::Max: {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < n_; ++i)
        if (x[i] > x[best]) best = i;
      return best;
    }
    case Kind::AbsMax: {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < n_; ++i)
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
      return best;
    }
    case Kind::OrderStat:
    case Kind::Median: {
      const double v = kth_largest(x, k_);
      for (Eigen::Index i = 0; i < n_; ++i)
        if (x[i] == v) return i;
      return 0;
    }
    case Kind::LpNorm:
      throw std::domain_error("achieving_index: lp norm has a dense gradient");
  }
  return 0;
}

Eigen::ArrayXd Functional::gradient(Eigen::Ref<const Eigen::ArrayXd> x) const {
  Eigen::ArrayXd g(n_);
  gradient(x, g);
  return g;
}

void Functional::gradient(Eigen::Ref<const Eigen::ArrayXd> x,
                          Eigen::ArrayXd& out) const {
  check_dimension(n_, x.size());
  out.resize(n_);
  if (kind_ != Kind::LpNorm) {
    out.setZero();
    out[achieving_index(x)] = 1.0;
    return;
  }
  const double norm = (*this)(x);
  if (norm == 0.0)
    throw std::runtime_error("gradient: lp norm gradient undefined at the origin");
  for (Eigen::Index i = 0; i < n_; ++i) {
    const double r = std::abs(x[i]) / norm;
    const double mag = std::pow(r, p_ - 1.0);
    out[i] = x[i] >= 0.0 ? mag : -mag;
  }
}

}  // namespace superconc
