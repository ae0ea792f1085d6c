#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superconc {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {0.129484966168870, 0.279705391489277,
                                    0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = gk_wk[7] * fc;
  double gauss = gk_wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * gk_nodes[j];
    const double fsum = f(c - x) + f(c + x);
    kron += gk_wk[j] * fsum;
    if (j % 2 == 1) gauss += gk_wg[j / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over the finite interval [a,b],
/// bisecting until the summed error estimate is below abs_tol.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
  if (!(b > a)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate: requires a < b");
  }
  struct Seg {
    double a, b, value, err;
  };
  auto eval = [&](double lo, double hi) {
    auto [v, e] = detail::gk15(f, lo, hi);
    return Seg{lo, hi, v, e};
  };
  std::vector<Seg> segs{eval(a, b)};
  for (int round = 0; round < 4000; ++round) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    if (total_err <= abs_tol) break;
    const Seg s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) break;  // interval exhausted
    segs[worst] = eval(s.a, mid);
    segs.push_back(eval(mid, s.b));
  }
  double sum = 0.0;
  for (const auto& s : segs) sum += s.value;
  return sum;
}

/// log of the integral of exp(log_f) over [a,b], evaluated in a shifted log
/// domain so that strongly peaked integrands (large-k Coulomb normalizers)
/// do not underflow. peak is a point near the maximum of log_f.
template <class F>
double log_integrate_exp(F&& log_f, double a, double b, double peak,
                         double abs_tol = 1e-13) {
  double m = log_f(peak);
  const int scan = 256;
  for (int i = 0; i <= scan; ++i) {
    const double x = a + (b - a) * i / scan;
    m = std::max(m, log_f(x));
  }
  auto g = [&](double x) { return std::exp(log_f(x) - m); };
  const double integral = integrate(g, a, b, abs_tol);
  return m + std::log(integral);
}

}  // namespace superconc
