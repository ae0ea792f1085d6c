#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "superconc/rng.hpp"
#include "superconc/stats.hpp"

namespace superconc {

/// beta = 2 Coulomb gas with radial potential V(t) = t^alpha. Only at
/// beta = 2 do the moduli match independent radii in distribution, so the
/// constructor rejects anything else.
class CoulombSpec {
 public:
  CoulombSpec(std::int64_t n, double alpha, double beta = 2.0);

  std::int64_t n() const { return n_; }
  double alpha() const { return alpha_; }

 private:
  std::int64_t n_;
  double alpha_;
};

/// One gas configuration's moduli: n independent radii, the k-th with
/// density proportional to t^{2k-1} e^{-n t^alpha}.
Eigen::ArrayXd sample_radii(const CoulombSpec& spec, RngStream& stream);

/// max_k R_k for one configuration; radii are drawn sequentially from the
/// given stream.
double sample_max_modulus_one(const CoulombSpec& spec, RngStream& stream);

/// reps i.i.d. copies of the top modulus, sharded over derived streams;
/// workers sets the thread count and never changes the values.
Eigen::ArrayXd sample_max_modulus(const CoulombSpec& spec, std::int64_t reps,
                                  RngStream& stream, int workers = 1);

struct MajorantFit {
  double c_alpha;          // grid sup of (1/kappa) * (n x^{alpha-1} + 1)
  double c_alpha_refined;  // same on the 2x-refined grid
  bool pass;               // finite and <= 5% drift under refinement
};

/// Fits the constant in 1/kappa_{mu_k}(x) <= C_alpha / (n x^{alpha-1} + 1)
/// through the dist_zoo hazard of the CoulombRadius law.
MajorantFit radius_hazard_majorant_check(const CoulombSpec& spec, std::int64_t k,
                                         std::span<const double> grid);

struct CoulombRow {
  std::int64_t n;
  SummaryStats max_stats;
  double var_n_logn;                  // Var * n * log n
  std::optional<double> ks_gumbel;    // only when c_n > 0
  TailFitResult deviation;            // rate of P(sqrt(n log n)(M - mean) >= t)
};

/// Per n: variance of the top modulus with SE, the product Var * n * log n,
/// the KS distance of a_n(M - b_n) to the Gumbel cdf (where the Gumbel renormalizing
/// constants exist), and the fitted exponential deviation rate.
std::vector<CoulombRow> coulomb_variance_experiment(
    double alpha, std::span<const std::int64_t> n_grid, std::int64_t reps,
    std::uint64_t seed, int workers = 1);

}  // namespace superconc
