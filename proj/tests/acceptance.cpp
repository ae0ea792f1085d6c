// Acceptance suite: runs every scenario at full scale and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "superconc/bounds.hpp"
#include "superconc/distributions.hpp"
#include "superconc/functionals.hpp"
#include "superconc/rng.hpp"
#include "superconc/scenarios.hpp"
#include "superconc/stats.hpp"

using namespace superconc;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

// Each criterion carries a wall-clock budget; blowing it is a failure too.
void report(int criterion, bool pass, const std::string& what, double seconds,
            double budget_s) {
  pass = pass && seconds < budget_s;
  std::printf("%s  criterion %2d: %s  (%.1fs, budget %.0fs)\n",
              pass ? "PASS" : "FAIL", criterion, what.c_str(), seconds, budget_s);
  std::fflush(stdout);
  if (!pass) ++failures;
}

const ReportRow* find(const std::vector<ReportRow>& rows, std::int64_t n,
                      const std::string& kind) {
  for (const auto& r : rows)
    if (r.n == n && r.kind == kind) return &r;
  return nullptr;
}

std::vector<const ReportRow*> find_all(const std::vector<ReportRow>& rows,
                                       const std::string& kind) {
  std::vector<const ReportRow*> out;
  for (const auto& r : rows)
    if (r.kind == kind) out.push_back(&r);
  return out;
}

ScenarioConfig base_config(Scenario s, std::vector<std::int64_t> grid,
                           std::int64_t reps) {
  ScenarioConfig cfg;
  cfg.scenario = s;
  cfg.n_grid = std::move(grid);
  cfg.reps = reps;
  cfg.seed = 20250808;
  cfg.workers = 2;
  return cfg;
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Uniform max against the closed-form moment oracles.
void criterion_1() {
  const auto t0 = Clock::now();
  const auto rows =
      run_scenario(base_config(Scenario::UniformMaxVariance, {1, 10, 100}, 100000));
  bool ok = true;
  std::string detail;
  for (const std::int64_t n : {1, 10, 100}) {
    const double nn = static_cast<double>(n);
    const double var_oracle = nn / ((nn + 2.0) * (nn + 1.0) * (nn + 1.0));
    const double bound_oracle = 8.0 / ((nn + 1.0) * (nn + 2.0));
    const ReportRow* var = find(rows, n, "var");
    const ReportRow* bound = find(rows, n, "bound");
    ok = ok && var && bound;
    if (!ok) break;
    ok = ok && std::abs(var->value - var_oracle) <= 3.0 * var->se;
    ok = ok && std::abs(bound->value - bound_oracle) <= 3.0 * bound->se;
    ok = ok && bound->pass;
  }
  report(1, ok, "uniform max variance/bound vs n/((n+2)(n+1)^2), 8/((n+1)(n+2))",
         elapsed(t0), 10.0);
}

// 2. Pushforward correctness for the three stock transports.
void criterion_2() {
  const auto t0 = Clock::now();
  const auto rows =
      run_scenario(base_config(Scenario::PushforwardValidate, {1}, 100000));
  bool ok = rows.size() == 3;
  for (const auto& r : rows) ok = ok && r.pass && r.value <= 1.95 / std::sqrt(1e5);
  report(2, ok, "transported samples KS <= 1.95/sqrt(1e5) on all three transports",
         elapsed(t0), 30.0);
}

// 3. Gaussian max rate: Var*(1+log n) ratio <= 3 plus weight-bound dominance.
void criterion_3() {
  const auto t0 = Clock::now();
  const auto rows = run_scenario(base_config(
      Scenario::GaussianMaxVariance, {16, 64, 256, 1024, 4096, 16384, 65536}, 10000));
  const ReportRow* ratio = find(rows, 0, "product_ratio");
  bool ok = ratio && ratio->pass && ratio->value <= 3.0;
  for (const auto* b : find_all(rows, "bound")) ok = ok && b->pass;
  report(3, ok, "Var(M_n)(1+log n) max/min <= 3 and gaussian weight bound dominates",
         elapsed(t0), 300.0);
}

// 4. Median rate: Var(Med)*n ratio <= 3 on odd n.
void criterion_4() {
  const auto t0 = Clock::now();
  const auto rows = run_scenario(
      base_config(Scenario::GaussianMedianVariance, {101, 1001, 10001}, 10000));
  const ReportRow* ratio = find(rows, 0, "product_ratio");
  const bool ok = ratio && ratio->pass && ratio->value <= 3.0;
  report(4, ok, "Var(Med)*n max/min <= 3 over {101, 1001, 10001}", elapsed(t0),
         180.0);
}

// 5. Alpha-potential rate at alpha = 3: Var*(log n)^{4/3} ratio <= 3.
void criterion_5() {
  const auto t0 = Clock::now();
  auto cfg = base_config(Scenario::AlphaMaxVariance,
                         {16, 64, 256, 1024, 4096, 16384, 65536}, 10000);
  cfg.alpha = 3.0;
  const auto rows = run_scenario(cfg);
  const ReportRow* ratio = find(rows, 0, "product_ratio");
  const bool ok = ratio && ratio->pass && ratio->value <= 3.0;
  report(5, ok, "alpha=3: Var(M_n)(log n)^{4/3} max/min <= 3", elapsed(t0), 300.0);
}

// 6. lp rate with p = 2 ceil(log n), plus the chi-limit Var(||X||_2) -> 1/2.
void criterion_6() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::vector<std::int64_t> grid = {1 << 8, 1 << 12, 1 << 16};
  std::vector<double> products;
  const ReportRow* l2_at_big = nullptr;
  std::vector<ReportRow> all_rows;
  for (const std::int64_t n : grid) {
    auto cfg = base_config(Scenario::LpNormVariance, {n}, 10000);
    cfg.p = 2.0 * std::ceil(std::log(static_cast<double>(n)));  // per the criterion
    const auto rows = run_scenario(cfg);
    const ReportRow* var = find(rows, n, "var");
    ok = ok && var;
    if (var) products.push_back(var->value * std::log(static_cast<double>(n)));
    for (const auto& r : rows) all_rows.push_back(r);
  }
  if (products.size() == 3) {
    const double hi = std::max({products[0], products[1], products[2]});
    const double lo = std::min({products[0], products[1], products[2]});
    ok = ok && hi / lo <= 3.0;
  } else {
    ok = false;
  }
  for (const auto& r : all_rows)
    if (r.kind == "var_l2" && r.n == (1 << 16)) l2_at_big = &r;
  ok = ok && l2_at_big && std::abs(l2_at_big->value - 0.5) <= 3.0 * l2_at_big->se;
  report(6, ok, "Var(||X||_p) log n max/min <= 3 and Var(||X||_2) = 1/2 at n=2^16",
         elapsed(t0), 300.0);
}

// 7. Gaussian max deviation: fitted right-tail rate grows like sqrt(log n).
void criterion_7() {
  const auto t0 = Clock::now();
  const auto rows = run_scenario(
      base_config(Scenario::GaussianMaxDeviation, {1 << 8, 1 << 16}, 100000));
  const ReportRow* ratio = find(rows, 0, "rate_ratio");
  const double floor = 0.8 * std::sqrt(std::log(static_cast<double>(1 << 16)) /
                                       std::log(static_cast<double>(1 << 8)));
  const bool ok = ratio && ratio->value >= floor && ratio->pass;
  report(7, ok, "deviation rate c(2^16)/c(2^8) >= 0.8 sqrt(log ratio) = " +
                    std::to_string(floor),
         elapsed(t0), 300.0);
}

// 8. Coulomb gas: Var*n*log n ratio <= 4, Gumbel KS decreasing, c_hat > 0.
void criterion_8() {
  const auto t0 = Clock::now();
  auto cfg = base_config(Scenario::CoulombMax, {100, 1000, 10000}, 10000);
  cfg.alpha = 2.0;
  const auto rows = run_scenario(cfg);
  const ReportRow* ratio = find(rows, 0, "product_ratio");
  bool ok = ratio && ratio->pass && ratio->value <= 4.0;
  // KS strictly decreasing where the Gumbel constants exist (c_n > 0
  // fails at n = 100, so the comparison runs over {1000, 10000}).
  const auto ks = find_all(rows, "ks_gumbel");
  ok = ok && ks.size() >= 2;
  for (std::size_t i = 0; ok && i + 1 < ks.size(); ++i)
    ok = ok && ks[i + 1]->value < ks[i]->value;
  for (const auto* r : find_all(rows, "dev_rate")) ok = ok && r->value > 0.0;
  report(8, ok, "coulomb: Var n log n max/min <= 4, Gumbel KS decreasing, c_hat > 0",
         elapsed(t0), 300.0);
}

// 9. Inequality suite: Harris, Laplace, partition identity, lp gradients.
void criterion_9() {
  const auto t0 = Clock::now();
  bool ok = true;

  RngStream harris_stream(20250808, 900);
  ok = ok && harris_check(DistributionSpec::std_gaussian(), 64, 20000, harris_stream).pass;

  RngStream laplace_stream(20250808, 901);
  const Eigen::ArrayXd gauss =
      sample(DistributionSpec::std_gaussian(), laplace_stream, 100000);
  const double theta_grid[] = {0.05, 0.1, 0.2, 0.3, 0.45};
  for (const auto& c : laplace_hypothesis_check(gauss, 1.0, theta_grid))
    ok = ok && c.pass;
  const SummaryStats gs = mean_var_se(gauss);
  const double small_grid[] = {0.05, 0.1};
  const auto failing = laplace_hypothesis_check(gauss, 0.5 * gs.variance, small_grid);
  ok = ok && !failing[0].pass;  // K below the variance must fail at small theta

  RngStream part_stream(20250808, 902);
  const Functional max_f = Functional::max(32);
  Eigen::ArrayXd x(32);
  for (int rep = 0; rep < 10000 && ok; ++rep) {
    sample_fill(DistributionSpec::std_gaussian(), part_stream, x);
    ok = ok && max_f.gradient(x).sum() == 1.0;
  }

  RngStream grad_stream(20250808, 903);
  const double h = 1e-5;
  for (const double p : {2.0, 3.0, 8.0}) {
    const Functional f = Functional::lp_norm(12, p);
    Eigen::ArrayXd y(12);
    for (int rep = 0; rep < 25 && ok; ++rep) {
      sample_fill(DistributionSpec::std_gaussian(), grad_stream, y);
      const Eigen::ArrayXd g = f.gradient(y);
      for (Eigen::Index i = 0; i < 12 && ok; ++i) {
        Eigen::ArrayXd hi_x = y, lo_x = y;
        hi_x[i] += h;
        lo_x[i] -= h;
        const double fd = (f(hi_x) - f(lo_x)) / (2.0 * h);
        ok = ok && std::abs(g[i] - fd) <= 1e-6 * std::max(1.0, std::abs(fd));
      }
    }
  }
  report(9, ok, "Harris + Laplace (K=1 passes, K=Var/2 fails) + partition + lp gradients",
         elapsed(t0), 60.0);
}

// 10. Gamma max tails: linear right log-tail, double-exponential left tail.
void criterion_10() {
  const auto t0 = Clock::now();
  auto cfg = base_config(Scenario::GammaMaxTails, {10000}, 100000);
  cfg.shape = 1.0;
  const auto rows = run_scenario(cfg);
  const ReportRow* right_rate = find(rows, 10000, "right_rate");
  const ReportRow* right_r2 = find(rows, 10000, "right_r2");
  const ReportRow* left_slope = find(rows, 10000, "left_slope");
  const bool ok = right_rate && right_rate->value > 0.0 && right_r2 &&
                  right_r2->value >= 0.98 && left_slope && left_slope->value > 0.0;
  report(10, ok, "gamma max: right log-tail R^2 >= 0.98, left loglog slope > 0",
         elapsed(t0), 120.0);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed (total %.1fs)\n", 10 - failures, elapsed(t0));
  return failures;
}
