#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace superconc {

enum class Scenario {
  GaussianMaxVariance,
  GaussianMedianVariance,
  UniformMaxVariance,
  BetaMaxMajorant,
  AlphaMaxVariance,
  LpNormVariance,
  GaussianMaxDeviation,
  AbsGaussianMaxDeviation,
  GammaMaxTails,
  CoulombMax,
  PushforwardValidate,
  HarrisSanity,
};

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// One catalog line per scenario: name, parameters, what it measures.
std::vector<std::string> scenario_catalog();

enum class ReportFormat { Csv, JsonLines };

/// Declarative experiment description. Statistics are a pure function of
/// (scenario, n_grid, reps, seed, scenario parameters); workers only picks
/// the number of threads executing the 64 fixed logical shards.
struct ScenarioConfig {
  Scenario scenario = Scenario::HarrisSanity;
  std::vector<std::int64_t> n_grid;  // empty -> scenario default
  std::int64_t reps = 10000;
  std::uint64_t seed = 12345;
  double alpha = 0.0;   // 0 -> scenario default (alpha-max 3, coulomb 2, beta a 2)
  double p = 0.0;       // lp exponent; 0 -> auto: ceil(lp_auto_c * log n)
  double shape = 0.0;   // gamma shape (default 1); beta b (default 3)
  double lp_auto_c = 2.0;
  std::string source;   // pushforward-validate; empty -> the three stock transports
  std::string target;
  int workers = 1;
  std::string out_path;  // empty -> stdout
  ReportFormat format = ReportFormat::Csv;
};

/// CSV schema: scenario,n,param,kind,value,se,fit_constant,pass,seed,reps,wall_ms.
/// Values are serialized with 17 significant digits, so re-reading a report
/// reproduces every number bit-exactly.
struct ReportRow {
  std::string scenario;
  std::int64_t n = 0;
  double param = 0.0;
  std::string kind;
  double value = 0.0;
  double se = 0.0;
  double fit_constant = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::int64_t reps = 0;
  double wall_ms = 0.0;
};

std::vector<ReportRow> run_scenario(const ScenarioConfig& config);

bool all_pass(const std::vector<ReportRow>& rows);

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 std::ostream& out);
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::string& path);

std::vector<ReportRow> read_report_csv(std::istream& in);
std::vector<ReportRow> read_report_json_lines(std::istream& in);

}  // namespace superconc
