#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "superconc/scenarios.hpp"

namespace superconc {

namespace {

constexpr const char* kHeader =
    "scenario,n,param,kind,value,se,fit_constant,pass,seed,reps,wall_ms";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.n << ',' << format_double(r.param) << ','
        << r.kind << ',' << format_double(r.value) << ',' << format_double(r.se)
        << ',' << format_double(r.fit_constant) << ',' << (r.pass ? 1 : 0) << ','
        << r.seed << ',' << r.reps << ',' << format_double(r.wall_ms) << '\n';
  }
}

void emit_json_lines(const std::vector<ReportRow>& rows, std::ostream& out) {
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["n"] = r.n;
    j["param"] = r.param;
    j["kind"] = r.kind;
    j["value"] = r.value;
    j["se"] = r.se;
    j["fit_constant"] = r.fit_constant;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["reps"] = r.reps;
    j["wall_ms"] = r.wall_ms;
    out << j.dump() << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::Csv)
    emit_csv(rows, out);
  else
    emit_json_lines(rows, out);
  if (!out) throw std::runtime_error("emit_report: stream write failed");
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
  emit_report(rows, format, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write to '" + path + "' failed");
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_report_csv: empty input");
  if (line != kHeader)
    throw std::runtime_error("read_report_csv: unexpected header: " + line);
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11)
      throw std::runtime_error("read_report_csv: malformed row: " + line);
    ReportRow r;
    r.scenario = f[0];
    r.n = std::stoll(f[1]);
    r.param = std::strtod(f[2].c_str(), nullptr);
    r.kind = f[3];
    r.value = std::strtod(f[4].c_str(), nullptr);
    r.se = std::strtod(f[5].c_str(), nullptr);
    r.fit_constant = std::strtod(f[6].c_str(), nullptr);
    r.pass = f[7] == "1";
    r.seed = std::stoull(f[8]);
    r.reps = std::stoll(f[9]);
    r.wall_ms = std::strtod(f[10].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> read_report_json_lines(std::istream& in) {
  std::vector<ReportRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    ReportRow r;
    r.scenario = j.at("scenario").get<std::string>();
    r.n = j.at("n").get<std::int64_t>();
    r.param = j.at("param").get<double>();
    r.kind = j.at("kind").get<std::string>();
    r.value = j.at("value").get<double>();
    r.se = j.at("se").get<double>();
    r.fit_constant = j.at("fit_constant").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.reps = j.at("reps").get<std::int64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace superconc
