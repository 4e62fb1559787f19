#include "nlslab/diagnostics_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"

namespace nlslab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s, std::size_t line) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("diagnostics CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

DiagnosticSeries diagnostic_series(const Trajectory& traj) {
  DiagnosticSeries out;
  out.times = traj.times;
  const bool have_snapshots = traj.snapshots.size() == traj.times.size();
  const SolverConfig& cfg = traj.config;
  for (std::size_t c = 1; c < kDiagnosticColumns.size(); ++c) {
    const std::string name = kDiagnosticColumns[c];
    if (auto it = traj.channels.find(name); it != traj.channels.end() && it->second.size() == traj.times.size()) {
      out.channels[name] = it->second;
      continue;
    }
    if (!have_snapshots) throw PreconditionError("trajectory is missing channel " + name + " and snapshots");
    auto& series = out.channels[name];
    for (const auto& u : traj.snapshots) {
      if (name == channel::mass) series.push_back(mass(u));
      else if (name == channel::energy) series.push_back(energy(u));
      else if (name == channel::energy_Iu) series.push_back(modified_energy(u, cfg.N, cfg.s));
      else if (name == channel::l4x) series.push_back(lq_norm(u, 4.0));
      else if (name == channel::hs) series.push_back(sobolev_norm(u, cfg.s, false));
      else series.push_back(sobolev_norm(u, 0.5, true));
    }
  }
  return out;
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticSeries& series) {
  for (std::size_t c = 0; c < kDiagnosticColumns.size(); ++c) out << (c ? "," : "") << kDiagnosticColumns[c];
  out << '\n';
  for (std::size_t c = 1; c < kDiagnosticColumns.size(); ++c) {
    const auto it = series.channels.find(kDiagnosticColumns[c]);
    if (it == series.channels.end() || it->second.size() != series.times.size())
      throw PreconditionError(std::string("diagnostic channel ") + kDiagnosticColumns[c] + " missing or misaligned");
  }
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_double(series.times[i]);
    for (std::size_t c = 1; c < kDiagnosticColumns.size(); ++c)
      out << ',' << format_double(series.channels.at(kDiagnosticColumns[c])[i]);
    out << '\n';
  }
}

DiagnosticSeries read_diagnostics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("diagnostics CSV is empty");
  const auto header = split_csv(line);
  if (header.size() != kDiagnosticColumns.size()) throw FormatError("diagnostics CSV header has wrong column count");
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != kDiagnosticColumns[c]) throw FormatError("diagnostics CSV header mismatch at column '" + header[c] + "'");

  DiagnosticSeries out;
  for (std::size_t c = 1; c < kDiagnosticColumns.size(); ++c) out.channels[kDiagnosticColumns[c]];
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != kDiagnosticColumns.size())
      throw FormatError("diagnostics CSV line " + std::to_string(lineno) + " has wrong column count");
    const double t = parse_double(cells[0], lineno);
    if (!out.times.empty() && !(t > out.times.back()))
      throw FormatError("diagnostics CSV times not strictly increasing at line " + std::to_string(lineno));
    out.times.push_back(t);
    for (std::size_t c = 1; c < cells.size(); ++c)
      out.channels[kDiagnosticColumns[c]].push_back(parse_double(cells[c], lineno));
  }
  return out;
}

std::string partition_to_json(const IntervalPartition& p) {
  nlohmann::ordered_json j;
  j["epsilon"] = p.epsilon;
  j["breakpoints"] = p.breakpoints;
  j["l4"] = p.l4;
  j["over_budget"] = p.over_budget;
  j["layers"] = {{"little_per_big", p.little_per_big}, {"big_breakpoints", p.big_breakpoints()}};
  return j.dump(2);
}

IntervalPartition partition_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    IntervalPartition p;
    p.epsilon = j.at("epsilon").get<double>();
    p.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    p.l4 = j.at("l4").get<std::vector<double>>();
    p.over_budget = j.at("over_budget").get<std::vector<bool>>();
    const auto& layers = j.at("layers");
    p.little_per_big = layers.at("little_per_big").get<std::size_t>();
    const auto big = layers.at("big_breakpoints").get<std::vector<double>>();

    if (p.breakpoints.size() != p.l4.size() + 1 || p.over_budget.size() != p.l4.size())
      throw FormatError("partition arrays have inconsistent lengths");
    for (std::size_t i = 1; i < p.breakpoints.size(); ++i)
      if (p.breakpoints[i] < p.breakpoints[i - 1]) throw FormatError("partition breakpoints not ordered");
    if (p.little_per_big < 1) throw FormatError("partition little_per_big must be >= 1");
    p = group_layers(std::move(p), p.little_per_big);
    if (p.big_breakpoints() != big) throw FormatError("partition big breakpoints are not nested in the little ones");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("partition JSON: ") + e.what());
  }
}

}  // namespace nlslab
