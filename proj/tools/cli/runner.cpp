#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nlslab/checkpoint.hpp"
#include "nlslab/diagnostics_io.hpp"
#include "nlslab/error.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/partition.hpp"
#include "nlslab/random_field.hpp"
#include "nlslab/report.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/version.hpp"

namespace nlslab::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read back " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// All artifact writes go through here, one at a time, from the calling thread.
class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void text(const std::string& name, const std::string& kind, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw Error("failed writing " + path.string());
    artifacts_.push_back({path, kind});
  }

  void checkpoint(const std::string& name, const SpectralField& f, double t) {
    const fs::path path = dir_ / name;
    save_checkpoint(path, f, t);
    artifacts_.push_back({path, "checkpoint"});
  }

  const fs::path& dir() const noexcept { return dir_; }
  std::vector<Artifact>& artifacts() noexcept { return artifacts_; }

 private:
  fs::path dir_;
  std::vector<Artifact> artifacts_;
};

Grid make_grid(const RunConfig& c) { return Grid::make(c.dim, c.n, c.box_length); }

SolverConfig solver_config(const RunConfig& c, const Grid& g) {
  SolverConfig s;
  s.grid = g;
  s.dt = c.dt;
  s.t_end = c.t_end;
  s.snapshot_stride = c.stride;
  s.nonlinearity_on = c.nonlinear;
  s.s = c.s;
  s.N = c.N;
  s.epsilon = c.epsilon;
  return s;
}

std::optional<RandomFieldSpec> random_spec(const RunConfig& c) {
  RandomFieldSpec spec;
  if (c.data == DataKind::Sobolev) {
    spec.support = SobolevDecay{c.data_s, c.margin};
  } else if (c.data == DataKind::Annulus) {
    spec.support = Annulus{c.annulus_lo, c.annulus_hi};
  } else {
    return std::nullopt;
  }
  spec.amplitude = c.amplitude;
  spec.seed = c.seed;
  spec.phases = c.focused ? PhaseMode::Focused : PhaseMode::Random;
  spec.envelope_width = c.envelope;
  return spec;
}

SpectralField initial_data(const RunConfig& c, const Grid& g) {
  if (const auto spec = random_spec(c)) return make_random_field(g, *spec);
  switch (c.data) {
    case DataKind::Gaussian:
      return gaussian_bump(g, c.amplitude, c.width, c.mode);
    case DataKind::Plane:
      return plane_wave(g, c.amplitude, c.mode);
    case DataKind::Checkpoint: {
      Checkpoint ck = load_checkpoint(c.checkpoint_path);
      if (!(ck.field.grid() == g))
        throw PreconditionError("checkpoint " + c.checkpoint_path + " is on a different grid than grid.*");
      return as_physical(std::move(ck.field));
    }
    default:
      return SpectralField(g, Repr::Physical);
  }
}

int trials_or(const RunConfig& c, int fallback) { return c.trials > 0 ? c.trials : fallback; }

int workers(const RunConfig& c) { return c.workers > 0 ? c.workers : default_workers(); }

std::string diagnostics_csv(const Trajectory& traj) {
  std::ostringstream ss;
  write_diagnostics_csv(ss, diagnostic_series(traj));
  return ss.str();
}

EstimateReport scattering_report(const ScatteringProfile& prof, double tail_start, double t_end) {
  EstimateReport r;
  r.name = "scattering";
  const double start = prof.residuals.front();
  double late = prof.residuals.back();
  for (std::size_t i = 0; i < prof.residual_times.size(); ++i) {
    if (prof.residual_times[i] >= 0.9 * t_end - 1e-9) {
      late = prof.residuals[i];
      break;
    }
  }
  for (std::size_t i = 0; i < prof.residual_times.size(); ++i) {
    SweepPoint p;
    p.params = {{"t", prof.residual_times[i]}};
    p.lhs = prof.residuals[i];
    p.rhs = start;
    p.ratio = start > 0.0 ? prof.residuals[i] / start : 0.0;
    r.points.push_back(std::move(p));
  }
  r.set_metric("route_difference", prof.route_difference);
  r.set_metric("tail_start", tail_start);
  r.set_metric("residual_tail_start", start);
  r.set_metric("residual_late", late);
  r.set_metric("tail_ratio", start > 0.0 ? late / start : 0.0);
  r.band = {0.0, 1.0, "tail_ratio"};
  r.evaluate();
  return r;
}

void validate_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("report CSV is empty");
  std::vector<std::string> header;
  for (std::stringstream ss(line); std::getline(ss, line, ',');) header.push_back(line);
  const std::size_t k = header.size();
  if (k < 3 || header[k - 3] != "lhs" || header[k - 2] != "rhs" || header[k - 1] != "ratio")
    throw FormatError("report CSV header must end with lhs,rhs,ratio");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != k) throw FormatError("report CSV row " + std::to_string(row) + " has wrong column count");
    for (std::size_t i = 0; i < k; ++i) {
      if (cells[i].empty() && i + 3 < k) continue;  // parameter absent at this point
      if (cells[i] == "nan" || cells[i] == "inf" || cells[i] == "-inf") continue;
      std::size_t used = 0;
      try {
        std::stod(cells[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[i].size())
        throw FormatError("report CSV row " + std::to_string(row) + " has a non-numeric cell");
    }
  }
}

void validate_manifest(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  for (const char* key : {"tool", "version", "experiment", "seed", "created_utc", "config", "config_text", "symbols",
                          "versions", "artifacts", "exit_code"})
    if (!j.contains(key)) throw FormatError(std::string("manifest lacks '") + key + "'");
  for (const char* key : {"smooth_step", "phi", "m"})
    if (!j["symbols"].contains(key)) throw FormatError(std::string("manifest symbols lack '") + key + "'");
  if (!j["artifacts"].is_array()) throw FormatError("manifest artifacts must be an array");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string manifest_json(const RunConfig& c, const RunResult& result) {
  ojson j;
  j["tool"] = "nlslab";
  j["version"] = version();
  j["experiment"] = std::string(experiment_name(c.experiment));
  j["seed"] = c.seed;
  j["created_utc"] = utc_timestamp();
  ojson cfg = ojson::object();
  const std::string text = to_text(c);
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = cfg;
  j["config_text"] = text;
  j["symbols"] = {{"smooth_step", kSmoothStepDefinition}, {"phi", kCutoffDefinition}, {"m", kSymbolMDefinition}};
  j["versions"] = {{"nlslab", version()},
                   {"fftw", fft_library_version()},
                   {"compiler", __VERSION__},
                   {"cxx_standard", static_cast<long>(__cplusplus)}};
  ojson arts = ojson::array();
  for (const auto& a : result.artifacts) arts.push_back({{"path", a.path.filename().string()}, {"kind", a.kind}});
  j["artifacts"] = arts;
  j["pass"] = result.pass ? ojson(*result.pass) : ojson(nullptr);
  j["exit_code"] = result.exit_code;
  return j.dump(2);
}

void write_report(Writer& w, const RunConfig& c, const EstimateReport& r) {
  if (c.format != OutputFormat::Csv) w.text("report.json", "report_json", to_json(r));
  if (c.format != OutputFormat::Json) w.text("report.csv", "report_csv", to_csv(r));
}

std::string describe_verdict(const EstimateReport& r) {
  std::ostringstream ss;
  ss << r.name << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.band.subject << " = " << r.banded_value()
     << ", band [" << r.band.lo << ", " << r.band.hi << "])";
  return ss.str();
}

}  // namespace

void validate_artifact(const Artifact& a) {
  const std::string where = a.path.filename().string();
  try {
    if (a.kind == "checkpoint") {
      load_checkpoint(a.path);
      return;
    }
    const std::string text = read_file(a.path);
    if (a.kind == "diagnostics_csv") {
      std::istringstream in(text);
      read_diagnostics_csv(in);
    } else if (a.kind == "report_json") {
      if (to_json(report_from_json(text)) != text) throw FormatError("report JSON does not round-trip");
    } else if (a.kind == "report_csv") {
      validate_report_csv(text);
    } else if (a.kind == "partition_json") {
      if (partition_to_json(partition_from_json(text)) != text) throw FormatError("partition JSON does not round-trip");
    } else if (a.kind == "manifest") {
      validate_manifest(text);
    } else {
      throw FormatError("unknown artifact kind " + a.kind);
    }
  } catch (const FormatError& e) {
    throw FormatError("schema validation failed for " + where + ": " + e.what());
  }
}

std::string error_json(const std::string& kind, const std::string& message) {
  ojson j;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j.dump(2);
}

RunResult run(const RunConfig& c, std::ostream& log) {
  validate(c);
  const Grid g = make_grid(c);
  Writer w(c.out);
  RunResult result;
  std::optional<EstimateReport> report;

  switch (c.experiment) {
    case Experiment::Simulate: {
      const SolverConfig sc = solver_config(c, g);
      std::optional<SpectralField> last;
      EvolveOptions eo;
      eo.store_snapshots = false;
      eo.observer = [&](double, const SpectralField& u) { last = u; };
      const Trajectory traj = evolve(sc, initial_data(c, g), eo);
      w.text("diagnostics.csv", "diagnostics_csv", diagnostics_csv(traj));
      if (c.write_checkpoint) w.checkpoint("final.ckpt", *last, traj.t_final());
      log << "simulate: " << traj.steps_taken << " steps, max relative mass drift " << traj.max_step_mass_drift
          << '\n';
      break;
    }
    case Experiment::Partition: {
      const SolverConfig sc = solver_config(c, g);
      EvolveOptions eo;
      eo.store_snapshots = false;
      const Trajectory traj = evolve(sc, initial_data(c, g), eo);
      const std::size_t per_big =
          c.little_per_big > 0 ? static_cast<std::size_t>(c.little_per_big) : default_little_per_big(c.N);
      const IntervalPartition p = double_layer_partition(traj, c.epsilon, per_big, 0.0, c.t_end);
      w.text("diagnostics.csv", "diagnostics_csv", diagnostics_csv(traj));
      w.text("partition.json", "partition_json", partition_to_json(p));
      log << "partition: " << p.interval_count() << " little / " << p.big_count() << " big intervals at epsilon "
          << c.epsilon << '\n';
      break;
    }
    case Experiment::VerifyI: {
      IOperatorBoundsOptions o;
      o.seed = c.seed;
      o.margin = c.margin;
      o.M_over_N = c.M_over_N;
      o.stability_band = c.stability_band;
      o.workers = workers(c);
      report = verify_i_operator_bounds(g, c.N_list, c.s, trials_or(c, 100), o);
      break;
    }
    case Experiment::Strichartz: {
      const auto spec = random_spec(c);
      if (!spec) throw PreconditionError("strichartz needs random data: data.kind = sobolev or annulus");
      StrichartzOptions o;
      o.pairs = c.pairs;
      o.time_samples = c.time_samples;
      o.workers = workers(c);
      report = strichartz_check(g, *spec, c.horizon > 0.0 ? c.horizon : 1.0, trials_or(c, 10), o);
      break;
    }
    case Experiment::Bilinear: {
      BilinearOptions o;
      o.trials = trials_or(c, 2);
      o.seed = c.seed;
      o.samples_per_period = c.samples_per_period;
      o.workers = workers(c);
      report = c.M_list.size() == 1 ? bilinear_experiment(g, c.N, c.M_list.front(), c.horizon, o)
                                    : bilinear_sweep(g, c.N, c.M_list, c.horizon, o);
      break;
    }
    case Experiment::Lwp: {
      LwpOptions o;
      o.pairs = c.pairs;
      o.s0_bound = c.s0_bound;
      report = lwp_check(solver_config(c, g), initial_data(c, g), o);
      break;
    }
    case Experiment::Smoothing: {
      SmoothingOptions o;
      o.pairs = c.pairs;
      o.normalize_grad_Iu0 = c.normalize;
      report = smoothing_sweep(solver_config(c, g), initial_data(c, g), c.N_list, o);
      break;
    }
    case Experiment::AlmostConservation: {
      AlmostConservationOptions o;
      o.c = c.c;
      o.control_threshold = c.control_threshold;
      report = almost_conservation_sweep(solver_config(c, g), initial_data(c, g), c.N_list, o);
      break;
    }
    case Experiment::Bands: {
      BandCheckOptions o;
      o.pairs = c.pairs;
      report = nonlinear_band_check(solver_config(c, g), initial_data(c, g), c.M_list, o);
      break;
    }
    case Experiment::Scatter: {
      const Trajectory traj = evolve(solver_config(c, g), initial_data(c, g));
      const double tail_start = c.tail_fraction * c.t_end;
      const ScatteringProfile prof = scattering_profile(traj, tail_start, c.s);
      w.text("diagnostics.csv", "diagnostics_csv", diagnostics_csv(traj));
      if (c.write_checkpoint) w.checkpoint("u_plus.ckpt", prof.u_plus, 0.0);
      report = scattering_report(prof, tail_start, c.t_end);
      break;
    }
  }

  if (report) {
    write_report(w, c, *report);
    result.pass = report->pass;
    result.exit_code = report->pass ? kExitPass : kExitBandFailure;
    log << describe_verdict(*report) << '\n';
  }
  for (const auto& a : w.artifacts()) validate_artifact(a);

  result.artifacts = w.artifacts();
  w.text("manifest.json", "manifest", manifest_json(c, result));
  validate_artifact(w.artifacts().back());
  result.artifacts = w.artifacts();
  for (const auto& a : result.artifacts) log << "  wrote " << a.path.string() << '\n';
  return result;
}

}  // namespace nlslab::cli
