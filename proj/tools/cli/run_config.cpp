#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "nlslab/diagnostics_io.hpp"
#include "nlslab/error.hpp"
#include "nlslab/grid.hpp"

namespace nlslab::cli {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 10> kExperiments = {{
    {Experiment::Simulate, "simulate"},
    {Experiment::VerifyI, "verify-i"},
    {Experiment::Strichartz, "strichartz"},
    {Experiment::Bilinear, "bilinear"},
    {Experiment::Lwp, "lwp"},
    {Experiment::Smoothing, "smoothing"},
    {Experiment::AlmostConservation, "almost-conservation"},
    {Experiment::Bands, "bands"},
    {Experiment::Scatter, "scatter"},
    {Experiment::Partition, "partition"},
}};

constexpr std::array<std::pair<DataKind, std::string_view>, 6> kDataKinds = {{
    {DataKind::Sobolev, "sobolev"},
    {DataKind::Annulus, "annulus"},
    {DataKind::Gaussian, "gaussian"},
    {DataKind::Plane, "plane"},
    {DataKind::Zero, "zero"},
    {DataKind::Checkpoint, "checkpoint"},
}};

constexpr std::array<std::pair<OutputFormat, std::string_view>, 3> kFormats = {{
    {OutputFormat::Csv, "csv"},
    {OutputFormat::Json, "json"},
    {OutputFormat::Both, "both"},
}};

template <class E, std::size_t K>
E parse_enum(const std::array<std::pair<E, std::string_view>, K>& table, std::string_view v, const std::string& key) {
  for (const auto& [e, name] : table)
    if (name == v) return e;
  std::string allowed;
  for (const auto& [e, name] : table) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  throw ConfigError(key + ": '" + std::string(v) + "' is not one of {" + allowed + "}");
}

template <class E, std::size_t K>
std::string enum_name(const std::array<std::pair<E, std::string_view>, K>& table, E e) {
  for (const auto& [v, name] : table)
    if (v == e) return std::string(name);
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view v, const std::string& key) {
  v = trim(v);
  if (v == "inf" || v == "infinity" || v == "+inf") return HUGE_VAL;
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || std::isnan(out))
    throw ConfigError(key + ": '" + std::string(v) + "' is not a number");
  return out;
}

long long to_integer(std::string_view v, const std::string& key) {
  v = trim(v);
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": '" + std::string(v) + "' is not an integer");
  return out;
}

int to_int(std::string_view v, const std::string& key) {
  const long long x = to_integer(v, key);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key + ": value out of range");
  return static_cast<int>(x);
}

bool to_bool(std::string_view v, const std::string& key) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": '" + std::string(v) + "' is not a boolean");
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  v = trim(v);
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = v.find(',', start);
    out.push_back(trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> to_double_list(std::string_view v, const std::string& key) {
  std::vector<double> out;
  for (auto item : split_list(v)) out.push_back(to_double(item, key));
  return out;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_double(xs[i]);
  return out;
}

struct Key {
  std::string name;
  std::string help;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

Key real(std::string name, std::string help, double RunConfig::*field) {
  const std::string k = name;
  return {std::move(name), std::move(help), [k, field](RunConfig& c, std::string_view v) { c.*field = to_double(v, k); },
          [field](const RunConfig& c) { return format_double(c.*field); }};
}

Key integer(std::string name, std::string help, int RunConfig::*field) {
  const std::string k = name;
  return {std::move(name), std::move(help), [k, field](RunConfig& c, std::string_view v) { c.*field = to_int(v, k); },
          [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Key boolean(std::string name, std::string help, bool RunConfig::*field) {
  const std::string k = name;
  return {std::move(name), std::move(help), [k, field](RunConfig& c, std::string_view v) { c.*field = to_bool(v, k); },
          [field](const RunConfig& c) { return std::string(c.*field ? "true" : "false"); }};
}

Key real_list(std::string name, std::string help, std::vector<double> RunConfig::*field) {
  const std::string k = name;
  return {std::move(name), std::move(help),
          [k, field](RunConfig& c, std::string_view v) { c.*field = to_double_list(v, k); },
          [field](const RunConfig& c) { return join_doubles(c.*field); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> t;
    t.push_back({"experiment", "subcommand to run",
                 [](RunConfig& c, std::string_view v) { c.experiment = parse_experiment(trim(v)); },
                 [](const RunConfig& c) { return std::string(experiment_name(c.experiment)); }});

    t.push_back(integer("grid.dim", "spatial dimension, 1-3", &RunConfig::dim));
    t.push_back(integer("grid.n", "points per axis, a power of two >= 8", &RunConfig::n));
    t.push_back(real("grid.box_length", "torus side L", &RunConfig::box_length));

    t.push_back(real("solver.dt", "time step", &RunConfig::dt));
    t.push_back(real("solver.t_end", "final time, a multiple of dt", &RunConfig::t_end));
    t.push_back(integer("solver.stride", "steps between snapshots", &RunConfig::stride));
    t.push_back(boolean("solver.nonlinear", "include the cubic term", &RunConfig::nonlinear));

    t.push_back(real("spectral.s", "I-operator regularity, in (1/2, 1)", &RunConfig::s));
    t.push_back(real("spectral.N", "I-operator frequency (inf: identity); low frequency for bilinear", &RunConfig::N));
    t.push_back(real_list("spectral.N_list", "sweep of N values", &RunConfig::N_list));
    t.push_back(real_list("spectral.M_list", "sweep of M values", &RunConfig::M_list));
    t.push_back(real("spectral.c", "constant c in P_{>cN}", &RunConfig::c));
    t.push_back(real("spectral.epsilon", "space-time L^4 budget", &RunConfig::epsilon));
    t.push_back(integer("spectral.little_per_big", "little intervals per big one (0: floor(sqrt(N)))",
                        &RunConfig::little_per_big));

    t.push_back({"data.kind", "sobolev, annulus, gaussian, plane, zero or checkpoint",
                 [](RunConfig& c, std::string_view v) { c.data = parse_enum(kDataKinds, trim(v), "data.kind"); },
                 [](const RunConfig& c) { return enum_name(kDataKinds, c.data); }});
    t.push_back(real("data.amplitude", "sup norm of the initial data", &RunConfig::amplitude));
    t.push_back(real("data.s", "Sobolev index of sobolev data", &RunConfig::data_s));
    t.push_back(real("data.margin", "decay margin of sobolev data", &RunConfig::margin));
    t.push_back(real("data.annulus_lo", "inner radius of annulus data", &RunConfig::annulus_lo));
    t.push_back(real("data.annulus_hi", "outer radius of annulus data", &RunConfig::annulus_hi));
    t.push_back(boolean("data.focused", "coherent packet phases instead of random ones", &RunConfig::focused));
    t.push_back(real("data.envelope", "Gaussian envelope width (0: none)", &RunConfig::envelope));
    t.push_back(real("data.width", "width of gaussian data", &RunConfig::width));
    t.push_back({"data.mode", "lattice wave vector of gaussian/plane data, e.g. 1,0,0",
                 [](RunConfig& c, std::string_view v) {
                   const auto items = split_list(v);
                   if (items.empty() || items.size() > 3) throw ConfigError("data.mode: expected 1 to 3 integers");
                   c.mode = {0, 0, 0};
                   for (std::size_t i = 0; i < items.size(); ++i) c.mode[i] = to_int(items[i], "data.mode");
                 },
                 [](const RunConfig& c) {
                   return std::to_string(c.mode[0]) + "," + std::to_string(c.mode[1]) + "," +
                          std::to_string(c.mode[2]);
                 }});
    t.push_back({"data.path", "checkpoint file for checkpoint data",
                 [](RunConfig& c, std::string_view v) { c.checkpoint_path = std::string(trim(v)); },
                 [](const RunConfig& c) { return c.checkpoint_path; }});

    t.push_back({"run.seed", "base seed of every random draw",
                 [](RunConfig& c, std::string_view v) {
                   const auto t = trim(v);
                   std::uint64_t x = 0;
                   const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
                   if (res.ec != std::errc() || res.ptr != t.data() + t.size())
                     throw ConfigError("run.seed: '" + std::string(t) + "' is not an unsigned integer");
                   c.seed = x;
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    t.push_back(integer("run.workers", "parallel workers (0: all cores)", &RunConfig::workers));
    t.push_back({"run.format", "csv, json or both",
                 [](RunConfig& c, std::string_view v) { c.format = parse_enum(kFormats, trim(v), "run.format"); },
                 [](const RunConfig& c) { return enum_name(kFormats, c.format); }});
    t.push_back({"run.out", "output directory",
                 [](RunConfig& c, std::string_view v) { c.out = std::string(trim(v)); },
                 [](const RunConfig& c) { return c.out; }});

    t.push_back(integer("experiment.trials", "random fields per sweep point (0: experiment default)", &RunConfig::trials));
    t.push_back(integer("experiment.time_samples", "time samples of free-flow norms", &RunConfig::time_samples));
    t.push_back(real("experiment.horizon", "time horizon of free-flow experiments (0: default)", &RunConfig::horizon));
    t.push_back({"experiment.pairs", "admissible pairs p:q, e.g. inf:2,4:4 (empty: defaults)",
                 [](RunConfig& c, std::string_view v) {
                   c.pairs.clear();
                   for (auto item : split_list(v)) {
                     const auto colon = item.find(':');
                     if (colon == std::string_view::npos) throw ConfigError("experiment.pairs: expected p:q items");
                     c.pairs.push_back({to_double(item.substr(0, colon), "experiment.pairs"),
                                        to_double(item.substr(colon + 1), "experiment.pairs")});
                   }
                 },
                 [](const RunConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.pairs.size(); ++i)
                     out += (i ? "," : "") + format_double(c.pairs[i].p) + ":" + format_double(c.pairs[i].q);
                   return out;
                 }});
    t.push_back(real("experiment.s0_bound", "declared bound on ||grad I u||_{S^0}", &RunConfig::s0_bound));
    t.push_back(boolean("experiment.normalize", "rescale data so ||grad I u0||_2 = 1", &RunConfig::normalize));
    t.push_back(real("experiment.M_over_N", "high-frequency threshold M as a multiple of N", &RunConfig::M_over_N));
    t.push_back(real("experiment.stability_band", "allowed relative spread of fitted constants",
                     &RunConfig::stability_band));
    t.push_back(real("experiment.samples_per_period", "time samples per fastest oscillation",
                     &RunConfig::samples_per_period));
    t.push_back(real("experiment.tail_fraction", "tail start as a fraction of t_end", &RunConfig::tail_fraction));
    t.push_back(real("experiment.control_threshold", "bound on the identity-I energy increment",
                     &RunConfig::control_threshold));
    t.push_back(boolean("experiment.checkpoint", "write the final state as a checkpoint", &RunConfig::write_checkpoint));
    return t;
  }();
  return table;
}

const Key& find_key(const std::string& name, const std::string& where) {
  for (const auto& k : keys())
    if (k.name == name) return k;
  throw ConfigError(where + ": unknown key '" + name + "'");
}

bool needs_solver(Experiment e) {
  switch (e) {
    case Experiment::VerifyI:
    case Experiment::Strichartz:
    case Experiment::Bilinear:
      return false;
    default:
      return true;
  }
}

[[noreturn]] void out_of_range(const std::string& key, double value, const std::string& bound) {
  throw ConfigError(key + " = " + format_double(value) + " violates " + bound);
}

void require_positive_list(const std::vector<double>& xs, const std::string& key) {
  for (double x : xs)
    if (!(x > 0.0) || !std::isfinite(x)) out_of_range(key, x, "every value > 0 and finite");
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  for (const auto& [v, name] : kExperiments)
    if (v == e) return name;
  return "?";
}

Experiment parse_experiment(std::string_view name) { return parse_enum(kExperiments, name, "experiment"); }

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [e, name] : kExperiments) out.emplace_back(name);
    return out;
  }();
  return names;
}

const std::vector<KeyDoc>& config_keys() {
  static const std::vector<KeyDoc> docs = [] {
    std::vector<KeyDoc> out;
    for (const auto& k : keys()) out.push_back({k.name, k.help});
    return out;
  }();
  return docs;
}

std::string env_name(std::string_view key) {
  std::string out = "NLSLAB_";
  for (char ch : key) out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string> required_keys(Experiment e) {
  std::vector<std::string> req = {"grid.dim", "grid.n"};
  if (needs_solver(e)) {
    req.push_back("solver.dt");
    req.push_back("solver.t_end");
  }
  switch (e) {
    case Experiment::VerifyI:
    case Experiment::Smoothing:
    case Experiment::AlmostConservation:
      req.push_back("spectral.N_list");
      break;
    case Experiment::Bilinear:
      req.push_back("spectral.N");
      req.push_back("spectral.M_list");
      break;
    case Experiment::Bands:
      req.push_back("spectral.M_list");
      break;
    default:
      break;
  }
  return req;
}

ConfigBuilder::Source& ConfigBuilder::source(const std::string& name) {
  for (auto& s : sources_)
    if (s.name == name) return s;
  sources_.push_back({name, {}});
  return sources_.back();
}

void ConfigBuilder::set(const std::string& key, const std::string& value, const std::string& name) {
  find_key(key, name);
  Source& src = source(name);
  if (!src.values.emplace(key, value).second) throw ConfigError(name + ": duplicate key '" + key + "'");
  given_.insert(key);
}

void ConfigBuilder::add_text(std::string_view text, const std::string& name) {
  source(name);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = name + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(where + ": empty key");
    find_key(key, where);
    Source& src = source(name);
    if (!src.values.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
      throw ConfigError(where + ": duplicate key '" + key + "'");
    given_.insert(key);
  }
}

void ConfigBuilder::add_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  add_text(ss.str(), path);
}

void ConfigBuilder::add_environment() {
  for (const auto& k : keys()) {
    const std::string var = env_name(k.name);
    if (const char* v = std::getenv(var.c_str())) set(k.name, v, "environment (" + var + ")");
  }
}

void ConfigBuilder::add_assignments(const std::vector<std::string>& assignments, const std::string& name) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ConfigError(name + ": expected key=value, got '" + a + "'");
    set(std::string(trim(std::string_view(a).substr(0, eq))), std::string(trim(std::string_view(a).substr(eq + 1))),
        name);
  }
}

RunConfig ConfigBuilder::build() const {
  RunConfig c;
  // The experiment must be known before required keys can be checked, and
  // two sources naming different experiments is a mistake, not an override.
  std::string experiment_source;
  for (const auto& src : sources_) {
    const auto it = src.values.find("experiment");
    if (it == src.values.end()) continue;
    const Experiment e = parse_experiment(trim(it->second));
    if (!experiment_source.empty() && e != c.experiment)
      throw ConfigError("experiment given as '" + std::string(experiment_name(c.experiment)) + "' by " +
                        experiment_source + " but '" + std::string(experiment_name(e)) + "' by " + src.name);
    c.experiment = e;
    experiment_source = src.name;
  }
  for (const auto& src : sources_)
    for (const auto& [key, value] : src.values) find_key(key, src.name).set(c, value);
  for (const auto& key : required_keys(c.experiment))
    if (!given_.contains(key))
      throw ConfigError("missing required key '" + key + "' for " + std::string(experiment_name(c.experiment)));
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (c.dim < 1 || c.dim > 3) out_of_range("grid.dim", c.dim, "dim ∈ {1, 2, 3}");
  if (c.n < 8 || !is_power_of_two(c.n)) out_of_range("grid.n", c.n, "n a power of two >= 8");
  if (!(c.box_length > 0.0) || !std::isfinite(c.box_length)) out_of_range("grid.box_length", c.box_length, "L > 0");
  if (!(c.s > 0.5 && c.s < 1.0)) out_of_range("spectral.s", c.s, "s ∈ (1/2, 1)");
  if (!(c.N > 0.0)) out_of_range("spectral.N", c.N, "N > 0");
  require_positive_list(c.N_list, "spectral.N_list");
  require_positive_list(c.M_list, "spectral.M_list");
  if (!(c.c > 0.0) || !std::isfinite(c.c)) out_of_range("spectral.c", c.c, "c > 0");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) out_of_range("spectral.epsilon", c.epsilon, "epsilon > 0");
  if (c.little_per_big < 0) out_of_range("spectral.little_per_big", c.little_per_big, "little_per_big >= 0");

  if (needs_solver(c.experiment)) {
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) out_of_range("solver.dt", c.dt, "dt > 0");
    if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) out_of_range("solver.t_end", c.t_end, "t_end > 0");
    const double steps = c.t_end / c.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
      out_of_range("solver.t_end", c.t_end, "t_end an integer multiple of solver.dt");
    if (c.stride < 1) out_of_range("solver.stride", c.stride, "stride >= 1");
  }

  if (!(c.amplitude >= 0.0) || !std::isfinite(c.amplitude)) out_of_range("data.amplitude", c.amplitude, "amplitude >= 0");
  if (!(c.data_s > 0.0)) out_of_range("data.s", c.data_s, "data.s > 0");
  if (!(c.margin >= 0.0)) out_of_range("data.margin", c.margin, "margin >= 0");
  if (!(c.annulus_lo >= 0.0)) out_of_range("data.annulus_lo", c.annulus_lo, "annulus_lo >= 0");
  if (!(c.annulus_hi >= c.annulus_lo)) out_of_range("data.annulus_hi", c.annulus_hi, "annulus_hi >= annulus_lo");
  if (!(c.envelope >= 0.0)) out_of_range("data.envelope", c.envelope, "envelope >= 0");
  if (!(c.width > 0.0)) out_of_range("data.width", c.width, "width > 0");
  if (c.data == DataKind::Checkpoint && c.checkpoint_path.empty())
    throw ConfigError("data.path is required when data.kind = checkpoint");

  if (c.workers < 0) out_of_range("run.workers", c.workers, "workers >= 0");
  if (c.out.empty()) throw ConfigError("run.out must not be empty");

  if (c.trials < 0) out_of_range("experiment.trials", c.trials, "trials >= 0");
  if (c.experiment == Experiment::VerifyI && c.trials != 0 && c.trials < 10)
    out_of_range("experiment.trials", c.trials, "trials >= 10 for verify-i");
  if (c.time_samples < 1) out_of_range("experiment.time_samples", c.time_samples, "time_samples >= 1");
  if (!(c.horizon >= 0.0)) out_of_range("experiment.horizon", c.horizon, "horizon >= 0");
  for (const auto& p : c.pairs)
    if (!is_admissible(p.p, p.q, c.dim))
      throw ConfigError("experiment.pairs: (" + format_double(p.p) + ", " + format_double(p.q) +
                        ") violates 2/p = d(1/2 - 1/q) with d = " + std::to_string(c.dim));
  if (!(c.s0_bound > 0.0)) out_of_range("experiment.s0_bound", c.s0_bound, "s0_bound > 0");
  if (!(c.M_over_N > 0.0)) out_of_range("experiment.M_over_N", c.M_over_N, "M_over_N > 0");
  if (!(c.stability_band > 0.0)) out_of_range("experiment.stability_band", c.stability_band, "stability_band > 0");
  if (!(c.samples_per_period > 0.0))
    out_of_range("experiment.samples_per_period", c.samples_per_period, "samples_per_period > 0");
  if (!(c.tail_fraction >= 0.0 && c.tail_fraction < 1.0))
    out_of_range("experiment.tail_fraction", c.tail_fraction, "tail_fraction ∈ [0, 1)");
  if (!(c.control_threshold > 0.0))
    out_of_range("experiment.control_threshold", c.control_threshold, "control_threshold > 0");
}

std::string to_text(const RunConfig& config) {
  std::string out;
  std::string group;
  for (const auto& k : keys()) {
    const std::string g = k.name.substr(0, k.name.find('.'));
    if (!out.empty() && g != group) out += '\n';
    group = g;
    out += k.name + " = " + k.get(config) + '\n';
  }
  return out;
}

RunConfig parse_config_text(std::string_view text) {
  ConfigBuilder b;
  b.add_text(text, "<config>");
  return b.build();
}

}  // namespace nlslab::cli
