#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlslab/norms.hpp"

namespace nlslab::cli {

enum class Experiment {
  Simulate,
  VerifyI,
  Strichartz,
  Bilinear,
  Lwp,
  Smoothing,
  AlmostConservation,
  Bands,
  Scatter,
  Partition,
};

enum class DataKind { Sobolev, Annulus, Gaussian, Plane, Zero, Checkpoint };
enum class OutputFormat { Csv, Json, Both };

/// Everything one invocation needs. Every field has a config key; see
/// config_keys() for the names and to_text() for the canonical file.
struct RunConfig {
  Experiment experiment = Experiment::Simulate;

  int dim = 2;
  int n = 64;
  double box_length = 6.283185307179586;

  double dt = 1e-3;
  double t_end = 1.0;
  int stride = 1;
  bool nonlinear = true;

  double s = 0.76;
  double N = std::numeric_limits<double>::infinity();
  std::vector<double> N_list;
  std::vector<double> M_list;
  double c = 0.5;
  double epsilon = 0.1;
  /// 0 picks floor(sqrt(N)).
  int little_per_big = 0;

  DataKind data = DataKind::Sobolev;
  double amplitude = 0.25;
  double data_s = 0.76;
  double margin = 0.01;
  double annulus_lo = 1.0;
  double annulus_hi = 4.0;
  bool focused = false;
  double envelope = 0.0;
  double width = 1.0;
  std::array<int, 3> mode{0, 0, 0};
  std::string checkpoint_path;

  std::uint64_t seed = 1;
  /// 0 uses every available core.
  int workers = 0;
  OutputFormat format = OutputFormat::Both;
  std::string out = "nlslab-out";

  /// 0 picks the experiment default (verify-i 100, strichartz 10, bilinear 2).
  int trials = 0;
  int time_samples = 64;
  /// Time horizon for the free-flow experiments; 0 picks the experiment default.
  double horizon = 0.0;
  std::vector<ExponentPair> pairs;
  double s0_bound = 10.0;
  bool normalize = false;
  double M_over_N = 1.0;
  double stability_band = 0.30;
  double samples_per_period = 4.0;
  double tail_fraction = 0.5;
  double control_threshold = 1e-8;
  bool write_checkpoint = true;

  bool operator==(const RunConfig&) const = default;
};

std::string_view experiment_name(Experiment e);
/// Throws ConfigError for an unknown subcommand name.
Experiment parse_experiment(std::string_view name);
const std::vector<std::string>& experiment_names();

/// Parse failures, unknown or duplicate keys, out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeyDoc {
  std::string key;
  std::string help;
};
const std::vector<KeyDoc>& config_keys();

/// NLSLAB_ + the key upper-cased with '.' -> '_', e.g. NLSLAB_GRID_N.
std::string env_name(std::string_view key);

/// Accumulates key assignments from several sources, later sources winning.
/// A key repeated inside one source is an error.
class ConfigBuilder {
 public:
  /// `name` labels errors (a path, "environment", "--set").
  void add_text(std::string_view text, const std::string& name);
  void add_file(const std::string& path);
  /// Reads NLSLAB_<KEY> for every known key.
  void add_environment();
  void add_assignments(const std::vector<std::string>& assignments, const std::string& name);
  void set(const std::string& key, const std::string& value, const std::string& name);

  /// Applies everything to the defaults and validates. `required` keys must
  /// have been given by some source.
  RunConfig build() const;
  const std::set<std::string>& given() const noexcept { return given_; }

 private:
  struct Source {
    std::string name;
    std::map<std::string, std::string> values;
  };
  Source& source(const std::string& name);

  std::vector<Source> sources_;
  std::set<std::string> given_;
};

/// Keys that must be supplied for the experiment.
std::vector<std::string> required_keys(Experiment e);

/// Throws ConfigError naming the key and the violated bound.
void validate(const RunConfig& config);

/// Canonical key = value text of every key; parses back to an equal config.
std::string to_text(const RunConfig& config);

/// Convenience: parse one text source (all required keys must be present).
RunConfig parse_config_text(std::string_view text);

}  // namespace nlslab::cli
