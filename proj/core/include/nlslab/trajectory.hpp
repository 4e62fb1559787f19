#pragma once

#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Parameters of one time-evolution run.
struct SolverConfig {
  Grid grid = Grid::make(2, 64, 2.0 * std::numbers::pi);
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 1;
  bool nonlinearity_on = true;
  /// Regularity index of the I-operator, in (1/2, 1).
  double s = 0.75;
  /// I-operator frequency; infinity means I is the identity.
  double N = std::numeric_limits<double>::infinity();
  /// Space-time L^4 smallness budget.
  double epsilon = 0.1;

  /// Throws PreconditionError on inconsistent values.
  void validate() const;
  /// Number of time steps, t_end / dt (must be an integer to 1e-9).
  long step_count() const;
  /// True when m_N is identically 1 on this grid.
  bool i_is_identity() const noexcept { return N >= grid.max_wavenumber(); }
};

namespace channel {
inline constexpr const char* mass = "mass";
inline constexpr const char* energy = "energy";
inline constexpr const char* energy_Iu = "energy_Iu";
inline constexpr const char* l4x = "l4x";
inline constexpr const char* hs = "hs";
inline constexpr const char* h_half = "h_half";
}  // namespace channel

/// Time-ordered snapshots plus snapshot-aligned scalar channels.
///
/// Snapshots are stored in Frequency representation. times[0] == 0 and
/// times are strictly increasing.
struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<SpectralField> snapshots;
  std::map<std::string, std::vector<double>> channels;
  /// Largest relative mass deviation seen over all steps (not just snapshots).
  double max_step_mass_drift = 0.0;
  long steps_taken = 0;

  const SpectralField& initial() const { return snapshots.front(); }
  double t_begin() const { return times.front(); }
  double t_final() const { return times.back(); }
};

/// Snapshot indices whose times lie in [t1, t2] (with 1e-9 slack).
/// Throws PreconditionError when the window leaves the trajectory span.
std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& times, double t1, double t2);

}  // namespace nlslab
