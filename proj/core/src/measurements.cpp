#include "nlslab/measurements.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {
namespace {

// Channel values on [i1, i2], taken from the recorded series when present.
template <class Compute>
std::vector<double> channel_or(const Trajectory& traj, const char* name, std::size_t i1, std::size_t i2,
                               Compute compute) {
  const auto it = traj.channels.find(name);
  if (it != traj.channels.end() && it->second.size() == traj.times.size())
    return {it->second.begin() + static_cast<std::ptrdiff_t>(i1), it->second.begin() + static_cast<std::ptrdiff_t>(i2) + 1};
  if (traj.snapshots.size() != traj.times.size())
    throw PreconditionError(std::string("trajectory has neither a ") + name + " channel nor snapshots");
  std::vector<double> out;
  for (std::size_t i = i1; i <= i2; ++i) out.push_back(compute(traj.snapshots[i]));
  return out;
}

}  // namespace

double energy_increment(const Trajectory& traj, double N, double s, double t1, double t2, EnergyChannel channel) {
  const auto [i1, i2] = window_indices(traj.times, t1, t2);
  std::vector<double> series;
  if (channel == EnergyChannel::Kinetic) {
    if (traj.snapshots.size() != traj.times.size())
      throw PreconditionError("kinetic energy increment needs stored snapshots");
    for (std::size_t i = i1; i <= i2; ++i) series.push_back(modified_kinetic_energy(traj.snapshots[i], N, s));
  } else {
    const auto compute = [&](const SpectralField& u) { return modified_energy(u, N, s); };
    const Grid& grid = traj.config.grid;
    if (N >= grid.max_wavenumber()) {
      series = channel_or(traj, channel::energy, i1, i2, compute);
    } else if (traj.config.N == N && traj.config.s == s) {
      series = channel_or(traj, channel::energy_Iu, i1, i2, compute);
    } else {
      if (traj.snapshots.size() != traj.times.size())
        throw PreconditionError("modified energy at a new N needs stored snapshots");
      for (std::size_t i = i1; i <= i2; ++i) series.push_back(compute(traj.snapshots[i]));
    }
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  return *hi - *lo;
}

MorawetzMeasurement morawetz_ratio(const Trajectory& traj, double t1, double t2) {
  const auto [i1, i2] = window_indices(traj.times, t1, t2);
  const std::vector<double> times(traj.times.begin() + static_cast<std::ptrdiff_t>(i1),
                                  traj.times.begin() + static_cast<std::ptrdiff_t>(i2) + 1);
  const auto l4 = channel_or(traj, channel::l4x, i1, i2, [](const SpectralField& u) { return lq_norm(u, 4.0); });
  const auto m = channel_or(traj, channel::mass, i1, i2, [](const SpectralField& u) { return mass(u); });
  const auto h = channel_or(traj, channel::h_half, i1, i2,
                            [](const SpectralField& u) { return sobolev_norm(u, 0.5, true); });

  MorawetzMeasurement out{};
  out.lhs = std::pow(temporal_norm(times, l4, 4.0), 4);
  const double sup_mass = *std::max_element(m.begin(), m.end());
  const double sup_h = *std::max_element(h.begin(), h.end());
  out.rhs = sup_mass * sup_h * sup_h;
  if (out.rhs == 0.0) throw PreconditionError("Morawetz ratio undefined: rhs is zero");
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace nlslab
