#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/multiplier.hpp"

namespace nlslab {

ScatteringProfile scattering_profile(const Trajectory& traj, double tail_start, double s) {
  if (traj.snapshots.size() != traj.times.size() || traj.snapshots.empty())
    throw PreconditionError("scattering_profile needs stored snapshots");
  const double t_end = traj.t_final();
  if (!(tail_start < t_end)) throw PreconditionError("scattering_profile needs tail_start < t_end");
  if (tail_start < traj.t_begin()) throw PreconditionError("tail_start precedes the trajectory");

  const Grid& grid = traj.initial().grid();
  const auto norm2 = grid.wave_norm2();
  const SpectralField u0 = as_frequency(traj.initial());

  // Trapezoid of w(tau) = e^{+i tau |xi|^2} F_hat(tau) over the snapshots.
  std::vector<cplx> integral(grid.size(), cplx{});
  std::vector<cplx> w_prev(grid.size(), cplx{});
  // A free run has no Duhamel term to integrate.
  const std::size_t quadrature_end = traj.config.nonlinearity_on ? traj.times.size() : 0;
  for (std::size_t j = 0; j < quadrature_end; ++j) {
    SpectralField phys = to_physical(as_frequency(traj.snapshots[j]));
    for (auto& v : phys.values()) v *= std::norm(v);
    const SpectralField F = to_frequency(std::move(phys));
    const double tau = traj.times[j];
    const double h = j > 0 ? tau - traj.times[j - 1] : 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx w = std::polar(1.0, tau * norm2[i]) * F[i];
      if (j > 0) integral[i] += 0.5 * h * (w_prev[i] + w);
      w_prev[i] = w;
    }
  }

  SpectralField u_plus(grid, Repr::Frequency);
  for (std::size_t i = 0; i < grid.size(); ++i) u_plus[i] = u0[i] - cplx(0.0, 1.0) * integral[i];

  SpectralField pullback = free_evolve(as_frequency(traj.snapshots.back()), -t_end);
  const double denom = pullback.l2_norm();
  const double diff = l2_distance(u_plus, pullback);

  ScatteringProfile out{u_plus, pullback, denom > 0.0 ? diff / denom : diff, {}, {}};
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    const double t = traj.times[j];
    if (t < tail_start - 1e-12) continue;
    SpectralField r = free_evolve(u_plus, t);
    r -= as_frequency(traj.snapshots[j]);
    out.residual_times.push_back(t);
    out.residuals.push_back(bessel_derivative(std::move(r), s).l2_norm());
  }
  return out;
}

}  // namespace nlslab
