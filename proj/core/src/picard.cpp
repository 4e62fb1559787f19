#include <cmath>
#include <sstream>

#include "nlslab/error.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {
namespace {

// F_hat = FFT(|u|^2 u) for a Frequency-repr u.
SpectralField cubic_term(const SpectralField& freq) {
  SpectralField phys = to_physical(freq);
  for (auto& v : phys.values()) v *= std::norm(v);
  return to_frequency(std::move(phys));
}

}  // namespace

// Each iterate is stored in the interaction picture: with w(tau) =
// e^{+i tau |xi|^2} F_hat(tau), the Duhamel map reads
//   u_hat(t) = e^{-i t |xi|^2} (u0_hat - i int_0^t w dtau),
// so the trapezoid integral over all nodes is a running sum.
PicardResult picard_solve(const SpectralField& u0, double T, int n_steps, int max_iter, double tol) {
  if (!(T > 0.0)) throw PreconditionError("picard_solve needs T > 0");
  if (n_steps < 1) throw PreconditionError("picard_solve needs n_steps >= 1");
  if (max_iter < 1) throw PreconditionError("picard_solve needs max_iter >= 1");
  if (!(tol > 0.0)) throw PreconditionError("picard_solve needs tol > 0");

  const Grid& grid = u0.grid();
  const SpectralField c0 = as_frequency(u0);
  const auto norm2 = grid.wave_norm2();
  const double h = T / n_steps;
  const std::size_t nodes = static_cast<std::size_t>(n_steps) + 1;

  std::vector<double> times(nodes);
  for (std::size_t j = 0; j < nodes; ++j) times[j] = static_cast<double>(j) * h;

  std::vector<SpectralField> iterate;
  iterate.reserve(nodes);
  for (double t : times) iterate.push_back(free_evolve(c0, t));

  PicardResult result;
  int growth_streak = 0;
  for (int iter = 1;; ++iter) {
    std::vector<cplx> running(grid.size(), cplx{});
    std::vector<cplx> w_prev(grid.size(), cplx{});
    double dist = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const double t = times[j];
      SpectralField F = cubic_term(iterate[j]);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx w = std::polar(1.0, t * norm2[i]) * F[i];
        if (j > 0) running[i] += 0.5 * h * (w_prev[i] + w);
        w_prev[i] = w;
      }
      SpectralField next(grid, Repr::Frequency);
      double d2 = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        next[i] = std::polar(1.0, -t * norm2[i]) * (c0[i] - cplx(0.0, 1.0) * running[i]);
        d2 += std::norm(next[i] - iterate[j][i]);
      }
      dist = std::max(dist, std::sqrt(grid.cell_volume() * d2));
      iterate[j] = std::move(next);
    }

    if (!std::isfinite(dist)) throw NonContractionError("Picard iterate became non-finite");
    if (!result.distances.empty() && dist > result.distances.back()) {
      if (++growth_streak >= 3) {
        std::ostringstream os;
        os << "Picard iterate distance grew on 3 consecutive iterations (last " << dist << ")";
        throw NonContractionError(os.str());
      }
    } else {
      growth_streak = 0;
    }
    result.distances.push_back(dist);
    if (dist < tol) break;
    if (iter >= max_iter) {
      std::ostringstream os;
      os << "Picard iteration did not reach tol " << tol << " in " << max_iter << " iterations (last " << dist << ")";
      throw MaxIterExceededError(os.str());
    }
  }

  Trajectory& traj = result.trajectory;
  traj.config.grid = grid;
  traj.config.dt = h;
  traj.config.t_end = T;
  traj.times = std::move(times);
  traj.snapshots = std::move(iterate);
  traj.steps_taken = n_steps;
  for (const auto& snap : traj.snapshots) record_channels(traj.config, snap, traj);
  return result;
}

}  // namespace nlslab
