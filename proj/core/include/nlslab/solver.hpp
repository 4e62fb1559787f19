#pragma once

#include <functional>
#include <vector>

#include "nlslab/trajectory.hpp"

namespace nlslab {

/// e^{it Laplacian} f, exact on lattice modes. Returns in the caller's repr.
SpectralField free_evolve(SpectralField f, double t);

/// Exact flow of i u_t = |u|^2 u: u <- u exp(-i dt |u|^2). Requires Physical repr.
SpectralField nonlinear_phase_step(SpectralField f, double dt);

/// One Strang step: half linear, full nonlinear, half linear.
SpectralField strang_step(SpectralField f, double dt, bool nonlinear = true);

/// Reusable Strang integrator with the half-step phases precomputed.
class StrangStepper {
 public:
  StrangStepper(const Grid& grid, double dt, bool nonlinear);
  /// Advances a Frequency-repr field in place; returns the sup norm seen in
  /// the nonlinear sub-step (0 when the nonlinearity is off).
  double step(SpectralField& freq);

 private:
  Grid grid_;
  double dt_;
  bool nonlinear_;
  /// exp(-i dt/2 |xi|^2), or the full-step phase when the nonlinearity is off.
  std::vector<cplx> phase_;
};

struct EvolveOptions {
  bool store_snapshots = true;
  bool record_channels = true;
  /// Called at every snapshot time with the Frequency-repr state.
  std::function<void(double, const SpectralField&)> observer;
};

/// Integrates i u_t + Laplacian u = |u|^2 u from u0 with Strang splitting.
///
/// Snapshots every snapshot_stride steps (and at t_end). Throws
/// PreconditionError when dt * max|u0|^2 > 0.1, DivergenceError when the
/// sup norm exceeds 1e6 times its initial value.
Trajectory evolve(const SolverConfig& config, const SpectralField& u0, const EvolveOptions& options = {});

/// Fills the standard scalar channels of one snapshot.
void record_channels(const SolverConfig& config, const SpectralField& u, Trajectory& traj);

struct PicardResult {
  Trajectory trajectory;
  /// Successive-iterate distances in L^inf_t L^2_x, one per iteration.
  std::vector<double> distances;
};

/// Fixed point of the discretized Duhamel map
///   u(t) = e^{it Lap} u0 - i int_0^t e^{i(t-tau) Lap} |u|^2 u (tau) dtau
/// with composite trapezoid quadrature on n_steps uniform intervals of [0, T].
///
/// Throws NonContractionError when the iterate distance grows on three
/// consecutive iterations (or turns non-finite), MaxIterExceededError when
/// tol is not reached within max_iter iterations.
PicardResult picard_solve(const SpectralField& u0, double T, int n_steps, int max_iter, double tol);

struct DuhamelSplit {
  Trajectory linear_part;
  Trajectory nonlinear_part;
};

/// u = u^l + u^nl with u^l(t) = e^{it Lap} u(0) exactly.
DuhamelSplit duhamel_split(const Trajectory& traj);

/// u_lambda(x) = u(x/lambda) / lambda on a box lambda times larger; lambda = 2^k.
SpectralField rescale(const SpectralField& u0, double lambda);

/// N^{(1-s)/(s-1/2)} rounded to the nearest power of two; s in (1/2, 1).
double choose_lambda(double N, double s);

}  // namespace nlslab
