#include "nlslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"

namespace nlslab {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive and finite");
  if (!(t_end >= dt)) throw PreconditionError("t_end must be >= dt");
  if (snapshot_stride < 1) throw PreconditionError("snapshot_stride must be >= 1");
  if (!(s > 0.5 && s < 1.0)) throw PreconditionError("s must satisfy s ∈ (1/2, 1)");
  if (!(N > 0.0)) throw PreconditionError("N must be > 0");
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be > 0");
  step_count();
}

long SolverConfig::step_count() const {
  const double ratio = t_end / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "t_end / dt must be an integer, got " << ratio;
    throw PreconditionError(os.str());
  }
  return static_cast<long>(rounded);
}

std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& times, double t1, double t2) {
  if (times.empty()) throw PreconditionError("empty trajectory");
  const double slack = 1e-9 * std::max(1.0, std::abs(times.back()));
  if (t1 > t2 || t1 < times.front() - slack || t2 > times.back() + slack)
    throw PreconditionError("time window outside the trajectory span");
  auto lo = std::lower_bound(times.begin(), times.end(), t1 - slack);
  auto hi = std::upper_bound(times.begin(), times.end(), t2 + slack);
  if (lo == hi) throw PreconditionError("time window contains no snapshot");
  return {static_cast<std::size_t>(lo - times.begin()), static_cast<std::size_t>(hi - times.begin()) - 1};
}

SpectralField free_evolve(SpectralField f, double t) {
  const Repr repr = f.repr();
  SpectralField g = as_frequency(std::move(f));
  const auto norm2 = g.grid().wave_norm2();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= std::polar(1.0, -t * norm2[i]);
  return as_repr(std::move(g), repr);
}

SpectralField nonlinear_phase_step(SpectralField f, double dt) {
  if (f.repr() != Repr::Physical) throw PreconditionError("nonlinear_phase_step expects a Physical field");
  for (auto& v : f.values()) v *= std::polar(1.0, -dt * std::norm(v));
  return f;
}

StrangStepper::StrangStepper(const Grid& grid, double dt, bool nonlinear)
    : grid_(grid), dt_(dt), nonlinear_(nonlinear), phase_(grid.size()) {
  const double tau = nonlinear ? 0.5 * dt : dt;
  const auto norm2 = grid.wave_norm2();
  for (std::size_t i = 0; i < phase_.size(); ++i) phase_[i] = std::polar(1.0, -tau * norm2[i]);
}

double StrangStepper::step(SpectralField& freq) {
  if (freq.repr() != Repr::Frequency) throw PreconditionError("StrangStepper expects a Frequency field");
  auto v = freq.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= phase_[i];
  if (!nonlinear_) return 0.0;

  SpectralField phys = to_physical(std::move(freq));
  double sup2 = 0.0;
  for (auto& u : phys.values()) {
    const double a = std::norm(u);
    sup2 = std::max(sup2, a);
    u *= std::polar(1.0, -dt_ * a);
  }
  freq = to_frequency(std::move(phys));
  v = freq.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= phase_[i];
  return std::sqrt(sup2);
}

SpectralField strang_step(SpectralField f, double dt, bool nonlinear) {
  const Repr repr = f.repr();
  SpectralField g = as_frequency(std::move(f));
  StrangStepper(g.grid(), dt, nonlinear).step(g);
  return as_repr(std::move(g), repr);
}

void record_channels(const SolverConfig& config, const SpectralField& u, Trajectory& traj) {
  const SpectralField freq = as_frequency(u);
  const double e = energy(freq);
  traj.channels[channel::mass].push_back(mass(freq));
  traj.channels[channel::energy].push_back(e);
  traj.channels[channel::energy_Iu].push_back(config.i_is_identity() ? e : modified_energy(freq, config.N, config.s));
  traj.channels[channel::l4x].push_back(lq_norm(freq, 4.0));
  traj.channels[channel::hs].push_back(sobolev_norm(freq, config.s, false));
  traj.channels[channel::h_half].push_back(sobolev_norm(freq, 0.5, true));
}

Trajectory evolve(const SolverConfig& config, const SpectralField& u0, const EvolveOptions& options) {
  config.validate();
  if (!(u0.grid() == config.grid)) throw PreconditionError("initial data is not on the configured grid");

  const SpectralField phys0 = as_physical(u0);
  const double sup0 = phys0.max_abs();
  if (config.nonlinearity_on && config.dt * sup0 * sup0 > 0.1) {
    std::ostringstream os;
    os << "dt * max|u0|^2 = " << config.dt * sup0 * sup0 << " exceeds the stability cap 0.1";
    throw PreconditionError(os.str());
  }
  const double guard = 1e6 * sup0;

  Trajectory traj;
  traj.config = config;
  SpectralField u = as_frequency(u0);
  const double m0 = mass(u);

  auto snapshot = [&](double t) {
    traj.times.push_back(t);
    if (options.record_channels) record_channels(config, u, traj);
    if (options.store_snapshots) traj.snapshots.push_back(u);
    if (options.observer) options.observer(t, u);
  };

  snapshot(0.0);
  const long steps = config.step_count();
  StrangStepper stepper(config.grid, config.dt, config.nonlinearity_on);
  for (long k = 1; k <= steps; ++k) {
    const double sup = stepper.step(u);
    if (!std::isfinite(sup) || sup > guard) {
      std::ostringstream os;
      os << "sup norm " << sup << " exceeded the overflow guard at step " << k;
      throw DivergenceError(os.str());
    }
    const double m = mass(u);
    if (!std::isfinite(m)) throw DivergenceError("mass became non-finite at step " + std::to_string(k));
    if (m0 > 0.0) traj.max_step_mass_drift = std::max(traj.max_step_mass_drift, std::abs(m - m0) / m0);
    traj.steps_taken = k;
    if (k % config.snapshot_stride == 0 || k == steps) snapshot(static_cast<double>(k) * config.dt);
  }
  return traj;
}

DuhamelSplit duhamel_split(const Trajectory& traj) {
  if (traj.snapshots.size() != traj.times.size() || traj.snapshots.empty())
    throw PreconditionError("duhamel_split needs a trajectory with stored snapshots");
  DuhamelSplit out;
  out.linear_part.config = traj.config;
  out.nonlinear_part.config = traj.config;
  out.linear_part.times = traj.times;
  out.nonlinear_part.times = traj.times;
  const SpectralField u0 = as_frequency(traj.initial());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    SpectralField lin = free_evolve(u0, traj.times[i]);
    SpectralField nl = as_frequency(traj.snapshots[i]);
    nl -= lin;
    out.linear_part.snapshots.push_back(std::move(lin));
    out.nonlinear_part.snapshots.push_back(std::move(nl));
  }
  return out;
}

SpectralField rescale(const SpectralField& u0, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("rescale needs lambda > 0");
  const double k = std::log2(lambda);
  if (std::abs(k - std::round(k)) > 1e-12 || std::ldexp(1.0, static_cast<int>(std::round(k))) != lambda)
    throw PreconditionError("rescale needs lambda to be a power of two");
  const Grid& g = u0.grid();
  const Grid scaled = Grid::make(g.dim(), g.n(), g.box_length() * lambda);
  std::vector<cplx> values(u0.values().begin(), u0.values().end());
  for (auto& v : values) v /= lambda;
  return SpectralField(scaled, u0.repr(), std::move(values));
}

double choose_lambda(double N, double s) {
  if (!(s > 0.5 && s < 1.0)) throw PreconditionError("choose_lambda needs s ∈ (1/2, 1)");
  if (!(N > 0.0) || !std::isfinite(N)) throw PreconditionError("choose_lambda needs finite N > 0");
  const double exponent = (1.0 - s) / (s - 0.5);
  return std::ldexp(1.0, static_cast<int>(std::round(exponent * std::log2(N))));
}

}  // namespace nlslab
