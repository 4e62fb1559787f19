#pragma once

#include "nlslab/trajectory.hpp"

namespace nlslab {

enum class EnergyChannel { Full, Kinetic };

/// max - min of E(I_N u(t)) (or its kinetic part) over snapshots in [t1, t2].
double energy_increment(const Trajectory& traj, double N, double s, double t1, double t2,
                        EnergyChannel channel = EnergyChannel::Full);

struct MorawetzMeasurement {
  double lhs;
  double rhs;
  double ratio;
};

/// lhs = ||u||^4_{L^4_{t,x}}, rhs = ||u||^2_{L^inf L^2} ||u||^2_{L^inf \dot H^{1/2}}.
/// Throws PreconditionError when rhs == 0.
MorawetzMeasurement morawetz_ratio(const Trajectory& traj, double t1, double t2);

}  // namespace nlslab
