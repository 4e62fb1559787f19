#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlslab/trajectory.hpp"

namespace nlslab {

/// Breakpoints of a time window into L^4-small little intervals, optionally
/// grouped into big intervals of `little_per_big` little ones each.
struct IntervalPartition {
  double epsilon = 0.1;
  /// Little-interval breakpoints; interval i is [breakpoints[i], breakpoints[i+1]].
  std::vector<double> breakpoints;
  /// ||u||_{L^4_{t,x}} on each little interval.
  std::vector<double> l4;
  /// Singleton intervals whose single sampling step alone exceeds eps^4.
  std::vector<bool> over_budget;
  std::size_t little_per_big = 1;
  /// Indices into `breakpoints` bounding the big intervals.
  std::vector<std::size_t> big_breaks;

  std::size_t interval_count() const noexcept { return l4.size(); }
  std::size_t big_count() const noexcept { return big_breaks.empty() ? 0 : big_breaks.size() - 1; }
  std::vector<double> big_breakpoints() const;
};

/// Greedy left-to-right partition of a sampled density ||u(t)||^4_{L^4_x}:
/// an interval is closed at the last sample keeping its trapezoid integral <= eps^4.
IntervalPartition partition_l4_density(std::span<const double> times, std::span<const double> density, double epsilon);

IntervalPartition partition_by_l4(const Trajectory& traj, double epsilon, double t1, double t2);

/// Groups consecutive little intervals into big ones (the last may be partial).
IntervalPartition group_layers(IntervalPartition little, std::size_t little_per_big);

IntervalPartition double_layer_partition(const Trajectory& traj, double epsilon, std::size_t little_per_big, double t1,
                                         double t2);

/// N^{3(1-s)/(2s-1)}: the number of L^4-small intervals the I-method argument
/// budgets for the rescaled solution (unit constant).
double predicted_partition_count(double N, double s);

/// N^{1/2}, floored, at least 1 (1 for infinite N): little intervals per big interval.
std::size_t default_little_per_big(double N);

}  // namespace nlslab
