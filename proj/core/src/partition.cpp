#include "nlslab/partition.hpp"

#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"

namespace nlslab {

std::vector<double> IntervalPartition::big_breakpoints() const {
  std::vector<double> out;
  out.reserve(big_breaks.size());
  for (auto i : big_breaks) out.push_back(breakpoints.at(i));
  return out;
}

IntervalPartition partition_l4_density(std::span<const double> times, std::span<const double> density,
                                       double epsilon) {
  if (!(epsilon > 0.0)) throw PreconditionError("partition epsilon must be > 0");
  if (times.size() != density.size() || times.empty())
    throw PreconditionError("partition needs matching, non-empty times and density");

  IntervalPartition out;
  out.epsilon = epsilon;
  const double budget = std::pow(epsilon, 4);
  out.breakpoints.push_back(times[0]);

  auto close = [&](std::size_t end, double integral, bool over) {
    out.breakpoints.push_back(times[end]);
    out.l4.push_back(std::pow(integral, 0.25));
    out.over_budget.push_back(over);
  };

  std::size_t start = 0;
  double acc = 0.0;
  for (std::size_t j = 1; j < times.size(); ++j) {
    const double seg = 0.5 * (times[j] - times[j - 1]) * (density[j - 1] + density[j]);
    if (acc + seg <= budget) {
      acc += seg;
      continue;
    }
    if (j - 1 > start) {
      close(j - 1, acc, false);
      start = j - 1;
      acc = 0.0;
      --j;  // re-examine the same step from the new start
      continue;
    }
    close(j, seg, true);
    start = j;
    acc = 0.0;
  }
  if (start + 1 < times.size() || out.l4.empty()) close(times.size() - 1, acc, false);
  return group_layers(std::move(out), 1);
}

IntervalPartition partition_by_l4(const Trajectory& traj, double epsilon, double t1, double t2) {
  const auto [i1, i2] = window_indices(traj.times, t1, t2);
  const auto it = traj.channels.find(channel::l4x);
  const bool have_channel = it != traj.channels.end() && it->second.size() == traj.times.size();
  if (!have_channel && traj.snapshots.size() != traj.times.size())
    throw PreconditionError("trajectory has neither an l4x channel nor snapshots");
  std::vector<double> times, density;
  for (std::size_t i = i1; i <= i2; ++i) {
    const double l4 = have_channel ? it->second[i] : lq_norm(traj.snapshots[i], 4.0);
    times.push_back(traj.times[i]);
    density.push_back(std::pow(l4, 4));
  }
  return partition_l4_density(times, density, epsilon);
}

IntervalPartition group_layers(IntervalPartition little, std::size_t little_per_big) {
  if (little_per_big < 1) throw PreconditionError("little_per_big must be >= 1");
  little.little_per_big = little_per_big;
  little.big_breaks.clear();
  const std::size_t count = little.interval_count();
  for (std::size_t i = 0; i < count; i += little_per_big) little.big_breaks.push_back(i);
  little.big_breaks.push_back(count);
  return little;
}

IntervalPartition double_layer_partition(const Trajectory& traj, double epsilon, std::size_t little_per_big, double t1,
                                         double t2) {
  return group_layers(partition_by_l4(traj, epsilon, t1, t2), little_per_big);
}

double predicted_partition_count(double N, double s) {
  if (!(s > 0.5 && s < 1.0)) throw PreconditionError("predicted_partition_count needs s ∈ (1/2, 1)");
  return std::pow(N, 3.0 * (1.0 - s) / (2.0 * s - 1.0));
}

std::size_t default_little_per_big(double N) {
  if (!(N >= 1.0) || !std::isfinite(N)) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(N))));
}

}  // namespace nlslab
