#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nlslab/multiplier.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Derivative applied to each snapshot before the spatial norm.
struct Derivative {
  enum class Kind { None, Grad, Frac, Bessel };
  Kind kind = Kind::None;
  double order = 0.0;

  static Derivative none() { return {}; }
  /// Full gradient; the spatial norm is taken of the pointwise magnitude.
  static Derivative grad() { return {Kind::Grad, 1.0}; }
  static Derivative frac(double order) { return {Kind::Frac, order}; }
  static Derivative bessel(double s) { return {Kind::Bessel, s}; }
};

/// Mixed space-time norm L^p_t L^q_x of (derivative o pre) u.
struct NormSpec {
  double p = 2.0;
  double q = 2.0;
  Derivative derivative{};
  std::vector<MultiplierSpec> pre{};
};

struct ExponentPair {
  double p;
  double q;

  bool operator==(const ExponentPair&) const = default;
};

/// Strichartz admissibility 2/p = dim (1/2 - 1/q), tolerance 1e-12; needs p, q >= 2.
bool is_admissible(double p, double q, int dim = 3);

/// Finite sample of admissible pairs standing in for the S^0 supremum.
/// dim 3: (inf,2) (2,6) (4,3) (6,18/7) (10,30/13).
std::vector<ExponentPair> default_pairs(int dim);

/// Dual exponent p/(p-1) (1 <-> inf).
double dual_exponent(double p) noexcept;

/// Spatial norms of (derivative o pre) f for several q at once.
std::vector<double> spatial_norms(const SpectralField& f, std::span<const double> qs, const Derivative& derivative,
                                  std::span<const MultiplierSpec> pre = {});

/// L^p over time of a sampled nonnegative series: max for p = inf, otherwise
/// composite trapezoid of values^p then the 1/p power.
double temporal_norm(std::span<const double> times, std::span<const double> values, double p);

double mixed_norm(const Trajectory& traj, const NormSpec& spec, double t1, double t2);

/// max over pairs of the mixed norms; throws PreconditionError on a
/// non-admissible pair in the grid's dimension.
double s0_norm(const Trajectory& traj, double t1, double t2, std::span<const ExponentPair> pairs,
               const Derivative& derivative = {}, std::span<const MultiplierSpec> pre = {});

/// Accumulates per-snapshot spatial norms so S^0-type norms can be taken
/// without storing snapshots.
class MixedNormAccumulator {
 public:
  MixedNormAccumulator(std::vector<ExponentPair> pairs, Derivative derivative, std::vector<MultiplierSpec> pre);

  void add(double t, const SpectralField& f);
  double norm(std::size_t pair_index) const;
  /// max over all pairs.
  double s0() const;
  const std::vector<ExponentPair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<ExponentPair> pairs_;
  std::vector<double> qs_;
  Derivative derivative_;
  std::vector<MultiplierSpec> pre_;
  std::vector<double> times_;
  std::vector<std::vector<double>> series_;
};

}  // namespace nlslab
