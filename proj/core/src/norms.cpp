#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

bool is_admissible(double p, double q, int dim) {
  if (!(p >= 2.0) || !(q >= 2.0)) return false;
  const double lhs = std::isinf(p) ? 0.0 : 2.0 / p;
  const double rhs = dim * (0.5 - (std::isinf(q) ? 0.0 : 1.0 / q));
  return std::abs(lhs - rhs) <= 1e-12;
}

std::vector<ExponentPair> default_pairs(int dim) {
  switch (dim) {
    case 1:
      return {{kInf, 2.0}, {4.0, kInf}, {8.0, 4.0}, {6.0, 6.0}, {12.0, 3.0}};
    case 2:
      return {{kInf, 2.0}, {4.0, 4.0}, {3.0, 6.0}, {6.0, 3.0}, {8.0, 8.0 / 3.0}};
    case 3:
      return {{kInf, 2.0}, {2.0, 6.0}, {4.0, 3.0}, {6.0, 18.0 / 7.0}, {10.0, 30.0 / 13.0}};
    default:
      throw PreconditionError("default_pairs needs dim in {1,2,3}");
  }
}

double dual_exponent(double p) noexcept {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::vector<double> spatial_norms(const SpectralField& f, std::span<const double> qs, const Derivative& derivative,
                                  std::span<const MultiplierSpec> pre) {
  SpectralField g = apply_multipliers(as_frequency(f), pre);
  std::vector<double> mag;
  switch (derivative.kind) {
    case Derivative::Kind::None:
      mag = detail::magnitudes(to_physical(std::move(g)));
      break;
    case Derivative::Kind::Grad: {
      auto comps = gradient(g);
      for (auto& c : comps) c = to_physical(std::move(c));
      mag = detail::magnitudes(comps);
      break;
    }
    case Derivative::Kind::Frac:
      mag = detail::magnitudes(to_physical(frac_derivative(std::move(g), derivative.order)));
      break;
    case Derivative::Kind::Bessel:
      mag = detail::magnitudes(to_physical(bessel_derivative(std::move(g), derivative.order)));
      break;
  }
  std::vector<double> out;
  out.reserve(qs.size());
  for (double q : qs) {
    if (!(q >= 1.0)) throw PreconditionError("spatial exponent q must be >= 1");
    out.push_back(detail::lq_of_magnitudes(mag, f.grid().cell_volume(), q));
  }
  return out;
}

double temporal_norm(std::span<const double> times, std::span<const double> values, double p) {
  if (times.size() != values.size()) throw PreconditionError("times and values differ in length");
  if (!(p >= 1.0)) throw PreconditionError("time exponent p must be >= 1");
  if (values.empty()) return 0.0;
  if (std::isinf(p)) return *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j)
    sum += 0.5 * (times[j] - times[j - 1]) * (std::pow(values[j - 1], p) + std::pow(values[j], p));
  return std::pow(sum, 1.0 / p);
}

namespace {

void require_snapshots(const Trajectory& traj) {
  if (traj.snapshots.size() != traj.times.size() || traj.snapshots.empty())
    throw PreconditionError("trajectory has no stored snapshots");
}

void require_admissible(std::span<const ExponentPair> pairs, int dim) {
  if (pairs.empty()) throw PreconditionError("empty exponent pair set");
  for (const auto& pr : pairs) {
    if (!is_admissible(pr.p, pr.q, dim)) {
      std::ostringstream os;
      os << "pair (" << pr.p << ", " << pr.q << ") is not admissible in dimension " << dim;
      throw PreconditionError(os.str());
    }
  }
}

}  // namespace

double mixed_norm(const Trajectory& traj, const NormSpec& spec, double t1, double t2) {
  require_snapshots(traj);
  const auto [i1, i2] = window_indices(traj.times, t1, t2);
  const double q = spec.q;
  std::vector<double> times, values;
  for (std::size_t i = i1; i <= i2; ++i) {
    times.push_back(traj.times[i]);
    values.push_back(spatial_norms(traj.snapshots[i], std::span<const double>(&q, 1), spec.derivative, spec.pre)[0]);
  }
  return temporal_norm(times, values, spec.p);
}

double s0_norm(const Trajectory& traj, double t1, double t2, std::span<const ExponentPair> pairs,
               const Derivative& derivative, std::span<const MultiplierSpec> pre) {
  require_snapshots(traj);
  require_admissible(pairs, traj.snapshots.front().grid().dim());
  const auto [i1, i2] = window_indices(traj.times, t1, t2);
  MixedNormAccumulator acc({pairs.begin(), pairs.end()}, derivative, {pre.begin(), pre.end()});
  for (std::size_t i = i1; i <= i2; ++i) acc.add(traj.times[i], traj.snapshots[i]);
  return acc.s0();
}

MixedNormAccumulator::MixedNormAccumulator(std::vector<ExponentPair> pairs, Derivative derivative,
                                           std::vector<MultiplierSpec> pre)
    : pairs_(std::move(pairs)), derivative_(derivative), pre_(std::move(pre)) {
  for (const auto& pr : pairs_) {
    if (!(pr.p >= 1.0) || !(pr.q >= 1.0)) throw PreconditionError("exponents must be >= 1");
    if (std::find(qs_.begin(), qs_.end(), pr.q) == qs_.end()) qs_.push_back(pr.q);
  }
  series_.resize(qs_.size());
}

void MixedNormAccumulator::add(double t, const SpectralField& f) {
  if (!times_.empty() && !(t > times_.back())) throw PreconditionError("accumulator times must increase");
  const auto norms = spatial_norms(f, qs_, derivative_, pre_);
  times_.push_back(t);
  for (std::size_t k = 0; k < qs_.size(); ++k) series_[k].push_back(norms[k]);
}

double MixedNormAccumulator::norm(std::size_t pair_index) const {
  const auto& pr = pairs_.at(pair_index);
  const auto k = static_cast<std::size_t>(std::find(qs_.begin(), qs_.end(), pr.q) - qs_.begin());
  return temporal_norm(times_, series_[k], pr.p);
}

double MixedNormAccumulator::s0() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) m = std::max(m, norm(i));
  return m;
}

}  // namespace nlslab
