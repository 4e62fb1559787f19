#include "nlslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "detail.hpp"
#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/partition.hpp"

namespace nlslab {
namespace {

std::vector<ExponentPair> pairs_or_default(const std::vector<ExponentPair>& pairs, int dim) {
  if (pairs.empty()) return default_pairs(dim);
  for (const auto& pr : pairs) {
    if (!is_admissible(pr.p, pr.q, dim)) {
      std::ostringstream os;
      os << "pair (" << pr.p << ", " << pr.q << ") is not admissible in dimension " << dim;
      throw PreconditionError(os.str());
    }
  }
  return pairs;
}

std::vector<double> sorted_positive(std::span<const double> values, const char* what) {
  if (values.empty()) throw PreconditionError(std::string(what) + " is empty");
  std::vector<double> out(values.begin(), values.end());
  for (double v : out)
    if (!(v > 0.0)) throw PreconditionError(std::string(what) + " entries must be > 0");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw PreconditionError(std::string(what) + " has repeated entries");
  return out;
}

double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

// The I-operator as a pre-multiplier list (empty when I is the identity).
std::vector<MultiplierSpec> i_operator(const SolverConfig& config) {
  if (config.i_is_identity()) return {};
  return {IOperator{config.N, config.s}};
}

void fit_if_possible(EstimateReport& report, const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 3) return;
  for (const auto& [x, y] : xy)
    if (!(y > 0.0)) return;
  report.fit = fit_power_law(xy);
}

SpectralField cubic_term(const SpectralField& freq) {
  SpectralField phys = to_physical(as_frequency(freq));
  for (auto& v : phys.values()) v *= std::norm(v);
  return to_frequency(std::move(phys));
}

}  // namespace

// ---------------------------------------------------------------------------

IOperatorRatios i_operator_ratios(const SpectralField& u, double N, double s, double M) {
  validate(IOperator{N, s}, u.grid().dim());
  if (!(M > 0.0)) throw PreconditionError("high-frequency threshold M must be > 0");
  const SpectralField freq = as_frequency(u);
  const auto norm2 = freq.grid().wave_norm2();
  double grad_I = 0.0, hs = 0.0, ih1 = 0.0, high = 0.0, high_half = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) {
    const double a = std::norm(freq[i]);
    if (a == 0.0) continue;
    const double r2 = norm2[i];
    const double r = std::sqrt(r2);
    const double m = symbol_m(r, N, s);
    const double p = 1.0 - cutoff_phi(r / M);
    grad_I += r2 * m * m * a;
    hs += std::pow(1.0 + r2, s) * a;
    ih1 += (1.0 + r2) * m * m * a;
    high += p * p * a;
    high_half += r * p * p * a;
  }
  const double dv = freq.grid().cell_volume();
  grad_I = std::sqrt(dv * grad_I);
  hs = std::sqrt(dv * hs);
  ih1 = std::sqrt(dv * ih1);
  high = std::sqrt(dv * high);
  high_half = std::sqrt(dv * high_half);

  const double Ns = std::pow(N, 1.0 - s);
  IOperatorRatios out;
  out.lhs = {grad_I, hs, high, high_half};
  out.rhs = {Ns * hs, ih1, (1.0 / M + 1.0 / (Ns * std::pow(M, s))) * grad_I,
             (1.0 / std::sqrt(M) + 1.0 / (Ns * std::pow(M, s - 0.5))) * grad_I};
  for (int b = 0; b < 4; ++b) out.ratio[b] = safe_ratio(out.lhs[b], out.rhs[b]);
  return out;
}

EstimateReport verify_i_operator_bounds(const Grid& grid, std::span<const double> N_list, double s, int trials,
                                        const IOperatorBoundsOptions& options) {
  if (trials < 10) throw PreconditionError("verify_i_operator_bounds needs trials >= 10");
  if (!(s > 0.5 && s < 1.0)) throw PreconditionError("verify_i_operator_bounds needs s ∈ (1/2, 1)");
  const auto Ns = sorted_positive(N_list, "N_list");

  struct Job {
    IOperatorRatios base;
    double scaled_ratio0;
  };
  const std::size_t T = static_cast<std::size_t>(trials);
  const auto results = parallel_map(Ns.size() * T, options.workers, [&](std::size_t job) {
    const std::size_t iN = job / T, trial = job % T;
    RandomFieldSpec spec;
    spec.support = SobolevDecay{s, options.margin};
    spec.seed = detail::derive_seed(options.seed, trial);
    const SpectralField u = make_random_field(grid, spec);
    const double N = Ns[iN];
    const double M = options.M_over_N * N;
    return Job{i_operator_ratios(u, N, s, M), i_operator_ratios(u * cplx(7.3), N, s, M).ratio[0]};
  });

  EstimateReport report;
  report.name = "i_operator_bounds";
  std::vector<double> grad_constants;
  double amp_err = 0.0;
  for (std::size_t iN = 0; iN < Ns.size(); ++iN) {
    for (int b = 0; b < 4; ++b) {
      SweepPoint best;
      best.params = {{"N", Ns[iN]}, {"bound", b + 1.0}};
      bool found = false;
      for (std::size_t t = 0; t < T; ++t) {
        const auto& r = results[iN * T + t].base;
        if (r.rhs[b] == 0.0) continue;
        if (!found || r.ratio[b] > best.ratio) {
          best.lhs = r.lhs[b];
          best.rhs = r.rhs[b];
          best.ratio = r.ratio[b];
          found = true;
        }
      }
      if (b == 0) grad_constants.push_back(best.ratio);
      report.points.push_back(std::move(best));
    }
    for (std::size_t t = 0; t < T; ++t) {
      const auto& r = results[iN * T + t];
      if (r.base.ratio[0] > 0.0)
        amp_err = std::max(amp_err, std::abs(r.scaled_ratio0 - r.base.ratio[0]) / r.base.ratio[0]);
    }
  }
  double mean = 0.0;
  for (double c : grad_constants) mean += c;
  mean /= static_cast<double>(grad_constants.size());
  double spread = 0.0;
  for (double c : grad_constants) spread = std::max(spread, std::abs(c / mean - 1.0));

  report.set_metric("grad_bound_mean_constant", mean);
  report.set_metric("grad_bound_spread", spread);
  report.set_metric("amplitude_invariance_error", amp_err);
  report.set_metric("trials", trials);
  report.band = {0.0, options.stability_band, "grad_bound_spread"};
  report.evaluate();
  report.pass = report.pass && amp_err <= 1e-12;
  return report;
}

// ---------------------------------------------------------------------------

double strichartz_ratio(const SpectralField& u0, double T, std::span<const ExponentPair> pairs, int time_samples) {
  if (!(T > 0.0)) throw PreconditionError("Strichartz check needs T > 0");
  if (time_samples < 1) throw PreconditionError("Strichartz check needs time_samples >= 1");
  const double norm0 = u0.l2_norm();
  if (norm0 == 0.0) return 0.0;
  MixedNormAccumulator acc({pairs.begin(), pairs.end()}, Derivative::none(), {});
  const SpectralField freq = as_frequency(u0);
  for (int j = 0; j <= time_samples; ++j) {
    const double t = T * j / time_samples;
    acc.add(t, free_evolve(freq, t));
  }
  return acc.s0() / norm0;
}

EstimateReport strichartz_check(const Grid& grid, const RandomFieldSpec& u0, double T, int trials,
                                const StrichartzOptions& options) {
  if (trials < 1) throw PreconditionError("strichartz_check needs trials >= 1");
  const auto pairs = pairs_or_default(options.pairs, grid.dim());
  const auto points = parallel_map(static_cast<std::size_t>(trials), options.workers, [&](std::size_t trial) {
    RandomFieldSpec spec = u0;
    spec.seed = detail::derive_seed(u0.seed, trial);
    const SpectralField f = make_random_field(grid, spec);
    SweepPoint p;
    p.params = {{"trial", static_cast<double>(trial)}, {"T", T}};
    p.rhs = f.l2_norm();
    p.ratio = strichartz_ratio(f, T, pairs, options.time_samples);
    p.lhs = p.ratio * p.rhs;
    return p;
  });
  EstimateReport report;
  report.name = "strichartz";
  report.points = points;
  double max_ratio = 0.0;
  for (const auto& p : points) max_ratio = std::max(max_ratio, p.ratio);
  report.set_metric("max_ratio", max_ratio);
  report.band = {0.0, kInf, "max_ratio"};
  report.evaluate();
  return report;
}

// ---------------------------------------------------------------------------

double bilinear_norm(const SpectralField& u0, const SpectralField& v0, double T, int samples) {
  if (!(T > 0.0)) throw PreconditionError("bilinear norm needs T > 0");
  if (samples < 1) throw PreconditionError("bilinear norm needs samples >= 1");
  if (!(u0.grid() == v0.grid())) throw PreconditionError("bilinear norm needs fields on one grid");
  const SpectralField uf = as_frequency(u0);
  const SpectralField vf = as_frequency(v0);
  const double dv = u0.grid().cell_volume();
  std::vector<double> times, values;
  for (int j = 0; j <= samples; ++j) {
    const double t = T * j / samples;
    const SpectralField u = to_physical(free_evolve(uf, t));
    const SpectralField v = to_physical(free_evolve(vf, t));
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += std::norm(u[i] * v[i]);
    times.push_back(t);
    values.push_back(std::sqrt(dv * sum));
  }
  return temporal_norm(times, values, 2.0);
}

int bilinear_time_samples(double N, double M, double T, double samples_per_period) {
  const double bandwidth = 16.0 * N * (M + N);
  return std::max(4, static_cast<int>(std::ceil(T * bandwidth * samples_per_period / (2.0 * std::numbers::pi))));
}

double bilinear_horizon(const Grid& grid, double M) { return grid.box_length() / (4.0 * M); }

namespace {

void require_separated(double N, double M) {
  if (!(N > 0.0)) throw PreconditionError("bilinear experiment needs N > 0");
  if (!(M >= 8.0 * N)) {
    std::ostringstream os;
    os << "bilinear experiment needs M >= 8N (N << M), got N=" << N << " M=" << M;
    throw PreconditionError(os.str());
  }
}

std::vector<SweepPoint> bilinear_points(const Grid& grid, double N, const std::vector<double>& Ms, double T,
                                        const BilinearOptions& options) {
  if (options.trials < 1) throw PreconditionError("bilinear experiment needs trials >= 1");
  for (double M : Ms) require_separated(N, M);
  const std::size_t trials = static_cast<std::size_t>(options.trials);
  const auto results = parallel_map(Ms.size() * trials, options.workers, [&](std::size_t job) {
    const double M = Ms[job / trials];
    // The same seed gives u0 and v0 the same packet center.
    const std::uint64_t seed = detail::derive_seed(options.seed, job % trials);
    RandomFieldSpec su{Annulus{N, 2.0 * N}, 1.0, seed, PhaseMode::Focused, 0.0};
    RandomFieldSpec sv{Annulus{M, 2.0 * M}, 1.0, seed, PhaseMode::Focused, 0.0};
    const SpectralField u0 = make_random_field(grid, su);
    const SpectralField v0 = make_random_field(grid, sv);
    const int samples = bilinear_time_samples(N, M, T, options.samples_per_period);
    SweepPoint p;
    p.lhs = bilinear_norm(u0, v0, T, samples);
    p.rhs = u0.l2_norm() * v0.l2_norm();
    p.ratio = safe_ratio(p.lhs, p.rhs);
    return p;
  });
  std::vector<SweepPoint> out;
  for (std::size_t iM = 0; iM < Ms.size(); ++iM) {
    SweepPoint best = results[iM * trials];
    for (std::size_t t = 1; t < trials; ++t)
      if (results[iM * trials + t].ratio > best.ratio) best = results[iM * trials + t];
    best.params = {{"N", N}, {"M", Ms[iM]}, {"T", T}};
    out.push_back(std::move(best));
  }
  return out;
}

}  // namespace

EstimateReport bilinear_experiment(const Grid& grid, double N, double M, double T, const BilinearOptions& options) {
  require_separated(N, M);
  if (!(T > 0.0)) T = bilinear_horizon(grid, M);
  EstimateReport report;
  report.name = "bilinear";
  report.points = bilinear_points(grid, N, {M}, T, options);
  report.set_metric("max_ratio", report.points.front().ratio);
  report.band = {0.0, kInf, "max_ratio"};
  report.evaluate();
  return report;
}

EstimateReport bilinear_sweep(const Grid& grid, double N, std::span<const double> M_list, double T,
                              const BilinearOptions& options) {
  const auto Ms = sorted_positive(M_list, "M_list");
  if (!(T > 0.0)) T = bilinear_horizon(grid, Ms.back());
  EstimateReport report;
  report.name = "bilinear";
  report.points = bilinear_points(grid, N, Ms, T, options);
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : report.points) xy.emplace_back(p.param("M"), p.ratio);
  fit_if_possible(report, xy);
  report.set_metric("T", T);
  report.band = {options.exponent_lo, options.exponent_hi, "fit.exponent"};
  report.evaluate();
  return report;
}

// ---------------------------------------------------------------------------

EstimateReport lwp_check(const SolverConfig& config, const SpectralField& u0, const LwpOptions& options) {
  config.validate();
  const auto pairs = pairs_or_default(options.pairs, config.grid.dim());
  MixedNormAccumulator grad_I(pairs, Derivative::grad(), i_operator(config));
  MixedNormAccumulator l6(std::vector<ExponentPair>{{6.0, 4.5}}, Derivative::none(), {});
  EvolveOptions eo;
  eo.store_snapshots = false;
  eo.observer = [&](double t, const SpectralField& u) {
    grad_I.add(t, u);
    l6.add(t, u);
  };
  const Trajectory traj = evolve(config, u0, eo);
  const double l4 = temporal_norm(traj.times, traj.channels.at(channel::l4x), 4.0);
  if (l4 > config.epsilon * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "||u||_{L^4_{t,x}} = " << l4 << " exceeds the budget epsilon = " << config.epsilon;
    throw BudgetError(os.str());
  }

  const double S = grad_I.s0();
  const double inv_sqrt_N = std::isinf(config.N) ? 0.0 : 1.0 / std::sqrt(config.N);
  SweepPoint p;
  p.params = {{"N", config.N}, {"epsilon", config.epsilon}};
  p.lhs = l6.norm(0);
  p.rhs = (std::pow(config.epsilon, 2.0 / 3.0) + inv_sqrt_N) * (S + 1.0);
  p.ratio = safe_ratio(p.lhs, p.rhs);

  EstimateReport report;
  report.name = "lwp";
  report.points = {p};
  report.set_metric("l4_norm", l4);
  report.set_metric("grad_Iu_s0", S);
  report.set_metric("l6_bound_lhs", p.lhs);
  report.set_metric("l6_bound_rhs", p.rhs);
  report.set_metric("l6_bound_ratio", p.ratio);
  report.set_metric("energy_Iu0", traj.channels.at(channel::energy_Iu).front());
  report.band = {0.0, options.s0_bound, "grad_Iu_s0"};
  report.evaluate();
  return report;
}

// ---------------------------------------------------------------------------

EstimateReport smoothing_sweep(const SolverConfig& config, const SpectralField& u0, std::span<const double> N_list,
                               const SmoothingOptions& options) {
  config.validate();
  const auto Ns = sorted_positive(N_list, "N_list");
  const auto pairs = pairs_or_default(options.pairs, config.grid.dim());
  const auto I = i_operator(config);

  SpectralField data = as_frequency(u0);
  const double grad_Iu0 = lq_norm(gradient(apply_multipliers(data, I)), 2.0);
  if (options.normalize_grad_Iu0 && grad_Iu0 > 0.0) data *= 1.0 / grad_Iu0;

  MixedNormAccumulator S_acc(pairs, Derivative::grad(), I);
  std::vector<MixedNormAccumulator> tails;
  for (double N : Ns) {
    auto pre = I;
    pre.push_back(CutoffHigh{N});
    tails.emplace_back(pairs, Derivative::grad(), std::move(pre));
  }
  EvolveOptions eo;
  eo.store_snapshots = false;
  eo.record_channels = false;
  eo.observer = [&](double t, const SpectralField& u) {
    S_acc.add(t, u);
    SpectralField nl = u;
    nl -= free_evolve(data, t);
    for (auto& acc : tails) acc.add(t, nl);
  };
  evolve(config, data, eo);

  const double S = S_acc.s0();
  EstimateReport report;
  report.name = "smoothing";
  std::vector<std::pair<double, double>> xy;
  for (std::size_t k = 0; k < Ns.size(); ++k) {
    SweepPoint p;
    p.params = {{"N", Ns[k]}};
    p.lhs = tails[k].s0();
    p.rhs = S + std::pow(S, 7);
    p.ratio = safe_ratio(p.lhs, p.rhs);
    xy.emplace_back(Ns[k], p.lhs);
    report.points.push_back(std::move(p));
  }
  fit_if_possible(report, xy);

  const auto linf2 = std::find_if(pairs.begin(), pairs.end(),
                                  [](const ExponentPair& pr) { return std::isinf(pr.p) && pr.q == 2.0; });
  if (linf2 != pairs.end()) {
    const auto idx = static_cast<std::size_t>(linf2 - pairs.begin());
    bool monotone = true;
    for (std::size_t k = 1; k < tails.size(); ++k)
      monotone = monotone && tails[k].norm(idx) <= tails[k - 1].norm(idx) * (1.0 + 1e-12);
    report.set_metric("linf2_monotone", monotone ? 1.0 : 0.0);
  }
  report.set_metric("grad_Iu_s0", S);
  report.set_metric("grad_Iu0_l2", grad_Iu0);
  report.set_metric("normalized", options.normalize_grad_Iu0 ? 1.0 : 0.0);
  report.set_metric("I_N", config.N);
  report.band = {-kInf, options.exponent_hi, "fit.exponent"};
  report.evaluate();
  return report;
}

// ---------------------------------------------------------------------------

EstimateReport almost_conservation_sweep(const SolverConfig& config, const SpectralField& u0,
                                         std::span<const double> N_list, const AlmostConservationOptions& options) {
  config.validate();
  if (!(options.c > 0.0)) throw PreconditionError("almost conservation needs c > 0");
  const auto Ns = sorted_positive(N_list, "N_list");

  std::vector<std::vector<double>> energies(Ns.size());
  std::vector<MixedNormAccumulator> refs;
  for (double N : Ns)
    refs.emplace_back(std::vector<ExponentPair>{{2.0, 6.0}}, Derivative::grad(),
                      std::vector<MultiplierSpec>{IOperator{N, config.s}, CutoffHigh{options.c * N}});
  EvolveOptions eo;
  eo.store_snapshots = false;
  eo.observer = [&](double t, const SpectralField& u) {
    for (std::size_t k = 0; k < Ns.size(); ++k) {
      energies[k].push_back(modified_energy(u, Ns[k], config.s));
      refs[k].add(t, u);
    }
  };
  const Trajectory traj = evolve(config, u0, eo);

  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const double control = spread(traj.channels.at(channel::energy));

  EstimateReport report;
  report.name = "almost_conservation";
  std::vector<std::pair<double, double>> xy;
  for (std::size_t k = 0; k < Ns.size(); ++k) {
    SweepPoint p;
    p.params = {{"N", Ns[k]}};
    p.lhs = spread(energies[k]);
    const double ref = refs[k].norm(0);
    p.rhs = ref * ref / Ns[k];
    p.ratio = safe_ratio(p.lhs, p.rhs);
    xy.emplace_back(Ns[k], p.lhs);
    report.points.push_back(std::move(p));
  }
  fit_if_possible(report, xy);

  std::vector<double> density;
  for (double v : traj.channels.at(channel::l4x)) density.push_back(std::pow(v, 4));
  const auto partition = partition_l4_density(traj.times, density, config.epsilon);
  report.set_metric("control_increment", control);
  report.set_metric("control_threshold", options.control_threshold);
  report.set_metric("l4_norm", temporal_norm(traj.times, traj.channels.at(channel::l4x), 4.0));
  report.set_metric("partition_count", static_cast<double>(partition.interval_count()));
  report.set_metric("c", options.c);
  report.set_metric("max_step_mass_drift", traj.max_step_mass_drift);
  report.band = {-kInf, options.exponent_hi, "fit.exponent"};
  report.evaluate();
  report.pass = report.pass && control < options.control_threshold;
  return report;
}

EstimateReport almost_conservation_sweep(const SolverConfig& config, const RandomFieldSpec& u0_spec,
                                         std::span<const double> N_list, const AlmostConservationOptions& options) {
  return almost_conservation_sweep(config, make_random_field(config.grid, u0_spec), N_list, options);
}

// ---------------------------------------------------------------------------

EstimateReport nonlinear_band_check(const SolverConfig& config, const SpectralField& u0, std::span<const double> M_list,
                                    const BandCheckOptions& options) {
  config.validate();
  const auto Ms = sorted_positive(M_list, "M_list");
  const auto pairs = pairs_or_default(options.pairs, config.grid.dim());
  const auto I = i_operator(config);

  MixedNormAccumulator S_acc(pairs, Derivative::grad(), I);
  std::vector<double> times;
  std::vector<std::vector<double>> band_I(Ms.size()), band_plain(Ms.size());
  EvolveOptions eo;
  eo.store_snapshots = false;
  eo.record_channels = false;
  eo.observer = [&](double t, const SpectralField& u) {
    S_acc.add(t, u);
    times.push_back(t);
    const SpectralField F = cubic_term(u);
    for (std::size_t k = 0; k < Ms.size(); ++k) {
      const SpectralField block = apply_multiplier(F, LPBlock{Ms[k]});
      band_plain[k].push_back(block.l2_norm());
      band_I[k].push_back(I.empty() ? block.l2_norm() : apply_multipliers(block, I).l2_norm());
    }
  };
  evolve(config, u0, eo);

  const double S = S_acc.s0();
  const double S3 = S * S * S;
  const double inv_N = std::isinf(config.N) ? 0.0 : 1.0 / config.N;
  EstimateReport report;
  report.name = "nonlinear_bands";
  double max_l2 = 0.0, max_l1l2 = 0.0;
  bool any_low = false;
  for (std::size_t k = 0; k < Ms.size(); ++k) {
    const double M = Ms[k];
    SweepPoint p;
    p.params = {{"M", M}, {"norm", 2.0}};
    p.lhs = temporal_norm(times, band_I[k], 2.0);
    p.rhs = (1.0 / M + inv_N) * S3;
    p.ratio = safe_ratio(p.lhs, p.rhs);
    max_l2 = std::max(max_l2, p.ratio);
    report.points.push_back(std::move(p));
    if (M <= config.N) {
      SweepPoint q;
      q.params = {{"M", M}, {"norm", 1.0}};
      q.lhs = temporal_norm(times, band_plain[k], 1.0);
      q.rhs = S3 / M;
      q.ratio = safe_ratio(q.lhs, q.rhs);
      max_l1l2 = std::max(max_l1l2, q.ratio);
      any_low = true;
      report.points.push_back(std::move(q));
    }
  }
  report.set_metric("grad_Iu_s0", S);
  report.set_metric("max_ratio_l2", max_l2);
  if (any_low) report.set_metric("max_ratio_l1l2", max_l1l2);
  report.band = {0.0, kInf, "max_ratio_l2"};
  report.evaluate();
  return report;
}

}  // namespace nlslab
