#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nlslab/norms.hpp"
#include "nlslab/random_field.hpp"
#include "nlslab/report.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

// ---------------------------------------------------------------------------
// I-operator bounds
// ---------------------------------------------------------------------------

/// Ratios lhs/rhs of the four I-operator bounds for one field at fixed time:
///   [0] ||grad I u||_2 / (N^{1-s} ||u||_{H^s})
///   [1] ||u||_{H^s} / ||I u||_{H^1}
///   [2] ||P_{>M} u||_2 / ((1/M + 1/(N^{1-s} M^s)) ||grad I u||_2)
///   [3] || |grad|^{1/2} P_{>M} u||_2 / ((M^{-1/2} + 1/(N^{1-s} M^{s-1/2})) ||grad I u||_2)
/// The high-frequency bounds are evaluated with (p, q) = (inf, 2) at one instant.
struct IOperatorRatios {
  std::array<double, 4> lhs{};
  std::array<double, 4> rhs{};
  std::array<double, 4> ratio{};
};
IOperatorRatios i_operator_ratios(const SpectralField& u, double N, double s, double M);

struct IOperatorBoundsOptions {
  std::uint64_t seed = 1;
  double margin = 0.01;
  /// Threshold M of the high-frequency bounds, as a multiple of N.
  double M_over_N = 1.0;
  /// Allowed relative deviation of each per-N constant from the sweep mean.
  double stability_band = 0.30;
  int workers = 1;
};

/// Random barely-H^s fields, trials per N; reports the max ratio per (N, bound).
/// Metrics: grad_bound_spread (band subject), amplitude_invariance_error.
EstimateReport verify_i_operator_bounds(const Grid& grid, std::span<const double> N_list, double s, int trials,
                                        const IOperatorBoundsOptions& options = {});

// ---------------------------------------------------------------------------
// Homogeneous Strichartz estimate
// ---------------------------------------------------------------------------

/// max over pairs of ||e^{it Lap} u0||_{L^p L^q([0,T])} / ||u0||_2, sampled
/// exactly at time_samples + 1 uniform instants.
double strichartz_ratio(const SpectralField& u0, double T, std::span<const ExponentPair> pairs, int time_samples);

struct StrichartzOptions {
  std::vector<ExponentPair> pairs;  // empty: default_pairs(dim)
  int time_samples = 64;
  int workers = 1;
};

EstimateReport strichartz_check(const Grid& grid, const RandomFieldSpec& u0, double T, int trials,
                                const StrichartzOptions& options = {});

// ---------------------------------------------------------------------------
// Bilinear estimate
// ---------------------------------------------------------------------------

/// ||(e^{it Lap} u0)(e^{it Lap} v0)||_{L^2_{t,x}([0,T])} by composite trapezoid on
/// `samples` uniform intervals.
double bilinear_norm(const SpectralField& u0, const SpectralField& v0, double T, int samples);

/// Samples resolving the fastest oscillation of the x-integrated product for
/// annulus data at N and M: bandwidth 16 N (M + N), samples_per_period per period.
int bilinear_time_samples(double N, double M, double T, double samples_per_period);

/// L / (4 M): the time for the fastest group velocity 4M of the M-annulus to
/// cross one box length, so high-frequency packets do not revisit their origin.
double bilinear_horizon(const Grid& grid, double M);

struct BilinearOptions {
  int trials = 2;
  std::uint64_t seed = 7;
  double samples_per_period = 4.0;
  int workers = 1;
  double exponent_lo = -0.65;
  double exponent_hi = -0.35;
};

/// Coherent annulus packets u0 (N <= |xi| <= 2N) and v0 (M <= |xi| <= 2M)
/// sharing a random center; records max ratio ||uv||_{L^2_{t,x}} / (||u0|| ||v0||).
/// Throws PreconditionError unless M >= 8N.
EstimateReport bilinear_experiment(const Grid& grid, double N, double M, double T,
                                   const BilinearOptions& options = {});
/// Sweeps M at fixed N and fits the M-exponent (>= 3 points for the fit).
EstimateReport bilinear_sweep(const Grid& grid, double N, std::span<const double> M_list, double T,
                              const BilinearOptions& options = {});

// ---------------------------------------------------------------------------
// Local well-posedness bounds
// ---------------------------------------------------------------------------

struct LwpOptions {
  std::vector<ExponentPair> pairs;  // empty: default_pairs(dim)
  /// Declared O(1) bound on the sampled ||grad I u||_{S^0}.
  double s0_bound = 10.0;
};

/// Runs the solver and records ||grad I u||_{S^0}, the L^6 L^{9/2} norm and its
/// bound (eps^{2/3} + N^{-1/2}) (||grad I u||_{S^0} + 1). Throws BudgetError
/// when ||u||_{L^4_{t,x}} > config.epsilon.
EstimateReport lwp_check(const SolverConfig& config, const SpectralField& u0, const LwpOptions& options = {});

// ---------------------------------------------------------------------------
// Smoothing of the Duhamel term
// ---------------------------------------------------------------------------

struct SmoothingOptions {
  std::vector<ExponentPair> pairs;  // empty: default_pairs(dim)
  /// Rescale u0 so ||grad I u0||_2 = 1 before the run.
  bool normalize_grad_Iu0 = false;
  double exponent_hi = -0.4;
};

/// For each projection threshold N in N_list: sampled S^0 norm of
/// P_{>N} grad I u^nl with I = I_{config.N}; fits the N-exponent.
EstimateReport smoothing_sweep(const SolverConfig& config, const SpectralField& u0, std::span<const double> N_list,
                               const SmoothingOptions& options = {});

// ---------------------------------------------------------------------------
// Almost conservation of the modified energy
// ---------------------------------------------------------------------------

struct AlmostConservationOptions {
  /// The constant c in P_{>cN}.
  double c = 0.5;
  double exponent_hi = -0.8;
  /// Bound on the true-energy increment (I = identity control).
  double control_threshold = 1e-8;
};

/// One run; for every N the sup increment of E(I_N u) over the window, the
/// reference quantity N^{-1} ||grad I P_{>cN} u||^2_{L^2 L^6}, and the
/// I = identity control. Passes when the fitted slope is in band and the
/// control increment is below threshold.
EstimateReport almost_conservation_sweep(const SolverConfig& config, const SpectralField& u0,
                                         std::span<const double> N_list, const AlmostConservationOptions& options = {});
EstimateReport almost_conservation_sweep(const SolverConfig& config, const RandomFieldSpec& u0_spec,
                                         std::span<const double> N_list, const AlmostConservationOptions& options = {});

// ---------------------------------------------------------------------------
// Nonlinear frequency-band estimates
// ---------------------------------------------------------------------------

struct BandCheckOptions {
  std::vector<ExponentPair> pairs;  // empty: default_pairs(dim)
};

/// Per M: ||P_M I(|u|^2 u)||_{L^2_{t,x}} against (1/M + 1/N) ||grad I u||^3_{S^0}
/// (points with norm = 2) and, for M <= N, ||P_M |u|^2 u||_{L^1 L^2} against
/// ||grad I u||^3_{S^0} / M (norm = 1). A zero rhs gives ratio 0.
EstimateReport nonlinear_band_check(const SolverConfig& config, const SpectralField& u0, std::span<const double> M_list,
                                    const BandCheckOptions& options = {});

// ---------------------------------------------------------------------------
// Scattering state
// ---------------------------------------------------------------------------

struct ScatteringProfile {
  /// u0 - i int_0^{t_end} e^{-i tau Lap} |u|^2 u dtau (trapezoid on snapshots);
  /// exactly u0 when the run had the nonlinearity off.
  SpectralField u_plus;
  /// e^{-i t_end Lap} u(t_end).
  SpectralField u_plus_pullback;
  /// ||u_plus - u_plus_pullback||_2 / ||u_plus_pullback||_2.
  double route_difference;
  std::vector<double> residual_times;
  /// ||<grad>^s (e^{it Lap} u_plus - u(t))||_2 at residual_times.
  std::vector<double> residuals;
};

/// Throws PreconditionError when tail_start >= t_end.
ScatteringProfile scattering_profile(const Trajectory& traj, double tail_start, double s);

}  // namespace nlslab
