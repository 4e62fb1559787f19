#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/error.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/parallel.hpp"
#include "test_util.hpp"

using namespace nlslab;
using nlslab::testing::kTwoPi;

TEST(IOperatorRatios, LowFrequencyFieldSatisfiesGradientBoundWithConstantOne) {
  const Grid g = Grid::make(2, 64, kTwoPi);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralField u = make_random_field(g, {Annulus{0.0, 4.0}, 1.0, seed});
    // |xi| <= N: m = 1 and |xi| <= N^{1-s} |xi|^s there.
    EXPECT_LE(i_operator_ratios(u, 4.0, 0.7, 4.0).ratio[0], 1.0 + 1e-12);
  }
}

TEST(IOperatorRatios, PlaneWaveAtFourN) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const double N = 2.0, s = 0.6, A = 0.3;
  const SpectralField u = plane_wave(g, A, {8, 0, 0});
  const auto r = i_operator_ratios(u, N, s, N);
  // m(4N) = (1/4)^{1-s}, so ||grad I u|| = 4N (1/4)^{1-s} A sqrt(V).
  const double expected = 4.0 * N * std::pow(0.25, 1.0 - s) * A * std::sqrt(g.volume());
  EXPECT_NEAR(r.lhs[0], expected, 1e-10 * expected);
  EXPECT_NEAR(r.lhs[1], std::pow(65.0, s / 2.0) * A * std::sqrt(g.volume()), 1e-10);
}

TEST(IOperatorRatios, AmplitudeInvariant) {
  const Grid g = Grid::make(2, 64, kTwoPi);
  const SpectralField u = nlslab::testing::random_field(g, 3);
  const auto a = i_operator_ratios(u, 4.0, 0.75, 4.0);
  const auto b = i_operator_ratios(u * cplx(0.0, 19.0), 4.0, 0.75, 4.0);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(a.ratio[k], b.ratio[k], 1e-12 * a.ratio[k]);
}

TEST(VerifyIOperatorBounds, ReportShapeAndDeterminismAcrossWorkers) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const std::vector<double> Ns = {1.0, 2.0, 4.0};
  IOperatorBoundsOptions opts;
  opts.workers = 1;
  const auto a = verify_i_operator_bounds(g, Ns, 0.75, 10, opts);
  opts.workers = 4;
  const auto b = verify_i_operator_bounds(g, Ns, 0.75, 10, opts);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.points.size(), 12u);
  EXPECT_LE(a.metric("amplitude_invariance_error"), 1e-12);
  EXPECT_THROW(verify_i_operator_bounds(g, Ns, 0.75, 9), PreconditionError);
  EXPECT_THROW(verify_i_operator_bounds(g, Ns, 1.0, 10), PreconditionError);
}

TEST(Strichartz, MassPairGivesRatioOne) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const SpectralField u = nlslab::testing::random_field(g, 8);
  const std::vector<ExponentPair> pairs = {{kInf, 2.0}};
  EXPECT_NEAR(strichartz_ratio(u, 0.3, pairs, 16), 1.0, 1e-12);
}

TEST(Strichartz, PlaneWaveClosedForm) {
  // |e^{it Lap} A e^{ik.x}| = A everywhere, so ||.||_{L^p L^q} = T^{1/p} A V^{1/q}.
  const Grid g = Grid::make(2, 32, kTwoPi);
  const double A = 0.7, T = 0.4;
  const SpectralField u = plane_wave(g, A, {3, -2, 0});
  const std::vector<ExponentPair> pairs = {{4.0, 4.0}};
  const double expected = std::pow(T, 0.25) * A * std::pow(g.volume(), 0.25) / u.l2_norm();
  EXPECT_NEAR(strichartz_ratio(u, T, pairs, 8), expected, 1e-12);
}

TEST(Bilinear, PlaneWaveClosedForm) {
  const Grid g = Grid::make(2, 64, kTwoPi);
  const double Au = 0.5, Av = 1.5, T = 0.2;
  const SpectralField u = plane_wave(g, Au, {1, 0, 0});
  const SpectralField v = plane_wave(g, Av, {0, 9, 0});
  EXPECT_NEAR(bilinear_norm(u, v, T, 10), Au * Av * std::sqrt(T * g.volume()), 1e-10);
}

TEST(Bilinear, RequiresSeparatedScales) {
  const Grid g = Grid::make(2, 64, kTwoPi);
  EXPECT_THROW(bilinear_experiment(g, 2.0, 8.0, 0.1), PreconditionError);
  EXPECT_EQ(bilinear_time_samples(1.0, 8.0, 1e-6, 4.0), 4);
  EXPECT_DOUBLE_EQ(bilinear_horizon(g, 16.0), kTwoPi / 64.0);
}

TEST(Bilinear, ExperimentIsDeterministic) {
  const Grid g = Grid::make(2, 64, kTwoPi);
  BilinearOptions opts;
  opts.trials = 2;
  const auto a = bilinear_experiment(g, 1.0, 8.0, 0.0, opts);
  opts.workers = 2;
  const auto b = bilinear_experiment(g, 1.0, 8.0, 0.0, opts);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_GT(a.metric("max_ratio"), 0.0);
}

namespace {

SolverConfig small_config() {
  SolverConfig c;
  c.grid = Grid::make(2, 32, kTwoPi);
  c.dt = 0.01;
  c.t_end = 0.1;
  c.N = 4.0;
  c.s = 0.75;
  c.epsilon = 1.0;
  return c;
}

}  // namespace

TEST(Lwp, ZeroDataPasses) {
  const SolverConfig c = small_config();
  const auto r = lwp_check(c, SpectralField(c.grid, Repr::Physical));
  EXPECT_EQ(r.metric("l4_norm"), 0.0);
  EXPECT_EQ(r.metric("grad_Iu_s0"), 0.0);
  EXPECT_EQ(r.metric("l6_bound_lhs"), 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Lwp, BudgetViolationThrows) {
  SolverConfig c = small_config();
  c.epsilon = 1e-3;
  EXPECT_THROW(lwp_check(c, gaussian_bump(c.grid, 0.5, 1.0)), BudgetError);
}

TEST(Smoothing, LinearFlowHasNoDuhamelTerm) {
  SolverConfig c = small_config();
  c.nonlinearity_on = false;
  const std::vector<double> Ns = {1.0, 2.0, 4.0};
  const auto r = smoothing_sweep(c, nlslab::testing::random_field(c.grid, 2, 0.3), Ns);
  for (const auto& p : r.points) EXPECT_LT(p.lhs, 1e-12);
}

TEST(Smoothing, TailShrinksWithThreshold) {
  SolverConfig c = small_config();
  c.N = 1.0;
  const std::vector<double> Ns = {1.0, 2.0, 4.0};
  const auto r = smoothing_sweep(c, nlslab::testing::random_field(c.grid, 2, 0.5), Ns);
  EXPECT_EQ(r.metric("linf2_monotone"), 1.0);
  ASSERT_TRUE(r.fit.has_value());
  EXPECT_LT(r.fit->exponent, 0.0);
}

TEST(AlmostConservation, IdentityPointMatchesControl) {
  SolverConfig c = small_config();
  c.dt = 1e-3;
  const std::vector<double> Ns = {2.0, 4.0, 8.0, 100.0};
  const auto r = almost_conservation_sweep(c, nlslab::testing::random_field(c.grid, 4, 0.3), Ns);
  ASSERT_EQ(r.points.size(), 4u);
  EXPECT_EQ(r.points.back().lhs, r.metric("control_increment"));
  EXPECT_LT(r.metric("control_increment"), 1e-6);
  EXPECT_LT(r.metric("max_step_mass_drift"), 1e-12);
}

TEST(NonlinearBands, ZeroFieldGivesZeroRatios) {
  const SolverConfig c = small_config();
  const std::vector<double> Ms = {1.0, 2.0, 8.0};
  const auto r = nonlinear_band_check(c, SpectralField(c.grid, Repr::Physical), Ms);
  for (const auto& p : r.points) EXPECT_EQ(p.ratio, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(NonlinearBands, SmallDataWithinBound) {
  const SolverConfig c = small_config();
  const std::vector<double> Ms = {1.0, 2.0, 4.0, 8.0};
  const auto r = nonlinear_band_check(c, gaussian_bump(c.grid, 0.3, 1.0), Ms);
  EXPECT_GT(r.metric("max_ratio_l2"), 0.0);
  EXPECT_LE(r.metric("max_ratio_l2"), 1.0);
}

TEST(Scattering, LinearPullbackRecoversInitialData) {
  SolverConfig c = small_config();
  c.nonlinearity_on = false;
  const SpectralField u0 = gaussian_bump(c.grid, 0.3, 1.0, {1, 0, 0});
  const auto prof = scattering_profile(evolve(c, u0), 0.05, 0.75);
  EXPECT_LT(l2_distance(prof.u_plus_pullback, u0), 1e-12);
  EXPECT_EQ(l2_distance(prof.u_plus, u0), 0.0);
  for (double r : prof.residuals) EXPECT_LT(r, 1e-12);
  EXPECT_THROW(scattering_profile(evolve(c, u0), 0.1, 0.75), PreconditionError);
}

TEST(Scattering, RoutesAgreeForSmallData) {
  SolverConfig c = small_config();
  c.dt = 1e-3;
  const SpectralField u0 = gaussian_bump(c.grid, 0.2, 1.0);
  const auto prof = scattering_profile(evolve(c, u0), 0.05, 0.75);
  EXPECT_LT(prof.route_difference, 1e-4);
  ASSERT_FALSE(prof.residuals.empty());
  EXPECT_NEAR(prof.residual_times.back(), 0.1, 1e-12);
}

TEST(ParallelMap, KeepsIndexOrder) {
  const auto out = parallel_map(100, 8, [](std::size_t i) { return i * i; });
  ASSERT_EQ(out.size(), 100u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
}

TEST(ParallelMap, RethrowsAfterAllJobsFinish) {
  std::atomic<int> ran{0};
  EXPECT_THROW(parallel_map(50, 4,
                            [&](std::size_t i) {
                              ++ran;
                              if (i == 7) throw std::runtime_error("job 7");
                              return i;
                            }),
               std::runtime_error);
  EXPECT_EQ(ran.load(), 50);
}
