#include <gtest/gtest.h>

#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/solver.hpp"
#include "test_util.hpp"

using namespace nlslab;
using nlslab::testing::kTwoPi;
using nlslab::testing::random_field;

namespace {

SolverConfig config_for(const Grid& g, double dt, double t_end, int stride = 1, bool nonlinear = true) {
  SolverConfig c;
  c.grid = g;
  c.dt = dt;
  c.t_end = t_end;
  c.snapshot_stride = stride;
  c.nonlinearity_on = nonlinear;
  return c;
}

}  // namespace

TEST(FreeEvolve, SingleModePhase) {
  const Grid g = Grid::make(2, 16, kTwoPi);
  const std::array<int, 3> k{3, -1, 0};
  const SpectralField u = plane_wave(g, 1.0, k);
  const double t = 0.37;
  const SpectralField v = free_evolve(u, t);
  const cplx rot = std::polar(1.0, -t * 10.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(v[i] - u[i] * rot), 1e-13);
}

TEST(FreeEvolve, IdentityAtZeroAndGroupProperty) {
  const Grid g = Grid::make(2, 32, 5.0);
  const SpectralField u = to_frequency(random_field(g, 31));
  const SpectralField z = free_evolve(u, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(z[i], u[i]);
  const SpectralField a = free_evolve(free_evolve(u, 0.3), 0.45);
  const SpectralField b = free_evolve(u, 0.75);
  EXPECT_LT(l2_distance(a, b) / u.l2_norm(), 1e-12);
}

TEST(FreeEvolve, PreservesSobolevNorms) {
  const Grid g = Grid::make(2, 32, 5.0);
  const SpectralField u = random_field(g, 32);
  const SpectralField v = free_evolve(u, 1.7);
  for (double s : {0.0, 0.5, 0.76, 1.0})
    EXPECT_NEAR(sobolev_norm(v, s, false) / sobolev_norm(u, s, false), 1.0, 1e-13);
}

TEST(NonlinearStep, ConstantField) {
  const Grid g = Grid::make(1, 8, 1.0);
  const double A = 0.8, dt = 0.05;
  const SpectralField c(g, Repr::Physical, std::vector<cplx>(g.size(), A));
  const SpectralField v = nonlinear_phase_step(c, dt);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(v[i] - A * std::polar(1.0, -dt * A * A)), 1e-15);
}

TEST(NonlinearStep, PreservesMagnitudes) {
  const Grid g = Grid::make(2, 32, 5.0);
  const SpectralField u = random_field(g, 33, 2.0);
  const SpectralField v = nonlinear_phase_step(u, 0.1);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(std::abs(v[i]), std::abs(u[i]), 1e-15);
  EXPECT_EQ(nonlinear_phase_step(SpectralField(g, Repr::Physical), 0.1).max_abs(), 0.0);
  EXPECT_THROW(nonlinear_phase_step(to_frequency(u), 0.1), PreconditionError);
}

TEST(Strang, LinearStepEqualsFreeEvolve) {
  const Grid g = Grid::make(2, 32, 5.0);
  const SpectralField u = to_frequency(random_field(g, 34));
  const SpectralField a = strang_step(u, 0.01, false);
  const SpectralField b = free_evolve(u, 0.01);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Strang, MassPerStep) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  SpectralField u = to_frequency(random_field(g, 35, 1.0));
  const double m0 = mass(u);
  for (int k = 0; k < 20; ++k) {
    u = strang_step(std::move(u), 0.01);
    EXPECT_NEAR(mass(u) / m0, 1.0, 1e-13);
  }
}

// Terminal error against a dt/8 reference shrinks about 4x per halving.
TEST(Strang, SecondOrderSelfConvergence) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const SpectralField u0 = gaussian_bump(g, 1.0, 0.8, {1, 0, 0});
  const double T = 0.5, dt = 0.02;
  const auto run = [&](double h) {
    EvolveOptions opts;
    opts.record_channels = false;
    return evolve(config_for(g, h, T, 1000000), u0, opts).snapshots.back();
  };
  const SpectralField ref = run(dt / 8);
  const double e1 = l2_distance(run(dt), ref);
  const double e2 = l2_distance(run(dt / 2), ref);
  EXPECT_GT(e1 / e2, 3.2);
  EXPECT_LT(e1 / e2, 4.8);
}

TEST(Evolve, ZeroDataStaysZero) {
  const Grid g = Grid::make(2, 16, kTwoPi);
  const Trajectory traj = evolve(config_for(g, 0.01, 0.1), SpectralField(g, Repr::Physical));
  ASSERT_EQ(traj.times.size(), 11u);
  for (const auto& s : traj.snapshots) EXPECT_EQ(s.max_abs(), 0.0);
  for (const auto& [name, series] : traj.channels)
    for (double v : series) EXPECT_EQ(v, 0.0) << name;
}

TEST(Evolve, LinearRunMatchesFreeEvolve) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const SpectralField u0 = plane_wave(g, 1.0, {5, 2, 0});
  const Trajectory traj = evolve(config_for(g, 0.01, 1.0, 10, false), u0);
  ASSERT_EQ(traj.times.size(), 11u);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    EXPECT_LT(l2_distance(traj.snapshots[i], free_evolve(u0, traj.times[i])) / u0.l2_norm(), 1e-12);
}

TEST(Evolve, SnapshotTimesAndChannels) {
  const Grid g = Grid::make(1, 32, kTwoPi);
  const Trajectory traj = evolve(config_for(g, 0.01, 0.25, 10), gaussian_bump(g, 0.5, 0.5));
  EXPECT_EQ(traj.times, (std::vector<double>{0.0, 0.1, 0.2, 0.25}));
  EXPECT_EQ(traj.steps_taken, 25);
  for (const auto& [name, series] : traj.channels) EXPECT_EQ(series.size(), traj.times.size()) << name;
  for (const auto& s : traj.snapshots) EXPECT_EQ(s.repr(), Repr::Frequency);
}

TEST(Evolve, StabilityCapIsAPrecondition) {
  const Grid g = Grid::make(1, 16, kTwoPi);
  EXPECT_THROW(evolve(config_for(g, 0.1, 1.0), gaussian_bump(g, 2.0, 1.0)), PreconditionError);
  EXPECT_NO_THROW(evolve(config_for(g, 0.1, 1.0, 1, false), gaussian_bump(g, 2.0, 1.0)));
}

TEST(SolverConfig, Validation) {
  const Grid g = Grid::make(1, 16, 1.0);
  SolverConfig c = config_for(g, 0.01, 0.105);
  EXPECT_THROW(c.validate(), PreconditionError);
  c = config_for(g, 0.01, 0.1);
  c.s = 0.4;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.s = 0.75;
  c.snapshot_stride = 0;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.snapshot_stride = 1;
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.i_is_identity());
  c.N = 2.0;
  EXPECT_FALSE(c.i_is_identity());
}

TEST(DuhamelSplit, SumIdentityAndLinearPart) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const SpectralField u0 = gaussian_bump(g, 0.8, 0.7);
  const Trajectory traj = evolve(config_for(g, 0.01, 0.5, 5), u0);
  const DuhamelSplit split = duhamel_split(traj);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    SpectralField sum = split.linear_part.snapshots[i];
    sum += split.nonlinear_part.snapshots[i];
    EXPECT_LT(l2_distance(sum, traj.snapshots[i]) / u0.l2_norm(), 1e-12);
    EXPECT_LT(l2_distance(split.linear_part.snapshots[i], free_evolve(u0, traj.times[i])), 1e-13);
  }
}

TEST(DuhamelSplit, LinearRunHasNoNonlinearPart) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const SpectralField u0 = random_field(g, 36);
  const DuhamelSplit split = duhamel_split(evolve(config_for(g, 0.01, 0.3, 3, false), u0));
  for (const auto& s : split.nonlinear_part.snapshots) EXPECT_LT(s.l2_norm() / u0.l2_norm(), 1e-12);
}

TEST(DuhamelSplit, NonlinearPartIsCubic) {
  const Grid g = Grid::make(2, 32, kTwoPi);
  const auto terminal_nl = [&](double A) {
    const Trajectory traj = evolve(config_for(g, 0.01, 0.5, 50), gaussian_bump(g, A, 0.7));
    return duhamel_split(traj).nonlinear_part.snapshots.back().l2_norm();
  };
  EXPECT_NEAR(terminal_nl(0.2) / terminal_nl(0.1), 8.0, 1.0);
}

TEST(Rescale, ThreeDimensionalNormFactors) {
  const Grid g = Grid::make(3, 16, kTwoPi);
  const SpectralField u = random_field(g, 37);
  const SpectralField v = rescale(u, 2.0);
  EXPECT_DOUBLE_EQ(v.grid().box_length(), 2 * kTwoPi);
  EXPECT_NEAR(v.l2_norm() / u.l2_norm(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sobolev_norm(v, 1.0, true) / sobolev_norm(u, 1.0, true), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Rescale, GeneralDimensionAndIdentity) {
  for (int dim : {1, 2}) {
    const Grid g = Grid::make(dim, 16, 3.0);
    const SpectralField u = random_field(g, 38);
    const double lambda = 4.0;
    const SpectralField v = rescale(u, lambda);
    EXPECT_NEAR(v.l2_norm() / u.l2_norm(), std::pow(lambda, (dim - 2) / 2.0), 1e-12);
    EXPECT_NEAR(sobolev_norm(v, 1.0, true) / sobolev_norm(u, 1.0, true), std::pow(lambda, (dim - 4) / 2.0), 1e-12);
    const SpectralField same = rescale(u, 1.0);
    EXPECT_TRUE(same.grid() == u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(same[i], u[i]);
  }
  EXPECT_THROW(rescale(random_field(Grid::make(1, 8, 1.0), 1), 3.0), PreconditionError);
}

TEST(ChooseLambda, Examples) {
  EXPECT_EQ(choose_lambda(256, 0.75), 256.0);
  EXPECT_EQ(choose_lambda(256, 5.0 / 6.0), 16.0);
  EXPECT_EQ(choose_lambda(256, 0.999), 1.0);
  EXPECT_THROW(choose_lambda(256, 0.5), PreconditionError);
  EXPECT_THROW(choose_lambda(256, 1.0), PreconditionError);
}
