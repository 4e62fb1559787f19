#include <gtest/gtest.h>

#include "nlslab/error.hpp"
#include "nlslab/field.hpp"
#include "test_util.hpp"

using namespace nlslab;
using nlslab::testing::kTwoPi;

TEST(Grid, OneDimensionalUnitLattice) {
  const Grid g = Grid::make(1, 8, kTwoPi);
  EXPECT_DOUBLE_EQ(g.dk(), 1.0);
  std::vector<int> ks;
  for (int j = 0; j < 8; ++j) ks.push_back(g.wave_index(j));
  std::sort(ks.begin(), ks.end());
  EXPECT_EQ(ks, (std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(g.nyquist(), 4.0);
}

TEST(Grid, CellVolume) {
  const Grid g = Grid::make(2, 64, 10.0);
  EXPECT_NEAR(g.cell_volume(), 0.0244140625, 1e-15);
  EXPECT_NEAR(g.cell_volume() * 64 * 64, 100.0, 1e-12);
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(Grid::make(3, 7, 1.0), PreconditionError);
  EXPECT_THROW(Grid::make(4, 8, 1.0), PreconditionError);
  EXPECT_THROW(Grid::make(0, 8, 1.0), PreconditionError);
  EXPECT_THROW(Grid::make(2, 4, 1.0), PreconditionError);
  EXPECT_THROW(Grid::make(2, 8, 0.0), PreconditionError);
  EXPECT_THROW(Grid::make(2, 8, -1.0), PreconditionError);
}

TEST(Grid, IndexRoundTrip) {
  const Grid g = Grid::make(3, 8, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.flat_index(g.axis_indices(i)), i);
  for (int k = -4; k < 4; ++k) EXPECT_EQ(g.wave_index(g.fft_index(k)), k);
}

TEST(Transform, ConstantFieldHasOnlyZeroMode) {
  const Grid g = Grid::make(2, 16, kTwoPi);
  const cplx c(1.5, -0.5);
  const SpectralField f = to_frequency(SpectralField(g, Repr::Physical, std::vector<cplx>(g.size(), c)));
  EXPECT_NEAR(std::abs(f[0] - c * 16.0), 0.0, 1e-12);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(std::abs(f[i]), 1e-13);
}

TEST(Transform, PlaneWaveHasSingleCoefficient) {
  const Grid g = Grid::make(2, 16, kTwoPi);
  const SpectralField f = to_frequency(plane_wave(g, 1.0, {3, -2, 0}));
  const std::size_t at = g.flat_index({g.fft_index(3), g.fft_index(-2), 0});
  EXPECT_NEAR(std::abs(f[at]), 16.0, 1e-12);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i != at) EXPECT_LT(std::abs(f[i]), 1e-12);
}

TEST(Transform, MatchesNaiveDft) {
  for (int dim : {1, 2}) {
    const Grid g = Grid::make(dim, 8, 3.0);
    const SpectralField u = nlslab::testing::random_field(g, 11);
    const auto oracle = nlslab::testing::naive_dft(u);
    const SpectralField f = to_frequency(u);
    EXPECT_LT(nlslab::testing::max_abs_diff(f.values(), oracle), 1e-13) << "dim " << dim;
  }
}

TEST(Transform, RoundTripAndParseval) {
  for (int dim : {1, 2, 3}) {
    const Grid g = Grid::make(dim, 16, 5.0);
    const SpectralField u = nlslab::testing::random_field(g, 3);
    const SpectralField f = to_frequency(u);
    EXPECT_NEAR(f.l2_norm_squared() / u.l2_norm_squared(), 1.0, 1e-12);
    const SpectralField back = to_physical(f);
    EXPECT_LT(l2_distance(back, u) / u.l2_norm(), 1e-12);
  }
}

TEST(Transform, RejectsWrongRepresentation) {
  const Grid g = Grid::make(1, 8, 1.0);
  EXPECT_THROW(to_frequency(SpectralField(g, Repr::Frequency)), PreconditionError);
  EXPECT_THROW(to_physical(SpectralField(g, Repr::Physical)), PreconditionError);
}

TEST(Field, ArithmeticRequiresMatchingGridAndRepr) {
  const Grid a = Grid::make(1, 8, 1.0);
  const Grid b = Grid::make(1, 8, 2.0);
  SpectralField f(a, Repr::Physical);
  EXPECT_THROW(f += SpectralField(b, Repr::Physical), PreconditionError);
  EXPECT_THROW(f += SpectralField(a, Repr::Frequency), PreconditionError);
}
