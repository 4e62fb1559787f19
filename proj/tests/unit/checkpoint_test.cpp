#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "nlslab/checkpoint.hpp"
#include "nlslab/error.hpp"
#include "test_util.hpp"

using namespace nlslab;

TEST(Checkpoint, RoundTripIsBitExact) {
  const Grid g = Grid::make(2, 16, 3.5);
  const SpectralField u = to_frequency(nlslab::testing::random_field(g, 41));
  std::stringstream buf;
  write_checkpoint(buf, u, 0.125);
  const Checkpoint c = read_checkpoint(buf);
  EXPECT_EQ(c.time, 0.125);
  EXPECT_TRUE(c.field.grid() == g);
  EXPECT_EQ(c.field.repr(), Repr::Frequency);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(c.field[i], u[i]);
}

TEST(Checkpoint, HeaderLayout) {
  const Grid g = Grid::make(3, 8, 2.0);
  SpectralField u(g, Repr::Physical);
  u[1] = cplx(1.0, -2.0);
  std::stringstream buf;
  write_checkpoint(buf, u, 0.5);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 48u + 16u * 512u);
  EXPECT_EQ(bytes.substr(0, 8), "NLSLABCK");
  const auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + i])) << (8 * i);
    return v;
  };
  const auto f64 = [&](std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[off + i])) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  };
  EXPECT_EQ(u32(8), 1u);
  EXPECT_EQ(u32(12), 3u);
  EXPECT_EQ(u32(16), 8u);
  EXPECT_EQ(u32(20), 0u);
  EXPECT_EQ(f64(24), 2.0);
  EXPECT_EQ(f64(32), 0.5);
  EXPECT_EQ(f64(48 + 16), 1.0);
  EXPECT_EQ(f64(48 + 24), -2.0);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const Grid g = Grid::make(1, 8, 1.0);
  std::stringstream buf;
  write_checkpoint(buf, SpectralField(g, Repr::Physical), 0.0);
  std::string bytes = buf.str();

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::stringstream a(bad_magic);
  EXPECT_THROW(read_checkpoint(a), FormatError);

  std::stringstream b(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(read_checkpoint(b), FormatError);

  std::string bad_version = bytes;
  bad_version[8] = 9;
  std::stringstream c(bad_version);
  EXPECT_THROW(read_checkpoint(c), FormatError);

  std::string bad_n = bytes;
  bad_n[16] = 7;
  std::stringstream d(bad_n);
  EXPECT_THROW(read_checkpoint(d), FormatError);
}
