#include "nlslab/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

template <class U>
void put_le(std::ostream& out, U v) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <class U>
U get_le(std::istream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw FormatError("checkpoint truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_checkpoint(std::ostream& out, const SpectralField& field, double time) {
  const Grid& g = field.grid();
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put_le<std::uint32_t>(out, field.repr() == Repr::Physical ? 0u : 1u);
  put_f64(out, g.box_length());
  put_f64(out, time);
  put_le<std::uint64_t>(out, field.size());
  for (const auto& v : field.values()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw Error("checkpoint write failed");
}

Checkpoint read_checkpoint(std::istream& in) {
  char magic[sizeof(kCheckpointMagic)];
  if (!in.read(magic, sizeof(magic))) throw FormatError("checkpoint truncated");
  if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) throw FormatError("bad checkpoint magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));
  const auto dim = get_le<std::uint32_t>(in);
  const auto n = get_le<std::uint32_t>(in);
  const auto repr = get_le<std::uint32_t>(in);
  if (repr > 1) throw FormatError("bad checkpoint representation tag");
  const double L = get_f64(in);
  const double time = get_f64(in);
  const auto count = get_le<std::uint64_t>(in);

  Grid grid = [&] {
    try {
      return Grid::make(static_cast<int>(dim), static_cast<int>(n), L);
    } catch (const PreconditionError& e) {
      throw FormatError(std::string("bad checkpoint grid: ") + e.what());
    }
  }();
  if (count != grid.size()) throw FormatError("checkpoint value count does not match grid");

  std::vector<cplx> values(count);
  for (auto& v : values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  return {SpectralField(grid, repr == 0 ? Repr::Physical : Repr::Frequency, std::move(values)), time};
}

void save_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_checkpoint(out, field, time);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace nlslab
