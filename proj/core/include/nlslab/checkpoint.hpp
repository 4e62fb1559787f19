#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nlslab/field.hpp"

namespace nlslab {

/// Binary checkpoint layout, all little-endian:
///
///   offset  size  content
///        0     8  magic "NLSLABCK"
///        8     4  u32 format version (1)
///       12     4  u32 dim
///       16     4  u32 n
///       20     4  u32 repr (0 = Physical, 1 = Frequency)
///       24     8  f64 box_length
///       32     8  f64 time
///       40     8  u64 value count (n^dim)
///       48   16k  count pairs of f64 (real, imag), row-major
inline constexpr char kCheckpointMagic[8] = {'N', 'L', 'S', 'L', 'A', 'B', 'C', 'K'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  SpectralField field;
  double time;
};

void write_checkpoint(std::ostream& out, const SpectralField& field, double time);
/// Throws FormatError on bad magic, version, or truncated data.
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace nlslab
