#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nlslab/partition.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

/// Snapshot-aligned scalar channels.
struct DiagnosticSeries {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> channels;
};

inline constexpr std::array<const char*, 7> kDiagnosticColumns = {"t",  "mass", "energy", "energy_Iu",
                                                                 "l4x", "hs",   "h_half"};

/// Uses the trajectory's recorded channels, computing any that are missing.
DiagnosticSeries diagnostic_series(const Trajectory& traj);

/// CSV with header t,mass,energy,energy_Iu,l4x,hs,h_half; values round-trip exactly.
void write_diagnostics_csv(std::ostream& out, const DiagnosticSeries& series);
/// Throws FormatError on a header or row that does not match the schema.
DiagnosticSeries read_diagnostics_csv(std::istream& in);

/// {"epsilon", "breakpoints", "l4", "over_budget", "layers": {"little_per_big", "big_breakpoints"}}
std::string partition_to_json(const IntervalPartition& partition);
/// Throws FormatError when the document does not match the schema above.
IntervalPartition partition_from_json(const std::string& text);

/// Shortest decimal representation that round-trips (std::to_chars).
std::string format_double(double v);

}  // namespace nlslab
