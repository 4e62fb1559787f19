#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace nlslab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBandFailure = 2;

struct Artifact {
  std::filesystem::path path;
  /// diagnostics_csv, report_json, report_csv, partition_json, checkpoint or manifest.
  std::string kind;
};

struct RunResult {
  int exit_code = kExitPass;
  /// Verdict of the declared band; empty for runs without one.
  std::optional<bool> pass;
  std::vector<Artifact> artifacts;
};

/// Runs the experiment, writes its artifacts and the manifest into
/// config.out, re-reads every artifact against its schema, and returns the
/// exit code (0 pass or no band, 2 band failure). Errors propagate as
/// exceptions; see write_error_json.
RunResult run(const RunConfig& config, std::ostream& log);

/// {"error": {"kind", "message"}}: the machine-readable failure record.
std::string error_json(const std::string& kind, const std::string& message);

/// Re-reads one artifact and throws FormatError when it violates its schema.
void validate_artifact(const Artifact& artifact);

}  // namespace nlslab::cli
