#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlslab/fit.hpp"

namespace nlslab {

struct SweepPoint {
  /// Ordered (name, value) parameters of this point.
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;

  double param(const std::string& name) const;
};

/// Closed acceptance band; infinite ends mean unbounded.
struct Band {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  /// What the band applies to: "fit.exponent" or a metric name.
  std::string subject = "fit.exponent";

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

/// Measured sides of an inequality over a sweep, plus fit and verdict.
struct EstimateReport {
  std::string name;
  std::vector<SweepPoint> points;
  std::optional<PowerLawFit> fit;
  Band band;
  std::vector<std::pair<std::string, double>> metrics;
  bool pass = false;

  double metric(const std::string& key) const;
  bool has_metric(const std::string& key) const;
  void set_metric(const std::string& key, double value);
  /// The value the band is checked against.
  double banded_value() const;
  /// Sets pass from the band and banded value (false if the value is missing or NaN).
  void evaluate();
};

/// {name, points:[{params, lhs, rhs, ratio}], fit:{exponent, stderr, constant, points}|null,
///  band:{lo, hi, subject}, metrics:{...}, pass}. Unbounded band ends are null.
std::string to_json(const EstimateReport& report);
/// Throws FormatError when the document violates the schema.
EstimateReport report_from_json(const std::string& text);
/// Flat CSV: parameter columns (union, first-seen order), then lhs,rhs,ratio.
std::string to_csv(const EstimateReport& report);

}  // namespace nlslab
