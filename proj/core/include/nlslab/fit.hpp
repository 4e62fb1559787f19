#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace nlslab {

struct PowerLawFit {
  double exponent;
  double constant;
  /// Standard error of the fitted exponent (0 for three exact points).
  double std_error;
  std::size_t points;
};

/// Least squares of log y on log x: y ~ constant * x^exponent.
/// Throws PreconditionError with fewer than 3 points, repeated x, x <= 0, or
/// y <= 0 (the message counts the rejected points).
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace nlslab
