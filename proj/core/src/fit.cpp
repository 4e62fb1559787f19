#include "nlslab/fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nlslab/error.hpp"

namespace nlslab {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  std::size_t rejected = 0;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError("power-law fit needs x > 0");
    if (!(y > 0.0) || !std::isfinite(y)) {
      ++rejected;
      continue;
    }
    logs.emplace_back(std::log(x), std::log(y));
  }
  if (rejected > 0)
    throw PreconditionError("power-law fit rejected " + std::to_string(rejected) + " point(s) with y <= 0");
  if (logs.size() < 3) throw PreconditionError("power-law fit needs at least 3 points");
  for (std::size_t i = 0; i < logs.size(); ++i)
    for (std::size_t j = i + 1; j < logs.size(); ++j)
      if (logs[i].first == logs[j].first) throw PreconditionError("power-law fit needs distinct x values");

  const double n = static_cast<double>(logs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : logs) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (const auto& [lx, ly] : logs) {
    const double r = ly - (intercept + slope * lx);
    ssr += r * r;
  }
  return {slope, std::exp(intercept), std::sqrt(ssr / (n - 2.0) / sxx), logs.size()};
}

}  // namespace nlslab
