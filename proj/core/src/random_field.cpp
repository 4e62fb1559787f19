#include "nlslab/random_field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {

SpectralField make_random_field(const Grid& grid, const RandomFieldSpec& spec) {
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude))
    throw PreconditionError("random field amplitude must be finite and >= 0");
  if (!(spec.envelope_width >= 0.0)) throw PreconditionError("envelope_width must be >= 0");
  if (const auto* a = std::get_if<Annulus>(&spec.support)) {
    if (!(a->lo >= 0.0) || !(a->hi >= a->lo)) throw PreconditionError("annulus needs 0 <= lo <= hi");
    if (a->hi > grid.nyquist() * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "annulus outer radius " << a->hi << " exceeds the grid Nyquist frequency " << grid.nyquist();
      throw PreconditionError(os.str());
    }
  } else {
    const auto& d = std::get<SobolevDecay>(spec.support);
    if (!(d.margin >= 0.0)) throw PreconditionError("SobolevDecay margin must be >= 0");
  }

  Rng rng(spec.seed);
  std::array<double, 3> center{0, 0, 0};
  for (auto& c : center) c = rng.uniform() * grid.box_length();

  SpectralField f(grid, Repr::Frequency);
  const auto norm2 = grid.wave_norm2();
  bool any = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = std::sqrt(norm2[i]);
    double magnitude = 0.0;
    if (const auto* a = std::get_if<Annulus>(&spec.support)) {
      magnitude = (r >= a->lo && r <= a->hi) ? 1.0 : 0.0;
    } else {
      const auto& d = std::get<SobolevDecay>(spec.support);
      magnitude = r > 0.0 ? std::pow(r, -(d.s + 0.5 * grid.dim() + d.margin)) : 0.0;
    }
    const double draw = rng.uniform();
    if (magnitude == 0.0) continue;
    any = true;
    if (spec.phases == PhaseMode::Random) {
      f[i] = std::polar(magnitude, 2.0 * std::numbers::pi * draw);
    } else {
      const auto xi = grid.wave_vector(i);
      double phase = 0.0;
      for (int d = 0; d < grid.dim(); ++d) phase -= xi[d] * center[d];
      f[i] = std::polar(magnitude * (0.75 + 0.5 * draw), phase);
    }
  }
  if (!any) throw PreconditionError("random field support contains no lattice mode");

  SpectralField phys = to_physical(std::move(f));
  if (spec.envelope_width > 0.0) {
    const double half = 0.5 * grid.box_length();
    const double w2 = 2.0 * spec.envelope_width * spec.envelope_width;
    for (std::size_t i = 0; i < phys.size(); ++i) {
      const auto x = grid.position(i);
      double r2 = 0.0;
      for (int d = 0; d < grid.dim(); ++d) r2 += (x[d] - half) * (x[d] - half);
      phys[i] *= std::exp(-r2 / w2);
    }
  }
  const double sup = phys.max_abs();
  phys *= sup > 0.0 ? spec.amplitude / sup : 0.0;
  return phys;
}

SpectralField gaussian_bump(const Grid& grid, double amplitude, double width, const std::array<int, 3>& k) {
  if (!(width > 0.0)) throw PreconditionError("gaussian_bump needs width > 0");
  const double half = 0.5 * grid.box_length();
  const double dk = grid.dk();
  const int dim = grid.dim();
  return SpectralField::from_function(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0, phase = 0.0;
    for (int d = 0; d < dim; ++d) {
      r2 += (x[d] - half) * (x[d] - half);
      phase += dk * k[d] * x[d];
    }
    return std::polar(amplitude * std::exp(-r2 / (2.0 * width * width)), phase);
  });
}

SpectralField plane_wave(const Grid& grid, double amplitude, const std::array<int, 3>& k) {
  const double dk = grid.dk();
  const int dim = grid.dim();
  return SpectralField::from_function(grid, [&](const std::array<double, 3>& x) {
    double phase = 0.0;
    for (int d = 0; d < dim; ++d) phase += dk * k[d] * x[d];
    return std::polar(amplitude, phase);
  });
}

}  // namespace nlslab
