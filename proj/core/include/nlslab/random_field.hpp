#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <variant>

#include "nlslab/field.hpp"

namespace nlslab {

/// Fourier support lo <= |xi| <= hi.
struct Annulus {
  double lo;
  double hi;
};

/// |xi|^{-(s + dim/2 + margin)} magnitudes: in H^s, just outside H^{s+2 margin}.
struct SobolevDecay {
  double s;
  double margin = 0.01;
};

enum class PhaseMode {
  /// Independent uniform phases; the field spreads over the whole box.
  Random,
  /// Phases exp(-i xi.x0) around a random center x0 with random radial
  /// weights in [0.75, 1.25]; the field is a coherent packet at x0.
  Focused,
};

struct RandomFieldSpec {
  std::variant<Annulus, SobolevDecay> support = SobolevDecay{0.76};
  /// Sup norm of the generated physical field (0 gives the zero field).
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  PhaseMode phases = PhaseMode::Random;
  /// Width of a Gaussian envelope centered in the box; 0 disables it.
  double envelope_width = 0.0;
};

/// Deterministic uniform doubles on [0,1) from a 64-bit Mersenne twister.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Physical-repr field drawn from the spec; bit-reproducible for a given seed.
/// Throws PreconditionError when the annulus leaves the lattice or is empty.
SpectralField make_random_field(const Grid& grid, const RandomFieldSpec& spec);

/// A exp(-|x - c|^2 / (2 w^2)) exp(i k.x) with c the box center; k in lattice units.
SpectralField gaussian_bump(const Grid& grid, double amplitude, double width, const std::array<int, 3>& k = {0, 0, 0});

/// A exp(i xi.x) for the lattice mode k.
SpectralField plane_wave(const Grid& grid, double amplitude, const std::array<int, 3>& k);

}  // namespace nlslab
