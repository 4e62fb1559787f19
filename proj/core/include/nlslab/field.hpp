#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using cplx = std::complex<double>;

enum class Repr { Physical, Frequency };

/// Complex lattice function tagged with its representation.
///
/// Transforms are unitary (1/sqrt(n^dim) both ways), so sum |values|^2 is
/// representation-independent and integrals are cell_volume-weighted sums.
class SpectralField {
 public:
  SpectralField(Grid grid, Repr repr);
  SpectralField(Grid grid, Repr repr, std::vector<cplx> values);

  /// Samples f(x) at every lattice point.
  static SpectralField from_function(const Grid& grid,
                                     const std::function<cplx(const std::array<double, 3>&)>& f);

  const Grid& grid() const noexcept { return grid_; }
  Repr repr() const noexcept { return repr_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  cplx& operator[](std::size_t i) noexcept { return values_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Squared L^2 norm, cell_volume * sum |v|^2 (valid in either repr).
  double l2_norm_squared() const noexcept;
  double l2_norm() const noexcept;
  /// Largest |v| over the stored values.
  double max_abs() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(cplx scale) noexcept;

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, cplx scale) { return a *= scale; }
  friend SpectralField operator*(cplx scale, SpectralField a) { return a *= scale; }

  friend SpectralField to_frequency(SpectralField f);
  friend SpectralField to_physical(SpectralField f);

 private:
  void require_compatible(const SpectralField& other) const;

  Grid grid_;
  Repr repr_;
  std::vector<cplx> values_;
};

/// Unitary forward DFT. Throws PreconditionError unless f is Physical.
SpectralField to_frequency(SpectralField f);
/// Unitary inverse DFT. Throws PreconditionError unless f is Frequency.
SpectralField to_physical(SpectralField f);

/// Convert to the requested representation when needed.
SpectralField as_frequency(SpectralField f);
SpectralField as_physical(SpectralField f);
SpectralField as_repr(SpectralField f, Repr repr);

/// L^2 distance, computed in frequency space.
double l2_distance(const SpectralField& a, const SpectralField& b);

}  // namespace nlslab
