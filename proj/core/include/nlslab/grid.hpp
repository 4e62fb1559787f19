#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nlslab {

/// Periodic lattice on the torus [0, L)^dim with n points per axis.
///
/// Wave vectors are xi = (2*pi/L) * k with integer k in [-n/2, n/2) per axis.
/// Flat indices are row-major (last axis fastest), matching FFTW.
class Grid {
 public:
  /// Throws PreconditionError unless dim in {1,2,3}, n a power of two >= 8, L > 0.
  static Grid make(int dim, int n, double box_length);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double box_length() const noexcept { return box_length_; }
  std::size_t size() const noexcept { return size_; }

  double cell_volume() const noexcept;
  double volume() const noexcept;
  /// Lattice spacing in frequency space, 2*pi/L.
  double dk() const noexcept;
  /// Largest per-axis wave number magnitude, dk * n/2.
  double nyquist() const noexcept;
  /// Largest |xi| on the lattice (the corner), nyquist * sqrt(dim).
  double max_wavenumber() const noexcept;

  /// Integer wave number for FFT index j along one axis.
  int wave_index(int j) const noexcept { return j < n_ / 2 ? j : j - n_; }
  /// FFT index along one axis holding integer wave number k (k taken mod n).
  int fft_index(int k) const noexcept { return ((k % n_) + n_) % n_; }

  std::array<int, 3> axis_indices(std::size_t flat) const noexcept;
  std::size_t flat_index(const std::array<int, 3>& idx) const noexcept;
  std::array<double, 3> wave_vector(std::size_t flat) const noexcept;
  std::array<double, 3> position(std::size_t flat) const noexcept;

  /// |xi|^2 at every lattice mode, shared between copies of the grid.
  std::span<const double> wave_norm2() const noexcept { return *norm2_; }
  /// xi component along `axis` at every lattice mode.
  std::span<const double> wave_component(int axis) const noexcept { return (*components_)[axis]; }

  bool operator==(const Grid& other) const noexcept {
    return dim_ == other.dim_ && n_ == other.n_ && box_length_ == other.box_length_;
  }

 private:
  Grid(int dim, int n, double box_length);

  int dim_;
  int n_;
  double box_length_;
  std::size_t size_;
  std::shared_ptr<const std::vector<double>> norm2_;
  std::shared_ptr<const std::array<std::vector<double>, 3>> components_;
};

bool is_power_of_two(long long v) noexcept;

}  // namespace nlslab
