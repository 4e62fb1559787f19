#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

bool is_power_of_two(long long v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

Grid Grid::make(int dim, int n, double box_length) {
  if (dim < 1 || dim > 3) throw PreconditionError("grid dim must be 1, 2 or 3, got " + std::to_string(dim));
  if (n < 8 || !is_power_of_two(n))
    throw PreconditionError("grid n must be a power of two >= 8, got " + std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw PreconditionError("grid box_length must be positive and finite");
  return Grid(dim, n, box_length);
}

Grid::Grid(int dim, int n, double box_length) : dim_(dim), n_(n), box_length_(box_length), size_(1) {
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n);

  auto norm2 = std::make_shared<std::vector<double>>(size_);
  auto comps = std::make_shared<std::array<std::vector<double>, 3>>();
  for (int d = 0; d < 3; ++d) (*comps)[d].assign(d < dim ? size_ : 0, 0.0);

  const double dk = this->dk();
  for (std::size_t i = 0; i < size_; ++i) {
    const auto idx = axis_indices(i);
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double xi = dk * wave_index(idx[d]);
      (*comps)[d][i] = xi;
      r2 += xi * xi;
    }
    (*norm2)[i] = r2;
  }
  norm2_ = std::move(norm2);
  components_ = std::move(comps);
}

double Grid::cell_volume() const noexcept { return std::pow(box_length_ / n_, dim_); }
double Grid::volume() const noexcept { return std::pow(box_length_, dim_); }
double Grid::dk() const noexcept { return 2.0 * std::numbers::pi / box_length_; }
double Grid::nyquist() const noexcept { return dk() * (n_ / 2); }
double Grid::max_wavenumber() const noexcept { return nyquist() * std::sqrt(static_cast<double>(dim_)); }

std::array<int, 3> Grid::axis_indices(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

std::size_t Grid::flat_index(const std::array<int, 3>& idx) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) flat = flat * n_ + static_cast<std::size_t>(idx[d]);
  return flat;
}

std::array<double, 3> Grid::wave_vector(std::size_t flat) const noexcept {
  std::array<double, 3> xi{0, 0, 0};
  for (int d = 0; d < dim_; ++d) xi[d] = (*components_)[d][flat];
  return xi;
}

std::array<double, 3> Grid::position(std::size_t flat) const noexcept {
  const auto idx = axis_indices(flat);
  std::array<double, 3> x{0, 0, 0};
  const double h = box_length_ / n_;
  for (int d = 0; d < dim_; ++d) x[d] = h * idx[d];
  return x;
}

}  // namespace nlslab
