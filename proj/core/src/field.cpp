#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

SpectralField::SpectralField(Grid grid, Repr repr) : grid_(std::move(grid)), repr_(repr), values_(grid_.size()) {}

SpectralField::SpectralField(Grid grid, Repr repr, std::vector<cplx> values)
    : grid_(std::move(grid)), repr_(repr), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw PreconditionError("field value count does not match grid size");
}

SpectralField SpectralField::from_function(const Grid& grid,
                                           const std::function<cplx(const std::array<double, 3>&)>& f) {
  SpectralField out(grid, Repr::Physical);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(grid.position(i));
  return out;
}

double SpectralField::l2_norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return grid_.cell_volume() * sum;
}

double SpectralField::l2_norm() const noexcept { return std::sqrt(l2_norm_squared()); }

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw PreconditionError("fields live on different grids");
  if (repr_ != other.repr_) throw PreconditionError("fields have different representations");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx scale) noexcept {
  for (auto& v : values_) v *= scale;
  return *this;
}

SpectralField to_frequency(SpectralField f) {
  if (f.repr() != Repr::Physical) throw PreconditionError("to_frequency expects a Physical field");
  detail::fft_inplace(f.grid_, f.values_, true);
  f.repr_ = Repr::Frequency;
  return f;
}

SpectralField to_physical(SpectralField f) {
  if (f.repr() != Repr::Frequency) throw PreconditionError("to_physical expects a Frequency field");
  detail::fft_inplace(f.grid_, f.values_, false);
  f.repr_ = Repr::Physical;
  return f;
}

SpectralField as_frequency(SpectralField f) {
  return f.repr() == Repr::Frequency ? std::move(f) : to_frequency(std::move(f));
}

SpectralField as_physical(SpectralField f) {
  return f.repr() == Repr::Physical ? std::move(f) : to_physical(std::move(f));
}

SpectralField as_repr(SpectralField f, Repr repr) {
  return repr == Repr::Frequency ? as_frequency(std::move(f)) : as_physical(std::move(f));
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("fields live on different grids");
  const SpectralField fa = as_frequency(a);
  const SpectralField fb = as_frequency(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) sum += std::norm(fa[i] - fb[i]);
  return std::sqrt(a.grid().cell_volume() * sum);
}

}  // namespace nlslab
