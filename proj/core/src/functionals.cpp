#include "nlslab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "nlslab/error.hpp"
#include "nlslab/multiplier.hpp"

namespace nlslab {
namespace {

double weighted_frequency_sum(const SpectralField& freq, double (*weight)(double, double), double param) {
  const auto norm2 = freq.grid().wave_norm2();
  double sum = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) sum += weight(norm2[i], param) * std::norm(freq[i]);
  return freq.grid().cell_volume() * sum;
}

void require_q(double q) {
  if (!(q >= 1.0)) throw PreconditionError("spatial exponent q must be >= 1");
}

}  // namespace

double mass(const SpectralField& f) { return f.l2_norm_squared(); }

double kinetic_energy(const SpectralField& f) {
  const SpectralField freq = as_frequency(f);
  return 0.5 * weighted_frequency_sum(freq, [](double r2, double) { return r2; }, 0.0);
}

double potential_energy(const SpectralField& f) {
  const SpectralField phys = as_physical(f);
  double sum = 0.0;
  for (const auto& v : phys.values()) {
    const double a = std::norm(v);
    sum += a * a;
  }
  return 0.25 * f.grid().cell_volume() * sum;
}

double energy(const SpectralField& f) {
  const SpectralField freq = as_frequency(f);
  return kinetic_energy(freq) + potential_energy(freq);
}

double modified_energy(const SpectralField& f, double N, double s) {
  if (N >= f.grid().max_wavenumber()) return energy(f);
  return energy(apply_multiplier(as_frequency(f), IOperator{N, s}));
}

double modified_kinetic_energy(const SpectralField& f, double N, double s) {
  if (N >= f.grid().max_wavenumber()) return kinetic_energy(f);
  return kinetic_energy(apply_multiplier(as_frequency(f), IOperator{N, s}));
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  const SpectralField freq = as_frequency(f);
  if (homogeneous) {
    if (s == 0.0) return freq.l2_norm();
    return std::sqrt(weighted_frequency_sum(
        freq, [](double r2, double p) { return r2 == 0.0 ? 0.0 : std::pow(r2, p); }, s));
  }
  return std::sqrt(weighted_frequency_sum(freq, [](double r2, double p) { return std::pow(1.0 + r2, p); }, s));
}

double lq_norm(const SpectralField& f, double q) {
  require_q(q);
  const auto mag = detail::magnitudes(as_physical(f));
  return detail::lq_of_magnitudes(mag, f.grid().cell_volume(), q);
}

double lq_norm(std::span<const SpectralField> components, double q) {
  require_q(q);
  if (components.empty()) return 0.0;
  std::vector<SpectralField> phys;
  phys.reserve(components.size());
  for (const auto& c : components) phys.push_back(as_physical(c));
  return detail::lq_of_magnitudes(detail::magnitudes(phys), components.front().grid().cell_volume(), q);
}

namespace detail {

double lq_of_magnitudes(std::span<const double> mag, double cell_volume, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : mag) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  if (q == 2.0) {
    for (double v : mag) sum += v * v;
  } else if (q == 4.0) {
    for (double v : mag) sum += (v * v) * (v * v);
  } else {
    for (double v : mag) sum += std::pow(v, q);
  }
  return std::pow(cell_volume * sum, 1.0 / q);
}

std::vector<double> magnitudes(const SpectralField& phys) {
  std::vector<double> mag(phys.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(phys[i]);
  return mag;
}

std::vector<double> magnitudes(std::span<const SpectralField> phys_components) {
  if (phys_components.empty()) return {};
  std::vector<double> mag(phys_components.front().size(), 0.0);
  for (const auto& c : phys_components) {
    if (c.size() != mag.size()) throw PreconditionError("vector components differ in size");
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += std::norm(c[i]);
  }
  for (auto& v : mag) v = std::sqrt(v);
  return mag;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = base;
  for (std::uint64_t v : {a, b}) {
    z += 0x9E3779B97F4A7C15ull + v;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
  }
  return z;
}

}  // namespace detail
}  // namespace nlslab
