#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab::detail {

/// (cell_volume * sum mag^q)^{1/q}, or max for q = inf.
double lq_of_magnitudes(std::span<const double> mag, double cell_volume, double q);

/// Pointwise magnitude of a Physical field, or the Euclidean magnitude of a
/// vector of Physical fields.
std::vector<double> magnitudes(const SpectralField& phys);
std::vector<double> magnitudes(std::span<const SpectralField> phys_components);

/// Mixes a base seed with job coordinates (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace nlslab::detail
