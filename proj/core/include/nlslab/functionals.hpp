#pragma once

#include "nlslab/field.hpp"

namespace nlslab {

/// M(u) = int |u|^2 dx.
double mass(const SpectralField& f);

/// E(u) = 1/2 int |grad u|^2 + 1/4 int |u|^4.
double energy(const SpectralField& f);
double kinetic_energy(const SpectralField& f);
double potential_energy(const SpectralField& f);

/// E(Iu) with I = I_N of regularity s.
double modified_energy(const SpectralField& f, double N, double s);
double modified_kinetic_energy(const SpectralField& f, double N, double s);

/// ||u||_{H^s} (weight (1+|xi|^2)^s) or ||u||_{\dot H^s} (weight |xi|^{2s}).
double sobolev_norm(const SpectralField& f, double s, bool homogeneous);

/// Spatial L^q norm, q in [1, inf]; q = inf gives the sup norm.
double lq_norm(const SpectralField& f, double q);

/// L^q norm of the pointwise Euclidean magnitude of a vector field.
double lq_norm(std::span<const SpectralField> components, double q);

}  // namespace nlslab
