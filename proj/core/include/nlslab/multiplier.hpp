#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// P_{<=N}: symbol phi(|xi|/N).
struct CutoffLow {
  double N;
};
/// P_{>N}: symbol 1 - phi(|xi|/N).
struct CutoffHigh {
  double N;
};
/// Littlewood-Paley block P_N: phi(|xi|/2N) - phi(|xi|/N).
struct LPBlock {
  double N;
};
/// I-operator with symbol m_N(|xi|) for regularity s in (1/2, 1).
struct IOperator {
  double N;
  double s;
};
/// |grad|^order; the zero mode maps to zero for order > 0.
struct FracDeriv {
  double order;
};
/// <grad>^order = (1 + |xi|^2)^(order/2).
struct BesselDeriv {
  double order;
};
/// Partial derivative along one axis, symbol i*xi_axis.
struct Gradient {
  int axis;
};
/// Free Schrodinger propagator e^{it Laplacian}, symbol exp(-i t |xi|^2).
struct FreePropagator {
  double t;
};

using MultiplierSpec =
    std::variant<CutoffLow, CutoffHigh, LPBlock, IOperator, FracDeriv, BesselDeriv, Gradient, FreePropagator>;

/// Exact transition formulas, echoed into run manifests.
inline constexpr const char* kSmoothStepDefinition =
    "smooth_step(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}) on (0,1); 0 for x <= 0; 1 for x >= 1";
inline constexpr const char* kCutoffDefinition = "phi(r) = 1 - smooth_step(r - 1)";
inline constexpr const char* kSymbolMDefinition =
    "m_N(r) = 1 for r <= N; (N/r)^(1-s) for r >= 2N; exp(-smooth_step((r-N)/N) (1-s) ln 2) for N < r < 2N";

/// C-infinity monotone step on [0,1]: 0 at x <= 0, 1 at x >= 1, built from
/// the e^{-1/x} bump; satisfies smooth_step(x) + smooth_step(1-x) = 1.
double smooth_step(double x) noexcept;

/// Radial cutoff: 1 on [0,1], 0 on [2,inf), 1 - smooth_step(r - 1) between.
double cutoff_phi(double r) noexcept;

/// I-operator symbol. 1 for xi <= N, (N/xi)^(1-s) for xi >= 2N, and
/// log-linear interpolation driven by smooth_step in between.
double symbol_m(double xi_norm, double N, double s) noexcept;

/// Symbol value at a lattice mode.
cplx symbol(const MultiplierSpec& m, const std::array<double, 3>& xi, double xi_norm);

/// Human-readable description used in manifests.
std::string describe(const MultiplierSpec& m);

/// Throws PreconditionError for invalid parameters (N <= 0, s outside (1/2,1), ...).
void validate(const MultiplierSpec& m, int dim);

/// Pointwise multiplication in frequency space. Returns in the caller's repr.
SpectralField apply_multiplier(SpectralField f, const MultiplierSpec& m);
/// Applies the product of several symbols with one transform pair.
SpectralField apply_multipliers(SpectralField f, std::span<const MultiplierSpec> ms);
SpectralField apply_multipliers(SpectralField f, std::initializer_list<MultiplierSpec> ms);

/// (P_{<=N} f, P_{>N} f) where the high part is formed as f - P_{<=N} f.
std::pair<SpectralField, SpectralField> split_low_high(SpectralField f, double N);

SpectralField lp_block(SpectralField f, double N);

/// |grad|^order f.
SpectralField frac_derivative(SpectralField f, double order);
/// <grad>^order f.
SpectralField bessel_derivative(SpectralField f, double order);
/// One field per axis, i*xi_axis * f_hat.
std::vector<SpectralField> gradient(const SpectralField& f);

/// Dyadic frequencies N0, 2 N0, ... up to the first one >= grid.max_wavenumber().
std::vector<double> dyadic_range(const Grid& grid, double N0);

}  // namespace nlslab
