#include "nlslab/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {

double smooth_step(double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double cutoff_phi(double r) noexcept { return 1.0 - smooth_step(r - 1.0); }

double symbol_m(double xi_norm, double N, double s) noexcept {
  if (xi_norm <= N) return 1.0;
  if (xi_norm >= 2.0 * N) return std::pow(N / xi_norm, 1.0 - s);
  return std::exp(-smooth_step((xi_norm - N) / N) * (1.0 - s) * std::numbers::ln2);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

cplx symbol(const MultiplierSpec& m, const std::array<double, 3>& xi, double xi_norm) {
  return std::visit(
      Overloaded{
          [&](const CutoffLow& c) -> cplx { return cutoff_phi(xi_norm / c.N); },
          [&](const CutoffHigh& c) -> cplx { return 1.0 - cutoff_phi(xi_norm / c.N); },
          [&](const LPBlock& c) -> cplx { return cutoff_phi(xi_norm / (2.0 * c.N)) - cutoff_phi(xi_norm / c.N); },
          [&](const IOperator& c) -> cplx { return symbol_m(xi_norm, c.N, c.s); },
          [&](const FracDeriv& c) -> cplx {
            if (c.order == 0.0) return 1.0;
            return xi_norm == 0.0 ? 0.0 : std::pow(xi_norm, c.order);
          },
          [&](const BesselDeriv& c) -> cplx { return std::pow(1.0 + xi_norm * xi_norm, 0.5 * c.order); },
          [&](const Gradient& c) -> cplx { return cplx(0.0, xi[c.axis]); },
          [&](const FreePropagator& c) -> cplx { return std::polar(1.0, -c.t * xi_norm * xi_norm); },
      },
      m);
}

std::string describe(const MultiplierSpec& m) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const CutoffLow& c) { os << "P_{<=" << c.N << "}"; },
                 [&](const CutoffHigh& c) { os << "P_{>" << c.N << "}"; },
                 [&](const LPBlock& c) { os << "P_" << c.N; },
                 [&](const IOperator& c) { os << "I(N=" << c.N << ", s=" << c.s << ")"; },
                 [&](const FracDeriv& c) { os << "|grad|^" << c.order; },
                 [&](const BesselDeriv& c) { os << "<grad>^" << c.order; },
                 [&](const Gradient& c) { os << "d/dx" << c.axis; },
                 [&](const FreePropagator& c) { os << "exp(i " << c.t << " Lap)"; },
             },
             m);
  return os.str();
}

void validate(const MultiplierSpec& m, int dim) {
  auto positive_N = [](double N) {
    if (!(N > 0.0)) throw PreconditionError("multiplier frequency N must be > 0");
  };
  std::visit(Overloaded{
                 [&](const CutoffLow& c) { positive_N(c.N); },
                 [&](const CutoffHigh& c) { positive_N(c.N); },
                 [&](const LPBlock& c) { positive_N(c.N); },
                 [&](const IOperator& c) {
                   positive_N(c.N);
                   if (!(c.s > 0.5 && c.s < 1.0)) throw PreconditionError("I-operator needs s in (1/2, 1)");
                 },
                 [&](const FracDeriv& c) {
                   if (!(c.order >= 0.0)) throw PreconditionError("fractional derivative order must be >= 0");
                 },
                 [&](const BesselDeriv& c) {
                   if (!std::isfinite(c.order)) throw PreconditionError("Bessel derivative order must be finite");
                 },
                 [&](const Gradient& c) {
                   if (c.axis < 0 || c.axis >= dim) throw PreconditionError("gradient axis outside grid dimension");
                 },
                 [&](const FreePropagator& c) {
                   if (!std::isfinite(c.t)) throw PreconditionError("propagator time must be finite");
                 },
             },
             m);
}

SpectralField apply_multipliers(SpectralField f, std::span<const MultiplierSpec> ms) {
  if (ms.empty()) return f;
  const Repr repr = f.repr();
  for (const auto& m : ms) validate(m, f.grid().dim());
  SpectralField g = as_frequency(std::move(f));
  const Grid& grid = g.grid();
  const auto norm2 = grid.wave_norm2();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xi = grid.wave_vector(i);
    const double r = std::sqrt(norm2[i]);
    cplx w = 1.0;
    for (const auto& m : ms) w *= symbol(m, xi, r);
    g[i] *= w;
  }
  return as_repr(std::move(g), repr);
}

SpectralField apply_multipliers(SpectralField f, std::initializer_list<MultiplierSpec> ms) {
  return apply_multipliers(std::move(f), std::span<const MultiplierSpec>(ms.begin(), ms.size()));
}

SpectralField apply_multiplier(SpectralField f, const MultiplierSpec& m) {
  return apply_multipliers(std::move(f), std::span<const MultiplierSpec>(&m, 1));
}

std::pair<SpectralField, SpectralField> split_low_high(SpectralField f, double N) {
  const Repr repr = f.repr();
  SpectralField freq = as_frequency(std::move(f));
  SpectralField low = apply_multiplier(freq, CutoffLow{N});
  freq -= low;
  return {as_repr(std::move(low), repr), as_repr(std::move(freq), repr)};
}

SpectralField lp_block(SpectralField f, double N) {
  const Repr repr = f.repr();
  SpectralField freq = as_frequency(std::move(f));
  SpectralField out = apply_multiplier(freq, CutoffLow{2.0 * N});
  out -= apply_multiplier(std::move(freq), CutoffLow{N});
  return as_repr(std::move(out), repr);
}

SpectralField frac_derivative(SpectralField f, double order) { return apply_multiplier(std::move(f), FracDeriv{order}); }

SpectralField bessel_derivative(SpectralField f, double order) {
  return apply_multiplier(std::move(f), BesselDeriv{order});
}

std::vector<SpectralField> gradient(const SpectralField& f) {
  const SpectralField freq = as_frequency(f);
  std::vector<SpectralField> out;
  out.reserve(f.grid().dim());
  for (int axis = 0; axis < f.grid().dim(); ++axis)
    out.push_back(as_repr(apply_multiplier(freq, Gradient{axis}), f.repr()));
  return out;
}

std::vector<double> dyadic_range(const Grid& grid, double N0) {
  if (!(N0 > 0.0)) throw PreconditionError("dyadic_range needs N0 > 0");
  std::vector<double> out;
  for (double N = N0;; N *= 2.0) {
    out.push_back(N);
    if (N >= grid.max_wavenumber()) break;
  }
  return out;
}

}  // namespace nlslab
