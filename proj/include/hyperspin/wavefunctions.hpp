#pragma once

// Bound-state radial wavefunctions
//   Psi(r) = |y|^C (1 - y)^A 2F1(-n, beta; gamma; y),  y = (1 - cosh r) / 2,
// and the first-order field set of the relativistic Phi2 mode.
//
// With |y| = sinh^2(r/2) and 1 - y = cosh^2(r/2), the series is evaluated in
// Pfaff form (1 - y)^n 2F1(-n, gamma - beta; gamma; z), z = tanh^2(r/2) in
// [0, 1), and the power prefactor in the log domain. For z near 1 the
// alternating sum in z loses digits, so it is re-expanded in 1 - z = sech^2(r/2).

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hyperspin/jet.hpp"
#include "hyperspin/radial_function.hpp"
#include "hyperspin/spectra.hpp"
#include "hyperspin/types.hpp"

namespace hyperspin {

/// sum_k (-n)_k (beta)_k / ((gamma)_k k!) x^k, held and summed in extended
/// precision: the terms alternate and cancel for large n and |beta|.
struct HypergeoSeries {
  std::vector<long double> coefficients;
  int degree = 0;

  double operator()(double x) const;
  long double operator()(long double x) const;
  Jet operator()(const Jet& x) const;
  /// Taylor expansion about x0 composed with dx (dx has zero value).
  Jet compose(long double x0, const Jet& dx) const;
};

HypergeoSeries hypergeo_series(int n, double beta, double gamma);

/// 2F1(-n, beta; gamma; y) for y <= 0. Uses the Pfaff transform for y < -1.
/// Throws std::invalid_argument when gamma is 0, -1, -2, ...
double terminating_2F1(int n, double beta, double gamma, double y);

struct BoundWavefunction {
  Component channel = Component::Psi2;
  ExponentVariant variant = ExponentVariant::V1;
  int m = 0;
  int n = 0;
  FieldConfig cfg;
  ExponentPair exponents;   ///< of the canonical (B > 0) frame
  HypergeoSeries series;    ///< in y
  HypergeoSeries pfaff;     ///< in z = tanh^2(r/2)
  /// pfaff re-expanded about z = 1: pfaff(z) = reflected_scale * reflected(1 - z).
  /// Empty when the expansion does not exist.
  HypergeoSeries reflected;
  double reflected_scale = 1.0;
  double level = 0.0;       ///< eps*M
  double norm = 0.0;        ///< integral of the unnormalized profile squared, weight sinh r
  double log_amplitude = 0.0;

  /// Normalized Psi(r), r >= 0.
  double operator()(double r) const;
  /// Normalized Psi as a jet, r > 0.
  Jet operator()(const Jet& r) const;
  RadialFunction function() const;
  /// pfaff(tanh^2(r/2)), summed in whichever of z, 1 - z is smaller.
  double polynomial(double r) const;
  Jet polynomial(const Jet& r) const;
  /// Decay exponent of Psi^2 sinh r at large r: 2(A + C + n) + 1.
  double tail_exponent() const;
};

struct RadialOptions {
  double r_max = 30.0;
};

/// Throws std::invalid_argument if (channel, m, n) is not bound.
BoundWavefunction radial_wavefunction(Component channel, int m, int n, const FieldConfig& cfg,
                                      const RadialOptions& opt = {});

struct NormResult {
  double norm = 0.0;           ///< integral of psi^2 sinh r on (0, infinity)
  double tail_estimate = 0.0;  ///< bound on the part beyond r_max (already included in norm)
  double quadrature_error = 0.0;
  bool divergent = false;
};

/// Integral of psi^2 sinh r over (0, r_max] plus an exponential tail bound.
/// The decay rate is estimated from psi near r_max unless given.
NormResult normalize(const RadialFunction& psi, double r_max,
                     std::optional<double> decay_rate = std::nullopt);

/// Integral of a b sinh r over (0, r_max].
double overlap(const RadialFunction& a, const RadialFunction& b, double r_max);

/// Interior zeros of Psi on (0, r_max].
int node_count(const BoundWavefunction& psi, double r_max = 30.0, int samples = 20000);

/// max |L Psi + 2 eps M Psi| / max |Psi| with L the channel's explicit
/// second-order operator, on interior points. `level` overrides eps*M.
double ode_residual(const BoundWavefunction& psi, std::optional<double> level = std::nullopt);

/// A complex multiple of a real radial profile; no profile means zero.
struct ModeComponent {
  std::complex<double> factor{0.0, 0.0};
  std::optional<RadialFunction> profile;

  bool is_zero() const { return !profile || factor == 0.0; }
  std::complex<double> operator()(double r) const;
};

/// Radial amplitudes of the ten field components.
enum FieldIndex { kPhi0, kPhi1, kPhi2, kPhi3, kE1, kE2, kE3, kH1, kH2, kH3, kFieldCount };

struct RadialFields {
  std::array<ModeComponent, kFieldCount> c;
};

struct Phi2ModeFields {
  BoundWavefunction Phi2;
  double eps = 0.0;
  RadialFields fields;
};

/// H1 = -(i/M) a Phi2, H3 = (i/M) b Phi2, E2 = -(i eps/M) Phi2, others zero.
/// Requires eps^2 - M^2 = 2 * psi2.level.
Phi2ModeFields phi2_mode_fields(const BoundWavefunction& psi2, double eps);

/// Maximum residual of each of the ten first-order radial equations over the
/// sample points, relative to the largest field magnitude seen.
/// Order: four constraint-type equations, then six defining equations.
std::array<double, 10> first_order_residuals(const RadialFields& f, int m, const FieldConfig& cfg,
                                             double eps, std::span<const double> radii);

}  // namespace hyperspin
