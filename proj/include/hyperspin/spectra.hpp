#pragma once

// Closed-form bound-state spectra.
//
// Each channel's radial equation becomes hypergeometric after
// Psi = |y|^C (1 - y)^A f(y), y = (1 - cosh r) / 2, with
//   A = +-(2B - m + d) / 2,  C = +-(m + d) / 2,  d = channel_offset(channel),
// and the series terminates (alpha = -n) on the bound levels. Negative B is
// reduced to positive B by the map (channel, m, B) -> (mirror, -m, -B).

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hyperspin/types.hpp"

namespace hyperspin {

struct ExponentPair {
  double A = 0.0;
  double C = 0.0;
};

struct HypergeometricParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double sqrt_arg = 0.0;  ///< B^2 + sB - X + 1/4
  bool imaginary = false; ///< sqrt_arg < 0: above threshold, alpha/beta hold the real part only
};

struct SpectrumEntry {
  Component channel = Component::Psi2;
  ExponentVariant variant = ExponentVariant::V1;
  int m = 0;
  int n = 0;
  double value = 0.0;  ///< eps*M for nonrel, eps otherwise
  LevelKind kind = LevelKind::nonrel;
};

struct DecouplingMatrices {
  Eigen::Matrix2cd A_mat;
  Eigen::Matrix2cd S;
  Eigen::Matrix2cd S_inv;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

ExponentPair exponent_pair(Component channel, ExponentVariant variant, int m,
                           const FieldConfig& cfg);

/// The channel, m and B after reducing to B >= 0.
struct CanonicalFrame {
  Component channel;
  int m;
  FieldConfig cfg;
  bool mirrored;
};
CanonicalFrame canonical_frame(Component channel, int m, const FieldConfig& cfg);

/// Bound-state variant in the canonical (B > 0) frame: V1 when m + d <= 0,
/// V4 otherwise, so that C >= 0 in every channel.
ExponentVariant bound_variant(Component channel, int m);

/// s in the continuum threshold B^2 + sB + 1/4: -1, 0, +1 for Psi1, Psi2, Psi3.
constexpr int threshold_shift(Component channel) { return channel_offset(channel); }

/// X (the 2 eps M slot) above which the channel spectrum is continuous.
double continuum_threshold(Component channel, const FieldConfig& cfg);

HypergeometricParams hypergeo_params(Component channel, ExponentVariant variant, int m,
                                     const FieldConfig& cfg, double X);

/// eps*M from the per-channel closed forms, or nullopt if (m, n) is not bound.
std::optional<double> nonrel_energy(Component channel, int m, int n, const FieldConfig& cfg);

/// sqrt(B^2 + sB - X + 1/4) on a bound level, from two routes.
struct UnifiedCheck {
  double consistent = 0.0;  ///< -(A + C) - n - 1/2 with the bound exponents
  double printed = 0.0;     ///< -n - 1/2 - (|2B - m + d| + |m + d|)/2
  double per_case = 0.0;    ///< square root implied by nonrel_energy
  bool consistent_matches = false;
  bool printed_matches = false;
};
UnifiedCheck unified_condition(Component channel, int m, int n, const FieldConfig& cfg);

/// Integers m admitting bound states: m < B for B > 0, m > B for B < 0.
struct MInterval {
  bool empty = true;
  std::optional<int> lo;  ///< inclusive; nullopt = unbounded below
  std::optional<int> hi;  ///< inclusive; nullopt = unbounded above
  bool contains(int m) const {
    return !empty && (!lo || m >= *lo) && (!hi || m <= *hi);
  }
};
MInterval allowed_m_interval(const FieldConfig& cfg);

/// Number of n >= 0 with -(A + C) - n - 1/2 > 0 for the bound variant.
int bound_state_count(Component channel, int m, const FieldConfig& cfg);

/// All bound levels of one (channel, m), ordered by n.
std::vector<SpectrumEntry> nonrel_levels(Component channel, int m, const FieldConfig& cfg);

DecouplingMatrices decoupling_matrices(double eps, const FieldConfig& cfg, double kappa);

/// sigma in eps^2 - sigma kappa (B/M) eps - (M^2 + X) = 0.
/// rel_phi2: 0, rel_gprime: +1, rel_phi0prime: -1.
int branch_sign(LevelKind branch);

/// Positive root of the branch's quadratic for a given X.
std::optional<double> relativistic_from_x(LevelKind branch, double X, const FieldConfig& cfg,
                                          double kappa);

/// eps of a relativistic level built on the Psi2 quantization of (m, n).
std::optional<double> relativistic_energy(LevelKind branch, int m, int n, const FieldConfig& cfg,
                                          double kappa);

/// Relativistic eps above which the branch spectrum is continuous.
double relativistic_threshold(LevelKind branch, const FieldConfig& cfg, double kappa);

}  // namespace hyperspin
