#include "hyperspin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperspin {

namespace {

using cd = std::complex<double>;

int sign_A(ExponentVariant v) {
  return (v == ExponentVariant::V2 || v == ExponentVariant::V3) ? +1 : -1;
}
int sign_C(ExponentVariant v) {
  return (v == ExponentVariant::V3 || v == ExponentVariant::V4) ? +1 : -1;
}

// -(A + C) - 1/2 for the bound variant in the canonical frame; level n is
// bound iff n < this.
double level_limit(Component channel, int m, double B) {
  const FieldConfig c{B, 1.0};
  const ExponentPair e = exponent_pair(channel, bound_variant(channel, m), m, c);
  return -(e.A + e.C) - 0.5;
}

}  // namespace

ExponentPair exponent_pair(Component channel, ExponentVariant variant, int m,
                           const FieldConfig& cfg) {
  const int d = channel_offset(channel);
  return {sign_A(variant) * (2.0 * cfg.B - m + d) / 2.0, sign_C(variant) * (m + d) / 2.0};
}

CanonicalFrame canonical_frame(Component channel, int m, const FieldConfig& cfg) {
  if (cfg.B < 0.0) return {mirror(channel), -m, FieldConfig{-cfg.B, cfg.M}, true};
  return {channel, m, cfg, false};
}

ExponentVariant bound_variant(Component channel, int m) {
  return m + channel_offset(channel) <= 0 ? ExponentVariant::V1 : ExponentVariant::V4;
}

double continuum_threshold(Component channel, const FieldConfig& cfg) {
  return cfg.B * cfg.B + threshold_shift(channel) * cfg.B + 0.25;
}

HypergeometricParams hypergeo_params(Component channel, ExponentVariant variant, int m,
                                     const FieldConfig& cfg, double X) {
  const ExponentPair e = exponent_pair(channel, variant, m, cfg);
  HypergeometricParams p;
  p.sqrt_arg = continuum_threshold(channel, cfg) - X;
  p.gamma = 2.0 * e.C + 1.0;
  const double base = e.A + e.C + 0.5;
  if (p.sqrt_arg < 0.0) {
    p.imaginary = true;
    p.alpha = p.beta = base;
    return p;
  }
  const double root = std::sqrt(p.sqrt_arg);
  p.alpha = base + root;
  p.beta = base - root;
  return p;
}

int bound_state_count(Component channel, int m, const FieldConfig& cfg) {
  if (cfg.B == 0.0) return 0;
  const CanonicalFrame f = canonical_frame(channel, m, cfg);
  const double limit = level_limit(f.channel, f.m, f.cfg.B);
  return limit > 0.0 ? static_cast<int>(std::ceil(limit)) : 0;
}

std::optional<double> nonrel_energy(Component channel, int m, int n, const FieldConfig& cfg) {
  if (n < 0 || n >= bound_state_count(channel, m, cfg)) return std::nullopt;
  const CanonicalFrame f = canonical_frame(channel, m, cfg);
  const double B = f.cfg.B;
  const bool v1 = bound_variant(f.channel, f.m) == ExponentVariant::V1;
  const double k = f.m + n;
  switch (f.channel) {
    case Component::Psi1:
      return v1 ? B - 1.0 + n * (B - 1.5 - n / 2.0) : k * (B - 0.5 - k / 2.0);
    case Component::Psi2:
      return v1 ? B / 2.0 + n * (B - 0.5 - n / 2.0) : B / 2.0 + k * (B - 0.5 - k / 2.0);
    case Component::Psi3:
      return v1 ? n * (B + 0.5 - n / 2.0) : B + k * (B - 0.5 - k / 2.0);
  }
  return std::nullopt;
}

UnifiedCheck unified_condition(Component channel, int m, int n, const FieldConfig& cfg) {
  const auto level = nonrel_energy(channel, m, n, cfg);
  if (!level) throw std::invalid_argument("unified_condition: (m, n) is not a bound level");
  const CanonicalFrame f = canonical_frame(channel, m, cfg);
  const ExponentPair e = exponent_pair(f.channel, bound_variant(f.channel, f.m), f.m, f.cfg);
  const int d = channel_offset(f.channel);
  UnifiedCheck u;
  u.consistent = -(e.A + e.C) - n - 0.5;
  u.printed = -n - 0.5 - (std::fabs(2.0 * f.cfg.B - f.m + d) + std::fabs(f.m + d)) / 2.0;
  u.per_case = std::sqrt(std::max(0.0, continuum_threshold(f.channel, f.cfg) - 2.0 * *level));
  const double tol = 1e-12 * (1.0 + std::fabs(u.per_case));
  u.consistent_matches = std::fabs(u.consistent - u.per_case) <= tol;
  u.printed_matches = std::fabs(u.printed - u.per_case) <= tol;
  return u;
}

MInterval allowed_m_interval(const FieldConfig& cfg) {
  MInterval iv;
  if (cfg.B == 0.0) return iv;
  iv.empty = false;
  if (cfg.B > 0.0)
    iv.hi = static_cast<int>(std::ceil(cfg.B)) - 1;
  else
    iv.lo = static_cast<int>(std::floor(cfg.B)) + 1;
  return iv;
}

std::vector<SpectrumEntry> nonrel_levels(Component channel, int m, const FieldConfig& cfg) {
  std::vector<SpectrumEntry> out;
  const int count = bound_state_count(channel, m, cfg);
  if (count == 0) return out;
  const CanonicalFrame f = canonical_frame(channel, m, cfg);
  const ExponentVariant v = bound_variant(f.channel, f.m);
  for (int n = 0; n < count; ++n)
    out.push_back({channel, v, m, n, *nonrel_energy(channel, m, n, cfg), LevelKind::nonrel});
  return out;
}

DecouplingMatrices decoupling_matrices(double eps, const FieldConfig& cfg, double kappa) {
  cfg.validate();
  if (eps == 0.0) throw std::invalid_argument("decoupling_matrices: eps = 0 makes S singular");
  const double M = cfg.M;
  const double kb = kappa * cfg.B;
  const double gamma = eps * eps / (M * M);
  const cd i(0.0, 1.0);
  DecouplingMatrices d;
  d.A_mat << 0.0, i * kb, -i * kb * gamma, 0.0;
  d.S << eps, i * M, eps, -i * M;
  const cd det = -2.0 * i * eps * M;
  d.S_inv << -i * M / det, -i * M / det, -eps / det, eps / det;
  d.lambda1 = kb * eps / M;
  d.lambda2 = -d.lambda1;
  return d;
}

int branch_sign(LevelKind branch) {
  switch (branch) {
    case LevelKind::rel_phi2: return 0;
    case LevelKind::rel_gprime: return +1;
    case LevelKind::rel_phi0prime: return -1;
    case LevelKind::nonrel: break;
  }
  throw std::invalid_argument("branch_sign: not a relativistic branch");
}

std::optional<double> relativistic_from_x(LevelKind branch, double X, const FieldConfig& cfg,
                                          double kappa) {
  cfg.validate();
  const double p = branch_sign(branch) * kappa * cfg.B / cfg.M;
  const double q = cfg.M * cfg.M + X;
  if (!(q > 0.0)) return std::nullopt;
  return 0.5 * (p + std::sqrt(p * p + 4.0 * q));
}

std::optional<double> relativistic_energy(LevelKind branch, int m, int n, const FieldConfig& cfg,
                                          double kappa) {
  const auto level = nonrel_energy(Component::Psi2, m, n, cfg);
  if (!level) return std::nullopt;
  return relativistic_from_x(branch, 2.0 * *level, cfg, kappa);
}

double relativistic_threshold(LevelKind branch, const FieldConfig& cfg, double kappa) {
  return *relativistic_from_x(branch, continuum_threshold(Component::Psi2, cfg), cfg, kappa);
}

}  // namespace hyperspin
