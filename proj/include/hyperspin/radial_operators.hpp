#pragma once

// First-order ladder operators of the radial problem and the second-order
// channel operators built from them.
//
// With nu(r) = m + B (cosh r - 1), s = sinh r, c = cosh r:
//
//   a_-  = ( d/dr + (nu - c)/s) / sqrt2      b_-  = (-d/dr + (nu - c)/s) / sqrt2
//   a_+  = ( d/dr + (nu + c)/s) / sqrt2      b_+  = (-d/dr + (nu + c)/s) / sqrt2
//   a    = ( d/dr +  nu     /s) / sqrt2      b    = (-d/dr +  nu     /s) / sqrt2
//
// With this normalization -b_- a + a_+ b is multiplication by B (not 2B).

#include <functional>
#include <span>
#include <vector>

#include "hyperspin/jet.hpp"
#include "hyperspin/radial_function.hpp"
#include "hyperspin/types.hpp"

namespace hyperspin {

using RadialOperator = std::function<RadialFunction(const RadialFunction&)>;

/// m + B (cosh r - 1), evaluated without cancellation near r = 0.
double nu(double r, int m, const FieldConfig& cfg);
Jet nu(const Jet& r, int m, const FieldConfig& cfg);

/// The zeroth-order weight w(r) of a ladder operator.
Jet ladder_weight(LadderKind kind, const Jet& r, int m, const FieldConfig& cfg);

RadialFunction apply_ladder(LadderKind kind, const RadialFunction& f, int m,
                            const FieldConfig& cfg);

/// f'' + coth r f' - (nu / sinh r)^2 f
RadialFunction laplacian2(const RadialFunction& f, int m, const FieldConfig& cfg);

/// Composition of the ladder operators for one channel:
///   Psi1: -2 a b_-    Psi2: -(b_- a + a_+ b)    Psi3: -2 b a_+
RadialOperator compose_pauli_operator(Component channel, int m, const FieldConfig& cfg);

/// The same channel operators written out as explicit second-order
/// differential expressions with constant field term (+-B for Psi1/Psi3).
RadialOperator explicit_pauli_operator(Component channel, int m, const FieldConfig& cfg);

/// Potential V such that the channel equation reads
///   Psi'' + coth r Psi' - V Psi + X Psi = 0,  X = 2 eps M.
/// Psi1: B - 1 + ((nu - c)/s)^2,  Psi2: (nu/s)^2,  Psi3: -B - 1 + ((nu + c)/s)^2.
double channel_potential(Component channel, int m, const FieldConfig& cfg, double r);

/// V plus the curvature term of the substitution u = sqrt(sinh r) Psi:
///   V_eff = V + 1/4 - 1/(4 sinh^2 r), so that -u'' + V_eff u = X u.
double effective_potential(Component channel, int m, const FieldConfig& cfg, double r);

struct CommutatorOptions {
  double r_lo = 0.2;
  double r_hi = 5.0;
  int samples = 200;
  double tolerance = 1e-10;  ///< allowed spread of the ratio, relative to max(1, |value|)
};

struct CommutatorResult {
  double value = 0.0;   ///< kappa * B
  double spread = 0.0;  ///< max - min of the ratio over probes and sample points
};

/// (-b_- a + a_+ b) f. Derivatives cancel, so this is f times a function of r.
RadialFunction commutator_action(const RadialFunction& f, int m, const FieldConfig& cfg);

/// Measures (-b_- a + a_+ b) f / f over the probes and checks it is one
/// constant. Throws std::runtime_error when the spread exceeds tolerance.
CommutatorResult commutator_constant(int m, const FieldConfig& cfg,
                                     std::span<const RadialFunction> probes,
                                     const CommutatorOptions& opt = {});

/// The same ratio at a single radius, from a unit probe.
double commutator_profile(double r, int m, const FieldConfig& cfg);

}  // namespace hyperspin
