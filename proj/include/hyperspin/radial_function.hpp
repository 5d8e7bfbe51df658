#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hyperspin/jet.hpp"

namespace hyperspin {

/// A real function of r on (0, r_max].
///
/// Either analytic (a rule mapping the jet of r to the jet of f, so every
/// derivative is exact) or sampled on a strictly increasing grid. Sampled
/// derivatives use fourth-order central differences and need a uniform grid;
/// they are available on nodes 2 .. n-3 only.
class RadialFunction {
 public:
  using Rule = std::function<Jet(const Jet& r)>;

  using Value = std::function<double(double r)>;

  static RadialFunction analytic(Rule rule);
  /// As above, with a plain evaluator used for values (must agree with rule).
  static RadialFunction analytic(Rule rule, Value value);
  static RadialFunction sampled(std::vector<double> grid, std::vector<double> values);

  bool is_sampled() const { return !rule_; }

  /// f(r). Sampled functions interpolate with a local cubic.
  double operator()(double r) const;

  /// Jet of f at r with `order` valid coefficients (analytic only).
  Jet jet(double r, int order = kJetCapacity) const;

  /// Jet (value, f', f''/2) at sampled node i, 2 <= i <= n-3.
  Jet node_jet(std::size_t i) const;

  const Rule& rule() const { return rule_; }
  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double spacing() const;

  /// Pointwise map F, r -> op(F, r) where F is the jet of f.
  /// Analytic input gives an analytic result; sampled input is evaluated on
  /// the nodes that support central differences.
  using JetMap = std::function<Jet(const Jet& f, const Jet& r)>;
  RadialFunction transform(JetMap op) const;

  /// alpha * f + beta * g. Sampled operands must share the grid.
  static RadialFunction combine(double alpha, const RadialFunction& f, double beta,
                                const RadialFunction& g);

 private:
  Jet stencil_jet(std::size_t i, double h) const;

  Rule rule_;
  Value value_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Probe set for operator identities: 1, sinh r, cosh r, exp(-r^2), r exp(-r).
std::vector<RadialFunction> standard_probes();

}  // namespace hyperspin
