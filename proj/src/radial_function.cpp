#include "hyperspin/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperspin {

RadialFunction RadialFunction::analytic(Rule rule) {
  if (!rule) throw std::invalid_argument("RadialFunction: empty rule");
  RadialFunction f;
  f.rule_ = std::move(rule);
  return f;
}

RadialFunction RadialFunction::analytic(Rule rule, Value value) {
  RadialFunction f = analytic(std::move(rule));
  f.value_ = std::move(value);
  return f;
}

RadialFunction RadialFunction::sampled(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() != values.size()) throw std::invalid_argument("RadialFunction: size mismatch");
  if (grid.empty()) throw std::invalid_argument("RadialFunction: empty grid");
  if (!(grid.front() > 0.0)) throw std::invalid_argument("RadialFunction: grid must lie in r > 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("RadialFunction: grid must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("RadialFunction: non-finite sample");
  RadialFunction f;
  f.grid_ = std::move(grid);
  f.values_ = std::move(values);
  return f;
}

double RadialFunction::spacing() const {
  if (grid_.size() < 2) throw std::logic_error("RadialFunction: spacing needs two nodes");
  const double h = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (std::fabs((grid_[i] - grid_[i - 1]) - h) > 1e-9 * h)
      throw std::invalid_argument("RadialFunction: derivatives need a uniform grid");
  return h;
}

double RadialFunction::operator()(double r) const {
  if (!(r > 0.0)) throw std::domain_error("RadialFunction: evaluation at r <= 0");
  if (value_) return value_(r);
  if (rule_) return rule_(Jet::variable(r)).value();

  const auto n = grid_.size();
  if (r < grid_.front() || r > grid_.back())
    throw std::domain_error("RadialFunction: r outside the sampled range");
  auto it = std::lower_bound(grid_.begin(), grid_.end(), r);
  const auto idx = static_cast<std::size_t>(it - grid_.begin());
  if (it != grid_.end() && *it == r) return values_[idx];
  if (n < 4) {
    const std::size_t hi = std::min(idx, n - 1), lo = hi - 1;
    const double t = (r - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return (1.0 - t) * values_[lo] + t * values_[hi];
  }
  // cubic Lagrange through the four surrounding nodes
  const std::size_t start = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(idx) - 2, 0,
                                                       static_cast<std::ptrdiff_t>(n) - 4);
  double sum = 0.0;
  for (std::size_t j = start; j < start + 4; ++j) {
    double l = 1.0;
    for (std::size_t k = start; k < start + 4; ++k)
      if (k != j) l *= (r - grid_[k]) / (grid_[j] - grid_[k]);
    sum += l * values_[j];
  }
  return sum;
}

Jet RadialFunction::jet(double r, int order) const {
  if (!rule_) throw std::logic_error("RadialFunction::jet: sampled function, use node_jet");
  if (!(r > 0.0)) throw std::domain_error("RadialFunction: evaluation at r <= 0");
  return rule_(Jet::variable(r, order));
}

Jet RadialFunction::node_jet(std::size_t i) const {
  if (rule_) throw std::logic_error("RadialFunction::node_jet: analytic function");
  return stencil_jet(i, spacing());
}

Jet RadialFunction::stencil_jet(std::size_t i, double h) const {
  if (i < 2 || i + 2 >= grid_.size())
    throw std::out_of_range("RadialFunction: node lacks a central-difference stencil");
  const double* f = values_.data();
  const double d1 = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  const double d2 =
      (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
  Jet j = Jet::constant(f[i], 2);
  j.coeff(1) = d1;
  j.coeff(2) = 0.5 * d2;
  return j;
}

RadialFunction RadialFunction::transform(JetMap op) const {
  if (rule_) {
    return analytic([inner = rule_, op = std::move(op)](const Jet& r) { return op(inner(r), r); });
  }
  if (grid_.size() < 5)
    throw std::invalid_argument("RadialFunction: at least five samples needed for derivatives");
  const double h = spacing();
  std::vector<double> g, v;
  g.reserve(grid_.size() - 4);
  v.reserve(grid_.size() - 4);
  for (std::size_t i = 2; i + 2 < grid_.size(); ++i) {
    const Jet out = op(stencil_jet(i, h), Jet::variable(grid_[i], 2));
    g.push_back(grid_[i]);
    v.push_back(out.value());
  }
  return sampled(std::move(g), std::move(v));
}

RadialFunction RadialFunction::combine(double alpha, const RadialFunction& f, double beta,
                                       const RadialFunction& g) {
  if (f.rule_ && g.rule_) {
    return analytic([alpha, beta, fr = f.rule_, gr = g.rule_](const Jet& r) {
      return alpha * fr(r) + beta * gr(r);
    });
  }
  if (f.rule_ || g.rule_)
    throw std::invalid_argument("RadialFunction::combine: mixed analytic and sampled operands");
  if (f.grid_ != g.grid_) throw std::invalid_argument("RadialFunction::combine: grids differ");
  std::vector<double> v(f.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * f.values_[i] + beta * g.values_[i];
  return sampled(f.grid_, std::move(v));
}

std::vector<RadialFunction> standard_probes() {
  return {
      RadialFunction::analytic([](const Jet& r) { return Jet::constant(1.0, r.order()); }),
      RadialFunction::analytic([](const Jet& r) { return sinh(r); }),
      RadialFunction::analytic([](const Jet& r) { return cosh(r); }),
      RadialFunction::analytic([](const Jet& r) { return exp(-(r * r)); }),
      RadialFunction::analytic([](const Jet& r) { return r * exp(-r); }),
  };
}

}  // namespace hyperspin
